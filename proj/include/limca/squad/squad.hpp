#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "limca/core/automaton.hpp"

namespace limca {

struct SquadAutomaton {
    CellularAutomaton ca;
    Symbol gamma = 0, kappa = 0, quiet = 0, general = 0, wall = 0;
};

// The shipped radius-1 squad, read from the table compiled into the library.
SquadAutomaton build_squad();
// Same squad from a manifest naming the rule file and the special states.
SquadAutomaton load_squad(const std::string& manifest_path);

// wall . general . quiet^(n-1), period n+1.
PeriodicConfiguration seed_segment(const SquadAutomaton& s, int n);

struct SquadRun {
    int n = 0;
    // First step at which every cell is γ.
    std::size_t fire_time = 0;
    // γ or κ seen in some configuration strictly before fire_time.
    bool early_gamma = false, early_kappa = false;
};

// Runs the seed orbit of length n. Throws IntegrityError when it does not
// fire within `budget` steps.
SquadRun run_segment(const SquadAutomaton& s, int n, std::size_t budget);
// Memoized firing time of the shipped squad; budget 4n + 16 steps.
std::size_t firing_time(int n);

struct LimitGammaReport {
    std::size_t period = 0;
    std::size_t configurations = 0;  // configurations examined
    bool sampled = false;
    std::size_t recurrent = 0;        // recurrent configurations found
    std::size_t recurrent_gamma = 0;  // of those, containing γ
    std::vector<Word> violations;     // recurrent, containing γ, not in {κ,γ}^P
};

// Every recurrent period-P configuration that contains γ must lie in
// {κ,γ}^P. Exhaustive when |B_S|^P <= budget, else `samples` random seeds
// driven to their cycles.
LimitGammaReport check_limit_gamma(const SquadAutomaton& s, std::size_t period, std::size_t budget = std::size_t{1} << 22,
                                   std::size_t samples = 100000, std::uint64_t seed = 1);

// Negative control: γ keeps itself whatever its neighbours, and other cells
// read a neighbouring γ as a quiet soldier.
SquadAutomaton squad_without_gamma_isolation(const SquadAutomaton& s);

}  // namespace limca
