#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "limca/code/freezing.hpp"
#include "limca/core/automaton.hpp"
#include "limca/squad/squad.hpp"

namespace limca {

// A binary rule restricted to the subshift `domain`.
struct PartialCa {
    CellularAutomaton base;
    Sft domain;
};

enum class Case { sigma = 1, unfreeze = 2, simulate = 3, kill = 4 };

// Deliberate rule defects used as negative controls.
enum class DeltaMutation {
    none,
    kill_is_identity,      // case (4) copies the centre cell instead of writing 0
    ignore_theta,          // case (3) also fires when the centre N-state is θ
    unfreeze_phase_shift,  // case (2) writes z[i] instead of the centre cell's z symbol
    simulate_skip_squad,   // case (3) keeps the squad state instead of applying δ_S
};

std::string mutation_name(DeltaMutation m);
DeltaMutation parse_mutation(const std::string& name);

struct CaseTag {
    Case tag = Case::kill;
    // Cases (2)/(3): window offset i of the first codeword, so the centre
    // cell sits at position k-1-i of the central codeword.
    int offset = -1;
    std::vector<Word> z;         // decoded z-blocks, left to right
    Word v, w;                   // N-states and squad states
    Symbol output = 0;
    // Central codeword offsets with a full context; more than one falls to
    // case (4).
    int matches = 0;
};

class DeltaRule;

class DeltaAutomaton {
public:
    DeltaAutomaton() = default;

    const CellularAutomaton& ca() const { return ca_; }
    int radius() const { return ca_.radius(); }
    std::size_t k() const;
    int r_s() const;
    const PartialCa& g() const;
    const CellularAutomaton& n_ca() const;
    Symbol theta() const;
    const SquadAutomaton& squad() const;
    const FreezingCode& code() const;
    DeltaMutation mutation() const;

    // |y| = 2r+1.
    CaseTag classify(const Word& y) const;
    // Case tag of every cell of a periodic configuration.
    std::vector<Case> classify_cells(const PeriodicConfiguration& x) const;

    friend DeltaAutomaton build_delta(const PartialCa& g, const CellularAutomaton& n_ca, Symbol theta,
                                      const SquadAutomaton& squad, std::shared_ptr<const FreezingCode> code,
                                      DeltaMutation mutation);

private:
    std::shared_ptr<const DeltaRule> rule_;
    CellularAutomaton ca_;
};

// Radii of n_ca and the squad are padded to their maximum r_S; requires
// r_G < r_S k and C = A x B_S.
DeltaAutomaton build_delta(const PartialCa& g, const CellularAutomaton& n_ca, Symbol theta, const SquadAutomaton& squad,
                           std::shared_ptr<const FreezingCode> code, DeltaMutation mutation = DeltaMutation::none);

// Up to rotation, a (possibly empty or full) run of aligned codewords with
// every other cell 0.
bool is_lambda(const FreezingCode& code, const PeriodicConfiguration& x);
inline bool is_lambda(const DeltaAutomaton& d, const PeriodicConfiguration& x) { return is_lambda(d.code(), x); }

// Start positions of codewords in the cyclic configuration.
std::vector<std::size_t> codeword_positions(const FreezingCode& code, const Word& x);

// A random z-track word: from the pool (toy) or a random walk in L_k(Σ).
Word random_z(const FreezingCode& code, std::mt19937_64& rng);

// Random windows biased towards codeword contexts. Codewords are laid
// every k cells starting at a random phase, or at `anchor` mod k for half
// of the structured draws; a quarter of the draws are uniform bits.
Word sample_window(const DeltaAutomaton& d, std::size_t len, std::size_t anchor, std::mt19937_64& rng);

}  // namespace limca
