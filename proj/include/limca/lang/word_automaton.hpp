#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "limca/core/word.hpp"
#include "limca/lang/sft.hpp"

namespace limca {

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

// Finite automaton over an alphabet; possibly nondeterministic. Missing
// transitions reject.
class WordAutomaton {
public:
    WordAutomaton() = default;
    WordAutomaton(Alphabet a, int states);

    Alphabet alphabet() const { return alphabet_; }
    int states() const { return static_cast<int>(accepting_.size()); }
    int add_state(bool accepting);
    void add_edge(int from, Symbol s, int to);
    void set_initial(int state, bool on = true);
    void set_accepting(int state, bool on = true) { accepting_[static_cast<std::size_t>(state)] = on; }

    const std::vector<int>& targets(int state, Symbol s) const {
        return edges_[static_cast<std::size_t>(state)][s];
    }
    const std::vector<int>& initial() const { return initial_; }
    bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)]; }

    bool is_deterministic() const;
    bool accepts(const Word& w) const;

    // Subset construction keeping only nonempty subsets; throws Inconclusive
    // above the budget.
    WordAutomaton determinize(std::size_t budget = kDefaultStateBudget) const;
    // Requires a deterministic automaton. Drops unreachable and
    // non-coaccessible states, then merges equivalent ones.
    WordAutomaton minimize() const;

    // Deterministic only: the shortlex-first word that is rejected, or
    // nothing when the automaton accepts every word.
    std::optional<Word> first_rejected() const;
    // Accepted words of exactly this length, in lexicographic order.
    std::vector<Word> words_of_length(std::size_t n, std::size_t limit = 1u << 24) const;

private:
    Alphabet alphabet_;
    std::vector<std::vector<std::vector<int>>> edges_;
    std::vector<int> initial_;
    std::vector<bool> accepting_;
};

// Deterministic automaton recognizing the words with no forbidden factor.
WordAutomaton sft_automaton(const Sft& sft);

}  // namespace limca
