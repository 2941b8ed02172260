#pragma once

#include <optional>
#include <vector>

#include "limca/core/automaton.hpp"
#include "limca/lang/word_automaton.hpp"

namespace limca {

// Automaton for L(F(X)) where `a` recognizes L(X): the product of `a` with
// the de Bruijn presentation of the local rule, determinized and minimized.
WordAutomaton image_language(const WordAutomaton& a, const CellularAutomaton& ca,
                             std::size_t budget = kDefaultStateBudget);
// L(F^depth(B^Z)), one minimized image step at a time.
WordAutomaton iterated_image(const CellularAutomaton& ca, int depth, std::size_t budget = kDefaultStateBudget);

// Table rules only (Unsupported otherwise).
bool is_surjective(const CellularAutomaton& ca);
// Shortlex-first word without preimage; empty optional iff surjective.
std::optional<Word> shortest_orphan(const CellularAutomaton& ca);

// True iff every word of length n has exactly |B|^(2r) preimages of length
// n+2r, by enumerating all |B|^(n+2r) words.
bool balanced_at(const CellularAutomaton& ca, int n, std::size_t budget = std::size_t{1} << 26);
// Length at which imbalance must show for a non-surjective rule: any
// orphan is no longer than the number of subsets of |B|^(2r) contexts.
int balance_certificate_length(const CellularAutomaton& ca);
// Surjectivity decided through balance at the certificate length.
bool balance_oracle(const CellularAutomaton& ca, std::size_t budget = std::size_t{1} << 26);

// Some word of length |w| + 2dr maps onto w after d steps.
bool word_reachable_at_depth(const CellularAutomaton& ca, const Word& w, int d,
                             std::size_t budget = std::size_t{1} << 24);

// Configurations of period P lying on cycles of the period-P dynamics.
std::vector<Word> recurrent_periodic(const CellularAutomaton& ca, std::size_t period,
                                     std::size_t budget = std::size_t{1} << 24);

struct LimitApprox {
    std::size_t width = 0;
    int depth = 0;
    std::vector<Word> outer;  // alive at depth; contains L_width(Ω)
    std::vector<Word> inner;  // factors of recurrent periodic points; inside L_width(Ω)
};

LimitApprox limit_outer(const CellularAutomaton& ca, std::size_t width, int depth,
                        std::size_t budget = kDefaultStateBudget);
// Adds the inner slice from all periods 1..max_period.
LimitApprox limit_approx(const CellularAutomaton& ca, std::size_t width, int depth, std::size_t max_period);

}  // namespace limca
