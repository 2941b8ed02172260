#pragma once

#include <string>
#include <vector>

#include "limca/core/kv.hpp"
#include "limca/core/word.hpp"

namespace limca {

// Deterministic matcher for a finite set of forbidden words (Aho-Corasick).
// State 0 is the start; next() returns -1 once a forbidden word has ended.
class ForbiddenMatcher {
public:
    ForbiddenMatcher() = default;
    ForbiddenMatcher(Alphabet a, const std::vector<Word>& forbidden);

    int states() const { return static_cast<int>(next_.size()); }
    int next(int state, Symbol s) const { return next_[static_cast<std::size_t>(state)][s]; }
    Alphabet alphabet() const { return alphabet_; }

private:
    Alphabet alphabet_;
    std::vector<std::vector<int>> next_;
};

class Sft {
public:
    Sft() = default;
    Sft(Alphabet a, std::vector<Word> forbidden);

    static Sft full(Alphabet a) { return Sft(a, {}); }

    Alphabet alphabet() const { return alphabet_; }
    const std::vector<Word>& forbidden() const { return forbidden_; }
    // Longest forbidden word (1 for the full shift).
    int order() const { return order_; }
    const ForbiddenMatcher& matcher() const { return matcher_; }
    // True iff w has no forbidden factor.
    bool contains(const Word& w) const;
    // Same test on the bi-infinite repetition of w.
    bool contains_periodic(const Word& w) const;

    static Sft parse(const KeyValues& kv);
    static Sft load(const std::string& path);
    std::string str() const;

private:
    Alphabet alphabet_;
    std::vector<Word> forbidden_;
    int order_ = 1;
    ForbiddenMatcher matcher_;
};

}  // namespace limca
