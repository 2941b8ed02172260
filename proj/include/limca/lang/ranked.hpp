#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "limca/lang/sft.hpp"

namespace limca {

using BigInt = boost::multiprecision::cpp_int;

// L_n(Σ) with lexicographic rank/unrank. count_[i][q] is the number of
// length-(n-i) continuations from matcher state q.
class RankedLanguage {
public:
    RankedLanguage() = default;
    RankedLanguage(Sft sft, std::size_t length);

    const Sft& sft() const { return sft_; }
    std::size_t length() const { return length_; }
    const BigInt& count() const { return count_[0][0]; }

    bool contains(const Word& w) const { return w.size() == length_ && sft_.contains(w); }
    // Throws DomainError when w is not in the language.
    BigInt rank(const Word& w) const;
    // Throws DomainError when i is outside [0, count).
    Word unrank(const BigInt& i) const;
    // All members in lexicographic order; throws Inconclusive above limit.
    std::vector<Word> enumerate(std::size_t limit = 1u << 22) const;

private:
    Sft sft_;
    std::size_t length_ = 0;
    std::vector<std::vector<BigInt>> count_;
};

}  // namespace limca
