#include "limca/lang/ranked.hpp"

#include "limca/core/errors.hpp"

namespace limca {

RankedLanguage::RankedLanguage(Sft sft, std::size_t length) : sft_(std::move(sft)), length_(length) {
    if (length < 1) throw DomainError("language slice length must be >= 1");
    const auto& m = sft_.matcher();
    const std::size_t q = static_cast<std::size_t>(std::max(m.states(), 1));
    count_.assign(length_ + 1, std::vector<BigInt>(q, 0));
    if (m.states() == 0) return;
    for (std::size_t s = 0; s < q; ++s) count_[length_][s] = 1;
    for (std::size_t i = length_; i-- > 0;)
        for (std::size_t s = 0; s < q; ++s) {
            BigInt total = 0;
            for (int c = 0; c < sft_.alphabet().size; ++c) {
                int t = m.next(static_cast<int>(s), static_cast<Symbol>(c));
                if (t >= 0) total += count_[i + 1][static_cast<std::size_t>(t)];
            }
            count_[i][s] = std::move(total);
        }
}

BigInt RankedLanguage::rank(const Word& w) const {
    if (!contains(w)) throw DomainError("word not in language slice");
    const auto& m = sft_.matcher();
    BigInt r = 0;
    int s = 0;
    for (std::size_t i = 0; i < length_; ++i) {
        for (Symbol c = 0; c < w[i]; ++c) {
            int t = m.next(s, c);
            if (t >= 0) r += count_[i + 1][static_cast<std::size_t>(t)];
        }
        s = m.next(s, w[i]);
    }
    return r;
}

Word RankedLanguage::unrank(const BigInt& index) const {
    if (index < 0 || index >= count()) throw DomainError("rank out of range");
    const auto& m = sft_.matcher();
    BigInt i = index;
    Word w;
    w.reserve(length_);
    int s = 0;
    for (std::size_t pos = 0; pos < length_; ++pos) {
        for (int c = 0; c < sft_.alphabet().size; ++c) {
            int t = m.next(s, static_cast<Symbol>(c));
            if (t < 0) continue;
            const BigInt& n = count_[pos + 1][static_cast<std::size_t>(t)];
            if (i < n) {
                w.push_back(static_cast<Symbol>(c));
                s = t;
                break;
            }
            i -= n;
        }
    }
    return w;
}

std::vector<Word> RankedLanguage::enumerate(std::size_t limit) const {
    if (count() > limit) throw Inconclusive("language slice too large to enumerate");
    std::vector<Word> out;
    const std::size_t n = count().convert_to<std::size_t>();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(unrank(BigInt(i)));
    return out;
}

}  // namespace limca
