#include "limca/core/word.hpp"

#include <algorithm>

#include "limca/core/errors.hpp"

namespace limca {

void check_word(Alphabet a, const Word& w) {
    if (a.size < 1 || a.size > 256) throw DomainError("alphabet size must be in [1,256]");
    for (Symbol s : w)
        if (s >= a.size) throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(a.size));
}

Word parse_word(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        if (c >= '0' && c <= '9') w.push_back(static_cast<Symbol>(c - '0'));
        else if (c >= 'a' && c <= 'z') w.push_back(static_cast<Symbol>(c - 'a' + 10));
        else if (c >= 'A' && c <= 'Z') w.push_back(static_cast<Symbol>(c - 'A' + 10));
        else throw DomainError(std::string("bad symbol character '") + c + "'");
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Symbol v : w) {
        if (v >= 36) throw DomainError("symbol too large for text form");
        s.push_back(static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)));
    }
    return s;
}

Word repeat(const Word& w, std::size_t times) {
    Word out;
    out.reserve(w.size() * times);
    for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
    if (from > to || to > w.size()) throw DomainError("slice out of range");
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

bool contains_factor(const Word& w, const Word& factor) {
    return std::search(w.begin(), w.end(), factor.begin(), factor.end()) != w.end();
}

Word rotate_left(const Word& w, std::size_t by) {
    if (w.empty()) return w;
    Word out(w);
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(by % w.size()), out.end());
    return out;
}

}  // namespace limca
