#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace limca {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

struct Alphabet {
    int size = 2;
    bool operator==(const Alphabet&) const = default;
};

inline constexpr Alphabet kBinary{2};

// Throws DomainError unless 1 <= a.size <= 256 and every symbol is < a.size.
void check_word(Alphabet a, const Word& w);

// Symbols are written as base-36 digits, so text IO covers alphabets up to 36.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

Word repeat(const Word& w, std::size_t times);
Word concat(const Word& a, const Word& b);
Word slice(const Word& w, std::size_t from, std::size_t to);
bool contains_factor(const Word& w, const Word& factor);
Word rotate_left(const Word& w, std::size_t by);

}  // namespace limca
