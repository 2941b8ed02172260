#pragma once

#include <string>
#include <vector>

#include "limca/core/automaton.hpp"

namespace limca {

// steps+1 rows, row t = F^t(x). txt: one base-36 digit per cell per line.
// pbm: plain P1 bitmap, binary alphabets only.
std::string render_spacetime(const CellularAutomaton& ca, const PeriodicConfiguration& x, std::size_t steps,
                             const std::string& format);

// Rows of a plain P1 bitmap.
std::vector<Word> parse_pbm(const std::string& text);

}  // namespace limca
