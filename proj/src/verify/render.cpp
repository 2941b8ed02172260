#include "limca/verify/render.hpp"

#include <sstream>

#include "limca/core/errors.hpp"

namespace limca {

std::string render_spacetime(const CellularAutomaton& ca, const PeriodicConfiguration& x, std::size_t steps,
                             const std::string& format) {
    if (!(x.alphabet == ca.alphabet())) throw DomainError("configuration alphabet does not match the rule");
    if (format != "txt" && format != "pbm") throw DomainError("unknown render format '" + format + "'");
    if (format == "pbm" && !(ca.alphabet() == kBinary)) throw DomainError("pbm needs a binary alphabet");
    std::ostringstream out;
    if (format == "pbm") out << "P1\n" << x.period() << ' ' << steps + 1 << '\n';
    PeriodicConfiguration cur = x;
    for (std::size_t t = 0; t <= steps; ++t) {
        if (format == "txt") {
            out << format_word(cur.cells) << '\n';
        } else {
            for (std::size_t i = 0; i < cur.period(); ++i) out << (i ? " " : "") << static_cast<int>(cur.cells[i]);
            out << '\n';
        }
        if (t < steps) cur = step(ca, cur);
    }
    return out.str();
}

std::vector<Word> parse_pbm(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    std::size_t w = 0, h = 0;
    // Comments run from '#' to the end of the line.
    std::string cleaned, line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        cleaned += (hash == std::string::npos ? line : line.substr(0, hash)) + '\n';
    }
    std::istringstream body(cleaned);
    if (!(body >> magic) || magic != "P1" || !(body >> w >> h)) throw DomainError("not a plain P1 bitmap");
    std::vector<Word> rows(h, Word(w));
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            char ch;
            do {
                if (!body.get(ch)) throw DomainError("truncated P1 bitmap");
            } while (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t');
            if (ch != '0' && ch != '1') throw DomainError("bad P1 pixel");
            rows[r][c] = static_cast<Symbol>(ch - '0');
        }
    return rows;
}

}  // namespace limca
