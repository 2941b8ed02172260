#include "limca/core/rule_io.hpp"

#include "limca/core/errors.hpp"

namespace limca {

CellularAutomaton parse_rule(const KeyValues& kv, const std::string& dir, const ProcResolver& extra) {
    const std::string kind = kv.get("kind");
    if (kind == "table") {
        Alphabet a{static_cast<int>(kv.get_int("alphabet"))};
        int r = static_cast<int>(kv.get_int("radius"));
        return table_rule(a, r, parse_word(kv.get("table")));
    }
    if (kind != "proc") throw DomainError("unknown rule kind '" + kind + "'");
    const std::string name = kv.get("proc");
    CellularAutomaton out;
    if (name == "power") {
        out = power(load_rule(join_path(dir, kv.get("rule")), extra), static_cast<int>(kv.get_int("j")));
    } else if (name == "pad") {
        out = pad_radius(load_rule(join_path(dir, kv.get("rule")), extra), static_cast<int>(kv.get_int("radius")));
    } else if (!extra || !extra(name, kv, dir, out)) {
        throw DomainError("unknown procedural rule '" + name + "'");
    }
    if (kv.has("alphabet") && kv.get_int("alphabet") != out.alphabet().size)
        throw DomainError("declared alphabet does not match procedural rule");
    if (kv.has("radius") && name != "pad" && kv.get_int("radius") != out.radius())
        throw DomainError("declared radius does not match procedural rule");
    return out;
}

CellularAutomaton load_rule(const std::string& path, const ProcResolver& extra) {
    return parse_rule(KeyValues::load(path), dir_of(path), extra);
}

std::string format_table_rule(const CellularAutomaton& ca) {
    return "alphabet: " + std::to_string(ca.alphabet().size) + "\nradius: " + std::to_string(ca.radius()) +
           "\nkind: table\ntable: " + format_word(ca.table()) + "\n";
}

PeriodicConfiguration parse_config(const KeyValues& kv) {
    Alphabet a{static_cast<int>(kv.get_int("alphabet"))};
    Word cells = parse_word(kv.get("cells"));
    if (kv.has("period") && static_cast<std::size_t>(kv.get_int("period")) != cells.size())
        throw DomainError("period does not match cell count");
    return make_config(a, std::move(cells));
}

PeriodicConfiguration load_config(const std::string& path) { return parse_config(KeyValues::load(path)); }

std::string format_config(const PeriodicConfiguration& x) {
    return "alphabet: " + std::to_string(x.alphabet.size) + "\nperiod: " + std::to_string(x.period()) +
           "\ncells: " + format_word(x.cells) + "\n";
}

}  // namespace limca
