#pragma once

#include <functional>
#include <string>

#include "limca/core/automaton.hpp"
#include "limca/core/kv.hpp"

namespace limca {

// Builds a procedural rule from its `proc:` name, the file's key/values and
// the directory that relative references resolve against. Returns false
// when the name is unknown.
using ProcResolver = std::function<bool(const std::string& name, const KeyValues& kv, const std::string& dir,
                                        CellularAutomaton& out)>;

// Resolves `power` (rule, j) and `pad` (rule, radius); anything else is
// handed to `extra`.
CellularAutomaton parse_rule(const KeyValues& kv, const std::string& dir, const ProcResolver& extra = {});
CellularAutomaton load_rule(const std::string& path, const ProcResolver& extra = {});

// Table rules only; procedural rules are written by their owners.
std::string format_table_rule(const CellularAutomaton& ca);

PeriodicConfiguration parse_config(const KeyValues& kv);
PeriodicConfiguration load_config(const std::string& path);
std::string format_config(const PeriodicConfiguration& x);

}  // namespace limca
