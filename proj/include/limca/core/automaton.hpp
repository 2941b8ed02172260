#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limca/core/word.hpp"

namespace limca {

// A local rule f : B^(2r+1) -> B. Implementations are immutable.
class LocalRule {
public:
    virtual ~LocalRule() = default;
    virtual Alphabet alphabet() const = 0;
    virtual int radius() const = 0;
    // `window` points at 2r+1 symbols.
    virtual Symbol eval(const Symbol* window) const = 0;
    // Table rules expose their table; procedural rules return nullptr.
    virtual const std::vector<Symbol>* table() const { return nullptr; }
    // Name and parameters written to a `kind: proc` rule file.
    virtual std::string proc_name() const { return {}; }
    virtual std::map<std::string, std::string> proc_params() const { return {}; }
    // Global step on a periodic configuration; `in` and `out` hold `period`
    // symbols. The default builds every cyclic window and calls eval.
    virtual void step_cyclic(const Symbol* in, std::size_t period, Symbol* out) const;
};

class CellularAutomaton {
public:
    CellularAutomaton() = default;
    explicit CellularAutomaton(std::shared_ptr<const LocalRule> rule);

    Alphabet alphabet() const { return rule_->alphabet(); }
    int radius() const { return rule_->radius(); }
    std::size_t window() const { return 2 * static_cast<std::size_t>(radius()) + 1; }
    Symbol eval(const Symbol* w) const { return rule_->eval(w); }
    Symbol eval(const Word& w) const;
    bool is_table() const { return rule_->table() != nullptr; }
    const std::vector<Symbol>& table() const;
    const LocalRule& rule() const { return *rule_; }
    std::shared_ptr<const LocalRule> rule_ptr() const { return rule_; }

private:
    std::shared_ptr<const LocalRule> rule_;
};

// Table neighbourhood order is lexicographic with the leftmost cell most
// significant, so for ECA n the window abc maps to bit (4a+2b+c) of n:
// rule 128 sends 111 (index 7) to 1 and every other window to 0.
CellularAutomaton table_rule(Alphabet a, int radius, std::vector<Symbol> table);
CellularAutomaton eca(int number);
CellularAutomaton identity_rule(Alphabet a);

struct PeriodicConfiguration {
    Alphabet alphabet;
    Word cells;
    std::size_t period() const { return cells.size(); }
    bool operator==(const PeriodicConfiguration&) const = default;
};

PeriodicConfiguration make_config(Alphabet a, Word cells);
PeriodicConfiguration uniform_config(Alphabet a, Symbol s);

struct OrbitSummary {
    std::size_t tail = 0;
    std::vector<PeriodicConfiguration> cycle;
};

Word apply_local(const CellularAutomaton& ca, const Word& w);
PeriodicConfiguration step(const CellularAutomaton& ca, const PeriodicConfiguration& x);
PeriodicConfiguration iterate(const CellularAutomaton& ca, PeriodicConfiguration x, std::size_t steps);

inline constexpr std::size_t kDefaultTableBudget = std::size_t{1} << 22;

// F^j; materialized as a table when |B|^(2jr+1) <= table_budget.
CellularAutomaton power(const CellularAutomaton& ca, int j, std::size_t table_budget = kDefaultTableBudget);
// Same global map, radius r2; table rules stay tables within budget.
CellularAutomaton pad_radius(const CellularAutomaton& ca, int r2, std::size_t table_budget = kDefaultTableBudget);
// Materializes any rule whose table fits in the budget.
CellularAutomaton to_table(const CellularAutomaton& ca, std::size_t table_budget = kDefaultTableBudget);

bool is_quiescent(const CellularAutomaton& ca, Symbol b);
// Exhaustive for table rules; procedural rules are spot-checked on
// `samples` random windows (seeded) and the result reflects only those.
bool is_spreading(const CellularAutomaton& ca, Symbol b, std::size_t samples = 4096, std::uint64_t seed = 1);
// Length of the shortest cycle of b -> f(b^(2r+1)); always <= |B|.
int uniform_period(const CellularAutomaton& ca);
// Throws Inconclusive when tail + cycle length exceeds budget.
OrbitSummary eventual_cycle(const CellularAutomaton& ca, const PeriodicConfiguration& x, std::size_t budget);

// Index of a window in table order.
std::size_t window_index(Alphabet a, const Symbol* w, std::size_t len);
// Inverse of window_index for windows of length len.
Word window_at(Alphabet a, std::size_t index, std::size_t len);

}  // namespace limca
