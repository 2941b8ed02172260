#include "limca/core/automaton.hpp"

#include <random>
#include <unordered_map>

#include "limca/core/errors.hpp"

namespace limca {

void LocalRule::step_cyclic(const Symbol* in, std::size_t period, Symbol* out) const {
    const std::size_t r = static_cast<std::size_t>(radius());
    // Unroll the cycle once so each window is contiguous.
    Word ext(period + 2 * r);
    for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = in[(i + period * (r / period + 1) - r) % period];
    for (std::size_t i = 0; i < period; ++i) out[i] = eval(ext.data() + i);
}

namespace {

class TableRule final : public LocalRule {
public:
    TableRule(Alphabet a, int r, std::vector<Symbol> t) : a_(a), r_(r), t_(std::move(t)) {}
    Alphabet alphabet() const override { return a_; }
    int radius() const override { return r_; }
    Symbol eval(const Symbol* w) const override { return t_[window_index(a_, w, 2 * static_cast<std::size_t>(r_) + 1)]; }
    const std::vector<Symbol>* table() const override { return &t_; }

private:
    Alphabet a_;
    int r_;
    std::vector<Symbol> t_;
};

// F^j evaluated by shrinking the window j times.
class PowerRule final : public LocalRule {
public:
    PowerRule(CellularAutomaton base, int j) : base_(std::move(base)), j_(j) {}
    Alphabet alphabet() const override { return base_.alphabet(); }
    int radius() const override { return base_.radius() * j_; }
    Symbol eval(const Symbol* w) const override {
        const std::size_t r = static_cast<std::size_t>(base_.radius());
        Word buf(w, w + 2 * static_cast<std::size_t>(radius()) + 1);
        for (int s = 0; s < j_; ++s) {
            std::size_t n = buf.size() - 2 * r;
            for (std::size_t i = 0; i < n; ++i) buf[i] = base_.eval(buf.data() + i);
            buf.resize(n);
        }
        return buf[0];
    }
    std::string proc_name() const override { return "power"; }
    std::map<std::string, std::string> proc_params() const override { return {{"j", std::to_string(j_)}}; }
    void step_cyclic(const Symbol* in, std::size_t period, Symbol* out) const override {
        Word a(in, in + period), b(period);
        for (int s = 0; s < j_; ++s) {
            base_.rule().step_cyclic(a.data(), period, b.data());
            a.swap(b);
        }
        std::copy(a.begin(), a.end(), out);
    }
    const CellularAutomaton& base() const { return base_; }

private:
    CellularAutomaton base_;
    int j_;
};

class PaddedRule final : public LocalRule {
public:
    PaddedRule(CellularAutomaton base, int r2) : base_(std::move(base)), r2_(r2) {}
    Alphabet alphabet() const override { return base_.alphabet(); }
    int radius() const override { return r2_; }
    Symbol eval(const Symbol* w) const override { return base_.eval(w + (r2_ - base_.radius())); }
    std::string proc_name() const override { return "pad"; }
    std::map<std::string, std::string> proc_params() const override { return {{"radius", std::to_string(r2_)}}; }
    void step_cyclic(const Symbol* in, std::size_t period, Symbol* out) const override {
        base_.rule().step_cyclic(in, period, out);
    }

private:
    CellularAutomaton base_;
    int r2_;
};

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

}  // namespace

CellularAutomaton::CellularAutomaton(std::shared_ptr<const LocalRule> rule) : rule_(std::move(rule)) {
    if (!rule_) throw DomainError("null rule");
    if (rule_->radius() < 0) throw DomainError("negative radius");
}

Symbol CellularAutomaton::eval(const Word& w) const {
    if (w.size() != window()) throw DomainError("window length mismatch");
    return rule_->eval(w.data());
}

const std::vector<Symbol>& CellularAutomaton::table() const {
    const auto* t = rule_->table();
    if (!t) throw Unsupported("rule is procedural");
    return *t;
}

std::size_t window_index(Alphabet a, const Symbol* w, std::size_t len) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < len; ++i) idx = idx * static_cast<std::size_t>(a.size) + w[i];
    return idx;
}

Word window_at(Alphabet a, std::size_t index, std::size_t len) {
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = static_cast<Symbol>(index % static_cast<std::size_t>(a.size));
        index /= static_cast<std::size_t>(a.size);
    }
    return w;
}

CellularAutomaton table_rule(Alphabet a, int radius, std::vector<Symbol> table) {
    if (radius < 0) throw DomainError("negative radius");
    const std::size_t expected = checked_pow(static_cast<std::size_t>(a.size), 2 * static_cast<std::size_t>(radius) + 1, std::size_t{1} << 34);
    if (table.size() != expected)
        throw DomainError("table has " + std::to_string(table.size()) + " entries, expected " + std::to_string(expected));
    check_word(a, table);
    return CellularAutomaton(std::make_shared<TableRule>(a, radius, std::move(table)));
}

CellularAutomaton eca(int number) {
    if (number < 0 || number > 255) throw DomainError("ECA number must be in [0,255]");
    std::vector<Symbol> t(8);
    for (int i = 0; i < 8; ++i) t[i] = static_cast<Symbol>((number >> i) & 1);
    return table_rule(kBinary, 1, std::move(t));
}

CellularAutomaton identity_rule(Alphabet a) {
    std::vector<Symbol> t(static_cast<std::size_t>(a.size));
    for (int i = 0; i < a.size; ++i) t[static_cast<std::size_t>(i)] = static_cast<Symbol>(i);
    return table_rule(a, 0, std::move(t));
}

PeriodicConfiguration make_config(Alphabet a, Word cells) {
    if (cells.empty()) throw DomainError("period must be positive");
    check_word(a, cells);
    return {a, std::move(cells)};
}

PeriodicConfiguration uniform_config(Alphabet a, Symbol s) { return make_config(a, Word{s}); }

Word apply_local(const CellularAutomaton& ca, const Word& w) {
    const std::size_t len = ca.window();
    if (w.size() < len) throw DomainError("word shorter than the rule window");
    check_word(ca.alphabet(), w);
    Word out(w.size() - len + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ca.eval(w.data() + i);
    return out;
}

PeriodicConfiguration step(const CellularAutomaton& ca, const PeriodicConfiguration& x) {
    if (!(x.alphabet == ca.alphabet())) throw DomainError("alphabet mismatch");
    PeriodicConfiguration y{x.alphabet, Word(x.period())};
    ca.rule().step_cyclic(x.cells.data(), x.period(), y.cells.data());
    return y;
}

PeriodicConfiguration iterate(const CellularAutomaton& ca, PeriodicConfiguration x, std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) x = step(ca, x);
    return x;
}

CellularAutomaton to_table(const CellularAutomaton& ca, std::size_t table_budget) {
    if (ca.is_table()) return ca;
    const std::size_t len = ca.window();
    const std::size_t n = checked_pow(static_cast<std::size_t>(ca.alphabet().size), len, table_budget);
    if (n > table_budget) return ca;
    std::vector<Symbol> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = ca.eval(window_at(ca.alphabet(), i, len).data());
    return table_rule(ca.alphabet(), ca.radius(), std::move(t));
}

CellularAutomaton power(const CellularAutomaton& ca, int j, std::size_t table_budget) {
    if (j < 1) throw DomainError("power exponent must be >= 1");
    if (j == 1) return ca;
    return to_table(CellularAutomaton(std::make_shared<PowerRule>(ca, j)), table_budget);
}

CellularAutomaton pad_radius(const CellularAutomaton& ca, int r2, std::size_t table_budget) {
    if (r2 < ca.radius()) throw DomainError("cannot pad to a smaller radius");
    if (r2 == ca.radius()) return ca;
    CellularAutomaton padded(std::make_shared<PaddedRule>(ca, r2));
    return ca.is_table() ? to_table(padded, table_budget) : padded;
}

bool is_quiescent(const CellularAutomaton& ca, Symbol b) {
    if (b >= ca.alphabet().size) throw DomainError("symbol outside alphabet");
    Word w(ca.window(), b);
    return ca.eval(w.data()) == b;
}

bool is_spreading(const CellularAutomaton& ca, Symbol b, std::size_t samples, std::uint64_t seed) {
    if (b >= ca.alphabet().size) throw DomainError("symbol outside alphabet");
    const std::size_t len = ca.window();
    if (ca.is_table()) {
        const auto& t = ca.table();
        for (std::size_t i = 0; i < t.size(); ++i) {
            Word w = window_at(ca.alphabet(), i, len);
            bool has = false;
            for (Symbol s : w) has = has || s == b;
            if (has && t[i] != b) return false;
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> sym(0, ca.alphabet().size - 1);
    std::uniform_int_distribution<std::size_t> pos(0, len - 1);
    Word w(len);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& c : w) c = static_cast<Symbol>(sym(rng));
        w[pos(rng)] = b;
        if (ca.eval(w.data()) != b) return false;
    }
    return true;
}

int uniform_period(const CellularAutomaton& ca) {
    const int n = ca.alphabet().size;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        Word w(ca.window(), static_cast<Symbol>(b));
        next[static_cast<std::size_t>(b)] = ca.eval(w.data());
    }
    int best = n;
    for (int b = 0; b < n; ++b) {
        // b lies on a cycle iff iterating returns to it within n steps.
        int c = next[static_cast<std::size_t>(b)];
        for (int len = 1; len <= n; ++len) {
            if (c == b) {
                best = std::min(best, len);
                break;
            }
            c = next[static_cast<std::size_t>(c)];
        }
    }
    return best;
}

OrbitSummary eventual_cycle(const CellularAutomaton& ca, const PeriodicConfiguration& x, std::size_t budget) {
    if (budget < 1) throw DomainError("budget must be >= 1");
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<PeriodicConfiguration> orbit;
    PeriodicConfiguration cur = x;
    for (std::size_t t = 0; t <= budget; ++t) {
        std::string key(cur.cells.begin(), cur.cells.end());
        auto [it, fresh] = seen.emplace(std::move(key), t);
        if (!fresh) {
            OrbitSummary s;
            s.tail = it->second;
            s.cycle.assign(orbit.begin() + static_cast<std::ptrdiff_t>(it->second), orbit.end());
            return s;
        }
        if (t == budget) break;
        orbit.push_back(cur);
        cur = step(ca, cur);
    }
    throw Inconclusive("orbit did not close within " + std::to_string(budget) + " steps");
}

}  // namespace limca
