#include "limca/squad/squad.hpp"

#include <map>
#include <mutex>
#include <random>

#include "limca/core/errors.hpp"
#include "limca/core/rule_io.hpp"
#include "limca/lang/limit.hpp"

namespace limca {

namespace {

#include "squad/squad_table.inc"

bool has_symbol(const Word& w, Symbol s) {
    for (Symbol c : w)
        if (c == s) return true;
    return false;
}

void validate(const SquadAutomaton& s) {
    if (s.ca.radius() != 1) throw IntegrityError("squad must have radius 1");
    const int n = s.ca.alphabet().size;
    for (Symbol q : {s.gamma, s.kappa, s.quiet, s.general, s.wall})
        if (q >= n) throw IntegrityError("squad manifest names a symbol outside the alphabet");
    if (!is_spreading(s.ca, s.kappa)) throw IntegrityError("squad κ is not spreading");
    if (!is_quiescent(s.ca, s.gamma)) throw IntegrityError("squad γ is not quiescent");
}

}  // namespace

SquadAutomaton build_squad() {
    std::vector<Symbol> table;
    for (const char* p = kSquadTable; *p; ++p) table.push_back(parse_word(std::string_view(p, 1))[0]);
    SquadAutomaton s;
    s.ca = table_rule(Alphabet{kSquadAlphabet}, 1, std::move(table));
    s.gamma = kSquadGamma;
    s.kappa = kSquadKappa;
    s.quiet = kSquadQuiet;
    s.general = kSquadGeneral;
    s.wall = kSquadWall;
    validate(s);
    return s;
}

SquadAutomaton load_squad(const std::string& manifest_path) {
    KeyValues kv = KeyValues::load(manifest_path);
    SquadAutomaton s;
    s.ca = load_rule(join_path(dir_of(manifest_path), kv.get("rule")));
    s.gamma = static_cast<Symbol>(kv.get_int("gamma"));
    s.kappa = static_cast<Symbol>(kv.get_int("kappa"));
    s.quiet = static_cast<Symbol>(kv.get_int("quiet"));
    s.general = static_cast<Symbol>(kv.get_int("general"));
    s.wall = static_cast<Symbol>(kv.get_int("wall"));
    validate(s);
    return s;
}

PeriodicConfiguration seed_segment(const SquadAutomaton& s, int n) {
    if (n < 2) throw DomainError("segment length must be >= 2");
    Word cells(static_cast<std::size_t>(n) + 1, s.quiet);
    cells[0] = s.wall;
    cells[1] = s.general;
    return make_config(s.ca.alphabet(), std::move(cells));
}

SquadRun run_segment(const SquadAutomaton& s, int n, std::size_t budget) {
    SquadRun run;
    run.n = n;
    PeriodicConfiguration x = seed_segment(s, n);
    for (std::size_t t = 0; t <= budget; ++t) {
        bool all_gamma = true;
        for (Symbol c : x.cells) all_gamma = all_gamma && c == s.gamma;
        if (all_gamma) {
            run.fire_time = t;
            return run;
        }
        run.early_gamma = run.early_gamma || has_symbol(x.cells, s.gamma);
        run.early_kappa = run.early_kappa || has_symbol(x.cells, s.kappa);
        x = step(s.ca, x);
    }
    throw IntegrityError("segment of length " + std::to_string(n) + " did not fire within " + std::to_string(budget) +
                         " steps");
}

std::size_t firing_time(int n) {
    static std::mutex mu;
    static std::map<int, std::size_t> memo;
    static const SquadAutomaton squad = build_squad();
    if (n < 2) throw DomainError("segment length must be >= 2");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    std::size_t t = run_segment(squad, n, 4 * static_cast<std::size_t>(n) + 16).fire_time;
    std::lock_guard<std::mutex> lock(mu);
    memo[n] = t;
    return t;
}

LimitGammaReport check_limit_gamma(const SquadAutomaton& s, std::size_t period, std::size_t budget, std::size_t samples,
                                   std::uint64_t seed) {
    if (period < 1) throw DomainError("period must be >= 1");
    LimitGammaReport rep;
    rep.period = period;
    auto inspect = [&](const Word& x) {
        ++rep.recurrent;
        if (!has_symbol(x, s.gamma)) return;
        ++rep.recurrent_gamma;
        for (Symbol c : x)
            if (c != s.gamma && c != s.kappa) {
                rep.violations.push_back(x);
                return;
            }
    };
    const std::size_t k = static_cast<std::size_t>(s.ca.alphabet().size);
    std::size_t total = 1;
    bool fits = true;
    for (std::size_t i = 0; i < period && fits; ++i) {
        if (total > budget / k) fits = false;
        else total *= k;
    }
    if (fits) {
        rep.configurations = total;
        for (const Word& x : recurrent_periodic(s.ca, period, budget)) inspect(x);
        return rep;
    }
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> sym(0, static_cast<int>(k) - 1);
    std::map<Word, bool> seen;
    for (std::size_t t = 0; t < samples; ++t) {
        Word w(period);
        for (auto& c : w) c = static_cast<Symbol>(sym(rng));
        ++rep.configurations;
        OrbitSummary o = eventual_cycle(s.ca, make_config(s.ca.alphabet(), w), 1u << 16);
        for (const auto& c : o.cycle)
            if (seen.emplace(c.cells, true).second) inspect(c.cells);
    }
    return rep;
}

SquadAutomaton squad_without_gamma_isolation(const SquadAutomaton& s) {
    const auto& t = s.ca.table();
    const Alphabet a = s.ca.alphabet();
    std::vector<Symbol> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        Word w = window_at(a, i, 3);
        if (has_symbol(w, s.kappa)) out[i] = s.kappa;
        else if (w[1] == s.gamma) out[i] = s.gamma;
        else {
            for (auto& c : w)
                if (c == s.gamma) c = s.quiet;
            out[i] = t[window_index(a, w.data(), 3)];
        }
    }
    SquadAutomaton m = s;
    m.ca = table_rule(a, 1, std::move(out));
    return m;
}

}  // namespace limca
