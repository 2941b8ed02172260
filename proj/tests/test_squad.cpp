#include <doctest.h>

#include <random>

#include "limca/core/errors.hpp"
#include "limca/squad/squad.hpp"

using namespace limca;

namespace {

const SquadAutomaton& squad() {
    static const SquadAutomaton s = build_squad();
    return s;
}

Symbol f(Symbol a, Symbol b, Symbol c) { return squad().ca.eval(Word{a, b, c}); }

bool in_gamma_kappa(const Word& w) {
    for (Symbol c : w)
        if (c != squad().gamma && c != squad().kappa) return false;
    return true;
}

}  // namespace

TEST_CASE("shipped squad matches its data file") {
    SquadAutomaton file = load_squad(std::string(LIMCA_DATA_DIR) + "/squad.manifest");
    CHECK(file.ca.table() == squad().ca.table());
    CHECK(file.gamma == squad().gamma);
    CHECK(file.kappa == squad().kappa);
    CHECK(file.wall == squad().wall);
    CHECK(squad().ca.radius() == 1);
}

TEST_CASE("squad local contract") {
    const auto& s = squad();
    CHECK(is_spreading(s.ca, s.kappa));
    CHECK(f(s.gamma, s.quiet, s.gamma) == s.kappa);
    CHECK(f(s.gamma, s.gamma, s.gamma) == s.gamma);
    // Spreading, exhaustive over all windows.
    const int n = s.ca.alphabet().size;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Symbol sa = Symbol(a), sb = Symbol(b), sc = Symbol(c);
                Word w{sa, sb, sc};
                if (sa == s.kappa || sb == s.kappa || sc == s.kappa) REQUIRE(f(sa, sb, sc) == s.kappa);
                // γ-isolation: γ next to a symbol outside {γ,κ} becomes κ.
                if (sb == s.gamma && !in_gamma_kappa(w)) REQUIRE(f(sa, sb, sc) == s.kappa);
                // γ only ever arises from a γ window or a uniform ready window.
                if (f(sa, sb, sc) == s.gamma) REQUIRE((sa == sb && sb == sc));
            }
}

TEST_CASE("seed segments fire exactly, late and in order, n <= 32") {
    const auto& s = squad();
    CHECK_THROWS_AS(seed_segment(s, 1), DomainError);
    auto seed = seed_segment(s, 2);
    CHECK(seed.period() == 3);
    CHECK(seed.cells == Word{s.wall, s.general, s.quiet});
    std::size_t prev = 0;
    for (int n = 2; n <= 32; ++n) {
        SquadRun run = run_segment(s, n, 1000);
        CHECK_FALSE(run.early_gamma);
        CHECK_FALSE(run.early_kappa);
        CHECK(run.fire_time > prev);
        CHECK(run.fire_time >= static_cast<std::size_t>(2 * n - 2));
        CHECK(firing_time(n) == run.fire_time);
        // The fired configuration is the fixed point ∞γ∞.
        auto x = iterate(s.ca, seed_segment(s, n), run.fire_time);
        CHECK(x.cells == Word(static_cast<std::size_t>(n) + 1, s.gamma));
        CHECK(step(s.ca, x) == x);
        // Cross-check with the orbit analysis: the tail is the firing time.
        OrbitSummary o = eventual_cycle(s.ca, seed_segment(s, n), 1000);
        CHECK(o.tail == run.fire_time);
        REQUIRE(o.cycle.size() == 1);
        CHECK(o.cycle[0] == x);
        prev = run.fire_time;
    }
    CHECK(firing_time(2) == 7);
}

TEST_CASE("walls separate independent segments") {
    // Two equal segments side by side fire together.
    const auto& s = squad();
    Word two = seed_segment(s, 5).cells;
    Word both = two;
    both.insert(both.end(), two.begin(), two.end());
    auto x = iterate(s.ca, make_config(s.ca.alphabet(), both), firing_time(5));
    CHECK(x.cells == Word(both.size(), s.gamma));
}

TEST_CASE("recurrent γ configurations lie in {κ,γ}, exhaustive P <= 4") {
    for (std::size_t p = 1; p <= 4; ++p) {
        auto rep = check_limit_gamma(squad(), p);
        CHECK_FALSE(rep.sampled);
        CHECK(rep.violations.empty());
        CHECK(rep.recurrent_gamma >= 1);  // ∞γ∞ itself
    }
}

TEST_CASE("γ mixed with quiet is κ-contaminated within 2 steps") {
    const auto& s = squad();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        std::size_t p = 2 + rng() % 10;
        Word w(p);
        for (auto& c : w) c = (rng() & 1) ? s.gamma : s.quiet;
        w[0] = s.gamma;
        w[1] = s.quiet;
        // One step: κ appears. Two steps: every surviving γ sits among γ/κ.
        auto x1 = step(s.ca, make_config(s.ca.alphabet(), w));
        bool kappa = false;
        for (Symbol c : x1.cells) kappa = kappa || c == s.kappa;
        REQUIRE(kappa);
        auto x2 = step(s.ca, x1);
        for (std::size_t i = 0; i < p; ++i) {
            if (x2.cells[i] != s.gamma) continue;
            for (std::size_t j : {(i + p - 1) % p, (i + 1) % p})
                REQUIRE((x2.cells[j] == s.gamma || x2.cells[j] == s.kappa));
        }
    }
}

TEST_CASE("negative control: without γ-isolation the limit check fails") {
    auto bad = squad_without_gamma_isolation(squad());
    auto rep = check_limit_gamma(bad, 3);
    CHECK_FALSE(rep.violations.empty());
}
