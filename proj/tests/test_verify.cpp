#include <doctest.h>

#include <algorithm>
#include <set>

#include "limca/core/errors.hpp"
#include "limca/lang/limit.hpp"
#include "limca/verify/necklace.hpp"
#include "limca/verify/render.hpp"
#include "limca/verify/suites.hpp"

using namespace limca;

namespace {

// Necklace count (1/n) sum_{d | n} phi(d) 2^(n/d).
std::uint64_t necklace_count(std::uint64_t n) {
    auto phi = [](std::uint64_t m) {
        std::uint64_t r = m;
        for (std::uint64_t p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                while (m % p == 0) m /= p;
                r -= r / p;
            }
        if (m > 1) r -= r / m;
        return r;
    };
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) total += phi(d) << (n / d);
    return total / n;
}

Word least_rotation(const Word& w) {
    Word best = w;
    for (std::size_t s = 1; s < w.size(); ++s) best = std::min(best, rotate_left(w, s));
    return best;
}

SuiteParams quick(std::size_t samples = 20000) {
    SuiteParams p;
    p.samples = samples;
    p.periods = {14};
    return p;
}

}  // namespace

TEST_CASE("necklace enumeration") {
    for (std::size_t n = 1; n <= 16; ++n) {
        auto reps = binary_necklaces(n);
        REQUIRE(reps.size() == necklace_count(n));
        REQUIRE(std::is_sorted(reps.begin(), reps.end()));
        for (std::uint64_t v : reps) REQUIRE(canonical_rotation(v, n) == v);
    }
    CHECK(binary_necklaces(28).size() == necklace_count(28));
    CHECK(necklace_count(28) == 9587580);
    CHECK(format_word(unpack_bits(pack_bits(parse_word("0110")), 4)) == "0110");
    CHECK(canonical_rotation(pack_bits(parse_word("1100")), 4) == pack_bits(parse_word("0011")));
    CHECK_THROWS_AS(binary_necklaces(0), DomainError);
    CHECK_THROWS_AS(binary_necklaces(33), DomainError);
}

TEST_CASE("recurrent necklaces agree with the full functional graph") {
    for (int rule : {0, 4, 18, 30, 54, 90, 110, 128, 184, 232}) {
        for (std::size_t n = 1; n <= 10; ++n) {
            std::set<Word> ref;
            for (const Word& w : recurrent_periodic(eca(rule), n)) ref.insert(least_rotation(w));
            auto got = recurrent_necklaces(eca(rule), n, 2);
            REQUIRE(std::set<Word>(got.begin(), got.end()) == ref);
            REQUIRE(got.size() == ref.size());
        }
    }
}

TEST_CASE("space-time rendering") {
    auto x = make_config(kBinary, parse_word("01110"));
    CHECK(render_spacetime(eca(128), x, 2, "txt") == "01110\n00100\n00000\n");
    CHECK(render_spacetime(eca(0), x, 2, "txt") == "01110\n00000\n00000\n");
    std::string pbm = render_spacetime(eca(30), make_config(kBinary, parse_word("0001000")), 3, "pbm");
    CHECK(pbm.rfind("P1\n7 4\n", 0) == 0);
    auto rows = parse_pbm(pbm);
    REQUIRE(rows.size() == 4);
    PeriodicConfiguration cur = make_config(kBinary, parse_word("0001000"));
    for (const Word& row : rows) {
        CHECK(row == cur.cells);
        cur = step(eca(30), cur);
    }
    CHECK(parse_pbm("P1\n# comment\n2 1\n1 0\n") == std::vector<Word>{parse_word("10")});
    auto three = table_rule(Alphabet{3}, 0, {1, 2, 0});
    CHECK(render_spacetime(three, make_config(Alphabet{3}, parse_word("012")), 1, "txt") == "012\n120\n");
    CHECK_THROWS_AS(render_spacetime(three, make_config(Alphabet{3}, parse_word("012")), 1, "pbm"), DomainError);
    CHECK_THROWS_AS(render_spacetime(eca(0), x, 1, "png"), DomainError);
    CHECK_THROWS_AS(parse_pbm("P4\n1 1\n0"), DomainError);
    CHECK_THROWS_AS(parse_pbm("P1\n2 2\n0 1\n1"), DomainError);
}

TEST_CASE("suite registry and report format") {
    CHECK(suite_names().size() == 11);
    CHECK_THROWS_AS(run_suite("nope", {}), DomainError);
    SuiteParams bad;
    bad.periods = {40};
    CHECK_THROWS_AS(run_suite("ssgamma", bad), DomainError);
    SuiteReport r;
    r.suite = "x";
    r.seed = 3;
    r.violate("a", "b", "c");
    r.finish();
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.str() == "suite: x\nseed: 3\nsamples: 0\nviolations: 1\nviolation: input=a expected=b got=c\nverdict: fail\n");
    SuiteReport e;
    e.budget_exhausted = true;
    e.finish();
    CHECK(e.verdict == Verdict::inconclusive);
}

TEST_CASE("sampled window suites pass and are deterministic") {
    for (const char* name : {"preinv0", "preinv", "reduction-agree"}) {
        SuiteReport a = run_suite(name, quick());
        SuiteReport b = run_suite(name, quick());
        CHECK(a.verdict == Verdict::pass);
        CHECK(a.str() == b.str());
        CHECK(a.str().find("seed: 42\n") != std::string::npos);
    }
    SuiteParams other = quick();
    other.seed = 7;
    CHECK(run_suite("preinv0", other).str() != run_suite("preinv0", quick()).str());
}

TEST_CASE("mutations break their target suites") {
    SuiteParams p = quick();
    p.mutation = DeltaMutation::kill_is_identity;
    CHECK(run_suite("preinv0", p).verdict == Verdict::fail);
    CHECK(run_suite("preinv", p).verdict == Verdict::fail);
    CHECK(run_suite("ssgamma", p).verdict == Verdict::fail);
    p.mutation = DeltaMutation::unfreeze_phase_shift;
    CHECK(run_suite("reduction-agree", p).verdict == Verdict::fail);
    CHECK(run_suite("sigomeg", p).verdict == Verdict::fail);
    p.mutation = DeltaMutation::simulate_skip_squad;
    CHECK(run_suite("sigomeg", p).verdict == Verdict::fail);
    SuiteParams nil = quick();
    nil.mutation = DeltaMutation::ignore_theta;
    nil.periods = {28};
    SuiteReport r = run_suite("prodnilp", nil);
    CHECK(r.verdict == Verdict::fail);
}

TEST_CASE("exhaustive suites at period k") {
    for (const char* name : {"ssgamma", "prodnilp", "fire"}) {
        SuiteReport r = run_suite(name, quick());
        INFO(r.str());
        CHECK(r.verdict == Verdict::pass);
    }
    SuiteParams iso = quick();
    iso.squad_without_isolation = true;
    CHECK(run_suite("fire", iso).verdict == Verdict::fail);
    CHECK(run_suite("squad", iso).verdict == Verdict::fail);
}

TEST_CASE("fire reports the first reachable span") {
    SuiteReport r = run_suite("fire", quick());
    auto it = std::find_if(r.facts.begin(), r.facts.end(), [](const auto& f) { return f.first == "first_reachable_span"; });
    REQUIRE(it != r.facts.end());
    CHECK(it->second == "7");
    SuiteParams wide = quick();
    wide.max_span = 7;
    CHECK(run_suite("fire", wide).verdict == Verdict::fail);
}

TEST_CASE("code suites") {
    CHECK(run_suite("freezing", {}).verdict == Verdict::pass);
    CHECK(run_suite("code-roundtrip", {}).verdict == Verdict::pass);
    SuiteParams f;
    f.code = "formula";
    f.samples = 300;
    CHECK(run_suite("code-roundtrip", f).verdict == Verdict::pass);
    // Every sampled pair of formula codewords overlaps at k - |u_E| = 219,
    // and at no other offset.
    SuiteReport r = run_suite("freezing", f);
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.violation_count == 300);
    CHECK(r.str().find("overlaps at offset 219: 300\n") != std::string::npos);
    CHECK(r.str().find("m n k: 37 104 222\n") != std::string::npos);
    f.code = "other";
    CHECK_THROWS_AS(run_suite("freezing", f), DomainError);
}

TEST_CASE("squad, sigomeg and surjectivity suites") {
    SuiteParams p;
    p.max_n = 12;
    SuiteReport s = run_suite("squad", p);
    CHECK(s.verdict == Verdict::pass);
    CHECK(s.str().find("t(2..max_n): 7 ") != std::string::npos);
    SuiteReport w = run_suite("sigomeg", {});
    CHECK(w.verdict == Verdict::pass);
    CHECK(w.str().find("j: 8 10 14\n") != std::string::npos);
    SuiteReport surj = run_suite("surjectivity", {});
    CHECK(surj.verdict == Verdict::pass);
    CHECK(surj.str().find("orphan ECA 128: 101\n") != std::string::npos);
}
