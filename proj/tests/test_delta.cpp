#include <doctest.h>

#include <random>

#include "limca/core/errors.hpp"
#include "limca/delta/reduction.hpp"
#include "limca/lang/limit.hpp"

using namespace limca;

namespace {

const ReductionInstance& reference() {
    static const ReductionInstance inst = build_reduction_pair(eca(4), eca(0), eca(128), 0, build_squad());
    return inst;
}

// Straight transcription of the four cases, decoding every candidate block
// through the code itself.
Symbol naive_delta(const ReductionInstance& inst, int which, const Word& y) {
    const FreezingCode& c = *inst.code;
    const std::size_t k = c.k();
    const std::size_t r = 2 * k - 1;
    REQUIRE(y.size() == 2 * r + 1);
    if (inst.sigma.contains(y)) {
        const CellularAutomaton& g = which == 0 ? inst.g0 : inst.g1;
        return g.eval(Word{y[r - 1], y[r], y[r + 1]});
    }
    int found = -1, count = 0;
    std::vector<Decoded> ds;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Decoded> here;
        for (std::size_t t = 0; t < 3; ++t) {
            auto d = c.try_decode(slice(y, i + t * k, i + (t + 1) * k));
            if (!d) break;
            here.push_back(*d);
        }
        if (here.size() == 3) {
            ++count;
            found = static_cast<int>(i);
            ds = here;
        }
    }
    if (count != 1) return 0;
    const std::size_t phase = k - 1 - static_cast<std::size_t>(found);
    auto [a, b] = c.coding().split(ds[1].symbol);
    if (b == inst.squad.gamma) return ds[1].z[phase];
    Word zcat;
    Word v, w;
    for (const auto& d : ds) {
        zcat.insert(zcat.end(), d.z.begin(), d.z.end());
        auto [va, wb] = c.coding().split(d.symbol);
        v.push_back(static_cast<Symbol>(va));
        w.push_back(static_cast<Symbol>(wb));
    }
    if (!inst.sigma.contains(zcat) || a == inst.theta || b == inst.squad.kappa) return 0;
    int na = inst.n_ca.eval(v), sb = inst.squad.ca.eval(w);
    return c.encode(ds[1].z, c.coding().index(na, sb))[phase];
}

Word encode_blocks(const FreezingCode& c, const std::vector<Word>& zs, const Word& v, const Word& w) {
    Word out;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Word b = c.encode(zs[i], c.coding().index(v[i], w[i]));
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

}  // namespace

TEST_CASE("reference instance parameters") {
    const auto& inst = reference();
    CHECK(format_word(inst.u0) == "11");
    CHECK(format_word(inst.u1) == "1");
    CHECK(format_word(inst.u_sigma) == "11111");
    CHECK_FALSE(inst.complemented);
    CHECK(inst.code->k() == 14);
    CHECK(inst.f0.radius() == 27);
    CHECK(inst.f0.r_s() == 1);
    CHECK(inst.code->coding().size() == 58);
}

TEST_CASE("window classification examples") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    const std::size_t k = c.k(), len = 2 * 27 + 1;
    CHECK(inst.f0.classify(Word(len, 0)).tag == Case::sigma);
    // Quiet squad states: case (3) at every offset i.
    const Word z = c.pool()[1];
    for (std::size_t i = 0; i < k; ++i) {
        Word y(i, 0);
        Word blocks = encode_blocks(c, {z, z, z}, Word{1, 1, 1}, Word{0, 0, 0});
        y.insert(y.end(), blocks.begin(), blocks.end());
        y.resize(len, 0);
        CaseTag t = inst.f0.classify(y);
        REQUIRE(t.tag == Case::simulate);
        CHECK(t.offset == static_cast<int>(i));
        CHECK(t.matches == 1);
        CHECK(t.z == std::vector<Word>{z, z, z});
        CHECK(t.v == Word{1, 1, 1});
    }
    // u_Σ with garbage around it and no codeword context.
    Word g(len, 0);
    for (std::size_t i = 20; i < 25; ++i) g[i] = 1;
    g[40] = 1;
    CaseTag t = inst.f0.classify(g);
    CHECK(t.tag == Case::kill);
    CHECK(t.output == 0);
    CHECK_THROWS_AS(inst.f0.classify(Word(10, 0)), DomainError);
}

TEST_CASE("compiled rule agrees with the naive four-case rule") {
    const auto& inst = reference();
    std::mt19937_64 rng(11);
    const std::size_t len = 55;
    for (int which = 0; which < 2; ++which) {
        const CellularAutomaton& ca = inst.f(which).ca();
        for (int t = 0; t < 20000; ++t) {
            Word y = sample_window(inst.f(which), len, 27, rng);
            REQUIRE(ca.eval(y) == naive_delta(inst, which, y));
        }
    }
}

TEST_CASE("cyclic step agrees with window-by-window evaluation") {
    const auto& inst = reference();
    std::mt19937_64 rng(12);
    const auto& ca = inst.f0.ca();
    for (std::size_t period : {1, 5, 14, 28, 42, 60, 100}) {
        for (int t = 0; t < 20; ++t) {
            Word x = sample_window(inst.f0, period, 0, rng);
            Word fast(period);
            ca.rule().step_cyclic(x.data(), period, fast.data());
            const std::size_t r = 27;
            Word slow(period), win(2 * r + 1);
            for (std::size_t j = 0; j < period; ++j) {
                for (std::size_t d = 0; d < win.size(); ++d) win[d] = x[(j + period * 10 + d - r) % period];
                slow[j] = ca.eval(win);
            }
            REQUIRE(fast == slow);
        }
    }
}

TEST_CASE("all-zero configuration is fixed") {
    const auto& inst = reference();
    auto zero = uniform_config(kBinary, 0);
    for (std::size_t p : {1, 28, 55}) {
        PeriodicConfiguration x = make_config(kBinary, Word(p, 0));
        CHECK(step(inst.f0.ca(), x) == x);
    }
    CHECK(step(inst.f1.ca(), zero) == zero);
}

TEST_CASE("encoded configuration advances its N and squad tracks only") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    const auto& s = inst.squad;
    // Squad segment of length 4 mid-countdown, N-track 1 0 1 1 0 ...
    PeriodicConfiguration seed = seed_segment(s, 4);
    Word w = iterate(s.ca, seed, 3).cells;
    Word v = {1, 1, 1, 1, 1};
    std::vector<Word> zs = {c.pool()[0], c.pool()[1], c.pool()[1], c.pool()[0], c.pool()[1]};
    PeriodicConfiguration x = make_config(kBinary, encode_blocks(c, zs, v, w));
    PeriodicConfiguration y = step(inst.f0.ca(), x);
    Word w2 = step(s.ca, make_config(s.ca.alphabet(), w)).cells;
    Word v2 = step(inst.n_ca, make_config(kBinary, v)).cells;
    CHECK(y.cells == encode_blocks(c, zs, v2, w2));
    for (Case t : inst.f0.classify_cells(x)) CHECK(t == Case::simulate);
}

TEST_CASE("uniform γ squad track decodes to the z-track in one step") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    std::vector<Word> zs = {c.pool()[1], c.pool()[0], c.pool()[1]};
    Word g(3, inst.squad.gamma);
    PeriodicConfiguration x = make_config(kBinary, encode_blocks(c, zs, Word{0, 1, 0}, g));
    Word expect;
    for (const Word& z : zs) expect.insert(expect.end(), z.begin(), z.end());
    CHECK(step(inst.f0.ca(), x).cells == expect);
    for (Case t : inst.f1.classify_cells(x)) CHECK(t == Case::unfreeze);
}

TEST_CASE("θ and κ kill the encoding") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    std::vector<Word> zs(3, c.pool()[0]);
    PeriodicConfiguration theta = make_config(kBinary, encode_blocks(c, zs, Word{1, 0, 1}, Word{0, 0, 0}));
    auto cases = inst.f0.classify_cells(theta);
    CHECK(cases[14 + 3] == Case::kill);
    CHECK(cases[3] == Case::simulate);
    PeriodicConfiguration kappa =
        make_config(kBinary, encode_blocks(c, zs, Word{1, 1, 1}, Word{0, inst.squad.kappa, 0}));
    CHECK(inst.f0.classify_cells(kappa)[14] == Case::kill);
    CHECK(step(inst.f0.ca(), kappa).cells[14] == 0);
}

TEST_CASE("Λ membership") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    const std::size_t k = c.k();
    CHECK(is_lambda(inst.f0, make_config(kBinary, Word(28, 0))));
    Word one = c.encode(c.pool()[0], 5);
    CHECK(is_lambda(inst.f0, make_config(kBinary, one)));
    Word tail = one;
    tail.resize(2 * k, 0);
    tail.back() = 1;
    CHECK_FALSE(is_lambda(inst.f0, make_config(kBinary, tail)));
    Word padded = one;
    padded.resize(3 * k + 4, 0);
    CHECK(is_lambda(inst.f0, make_config(kBinary, rotate_left(padded, 9))));
    Word two = concat(one, c.encode(c.pool()[1], 57));
    two.resize(two.size() + 3, 0);
    CHECK(is_lambda(inst.f0, make_config(kBinary, rotate_left(two, 20))));
    CHECK(codeword_positions(c, one) == std::vector<std::size_t>{0});
}

TEST_CASE("quiescent squaring") {
    auto r = square_quiescent(eca(51));
    CHECK(r.squared);
    CHECK(r.quiescent == 0);
    CHECK(r.ca.table() == pad_radius(identity_rule(kBinary), 2).table());
    auto same = square_quiescent(eca(128));
    CHECK_FALSE(same.squared);
    CHECK(same.quiescent == 0);
    for (int rule = 0; rule < 256; ++rule) {
        auto q = square_quiescent(eca(rule));
        REQUIRE(is_quiescent(q.ca, q.quiescent));
    }
}

TEST_CASE("complement normalization") {
    CHECK(complement_rule(eca(128)).table() == eca(254).table());
    CHECK(complement_rule(complement_rule(eca(30))).table() == eca(30).table());
    // ECA 223 and 255 fix 1^Z but not 0^Z; complemented they are ECA 4 and 0.
    CHECK(complement_rule(eca(129)).table() == eca(126).table());
    ReductionOptions opt;
    opt.agree_samples = 200;
    auto inst = build_reduction_pair(eca(223), eca(255), eca(128), 0, build_squad(), opt);
    CHECK(inst.complemented);
    CHECK(inst.g0.table() == eca(4).table());
    CHECK(inst.g1.table() == eca(0).table());
    CHECK(format_word(inst.u_sigma) == "11111");
    CHECK_THROWS_AS(build_reduction_pair(eca(129), eca(1), eca(128), 0, build_squad(), opt), DomainError);
}

TEST_CASE("reduction pair construction") {
    ReductionOptions opt;
    opt.agree_samples = 500;
    opt.toy_k = 16;
    auto a = build_reduction_pair(eca(128), eca(0), eca(128), 0, build_squad(), opt);
    CHECK(format_word(a.u0) == "101");
    CHECK(format_word(a.u_sigma) == "110111");
    CHECK_THROWS_AS(build_reduction_pair(eca(90), eca(0), eca(128), 0, build_squad(), opt), DomainError);
    CHECK_THROWS_AS(build_reduction_pair(eca(51), eca(0), eca(128), 0, build_squad(), opt), DomainError);
    CHECK_THROWS_AS(build_reduction_pair(eca(4), eca(0), eca(90), 0, build_squad(), opt), DomainError);
    // Identical components give identical rules.
    auto same = build_reduction_pair(eca(4), eca(4), eca(128), 0, build_squad(), opt);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        Word y = sample_window(same.f0, same.f0.ca().window(), static_cast<std::size_t>(same.f0.radius()), rng);
        REQUIRE(same.f0.ca().eval(y) == same.f1.ca().eval(y));
    }
}

TEST_CASE("F_0 and F_1 agree outside case (1)") {
    const auto& inst = reference();
    auto rep = check_pair_agreement(inst.f0, inst.f1, 20000, 42);
    CHECK(rep.disagreements == 0);
    CHECK(rep.compared > 10000);
    // They do differ on Σ: ECA 4 keeps an isolated 1, ECA 0 does not.
    Word y(55, 0);
    y[27] = 1;
    CHECK(inst.f0.ca().eval(y) == 1);
    CHECK(inst.f1.ca().eval(y) == 0);
    auto bad = check_pair_agreement(inst.f0, inst.compile(1, DeltaMutation::unfreeze_phase_shift), 20000, 42);
    CHECK(bad.disagreements > 0);
}

TEST_CASE("nilpotency probe") {
    auto a = nilpotency_probe(eca(0), 0, 4, 4);
    CHECK(a.kind == Nilpotency::nilpotent);
    CHECK(a.steps == 1);
    auto b = nilpotency_probe(eca(128), 0, 4, 4);
    CHECK(b.kind == Nilpotency::non_nilpotent);
    CHECK(format_word(b.witness) == "1");
    CHECK(format_verdict(b) == "non_nilpotent(inf 1 inf)");
    CHECK(nilpotency_probe(eca(128), 0, 0, 0).kind == Nilpotency::inconclusive);
    CHECK(nilpotency_probe(eca(0), 0, 0, 0).kind == Nilpotency::inconclusive);
    // Three states counting down to 0, which spreads: nilpotent in 2 steps.
    std::vector<Symbol> table(27);
    for (std::size_t i = 0; i < 27; ++i) {
        Word w = window_at(Alphabet{3}, i, 3);
        table[i] = (w[0] && w[1] && w[2]) ? static_cast<Symbol>(w[1] - 1) : 0;
    }
    auto c = nilpotency_probe(table_rule(Alphabet{3}, 1, table), 0, 4, 4);
    CHECK(c.kind == Nilpotency::nilpotent);
    CHECK(c.steps == 2);
    CHECK_THROWS_AS(nilpotency_probe(eca(90), 0, 4, 4), DomainError);
}

TEST_CASE("decision skeleton truth table") {
    const auto& inst = reference();
    auto f0 = inst.f0.ca().rule_ptr();
    for (bool a : {false, true})
        for (bool b : {false, true}) {
            auto oracle = [&](const CellularAutomaton& ca) { return ca.rule_ptr() == f0 ? a : b; };
            CHECK(decide_nilpotency_with_oracle(inst, oracle) == (a && !b));
        }
}

TEST_CASE("Σ configurations reappear after J steps") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    const std::size_t k = c.k();
    Word xc = concat(c.pool()[1], concat(c.pool()[0], c.pool()[1]));
    PeriodicConfiguration x = make_config(kBinary, xc);
    std::vector<std::size_t> js;
    for (int idx = 0; idx < 3; ++idx) {
        auto w = sigomeg_witness(inst, 0, x, idx);
        js.push_back(w.j);
        const std::size_t blocks = w.x_tilde.period() / k;
        CHECK(blocks % 3 == 0);
        PeriodicConfiguration cur = w.x_tilde;
        PeriodicConfiguration sq = seed_segment(inst.squad, w.segment);
        Word seed_track(blocks), n_track(blocks, 1);
        for (std::size_t b = 0; b < blocks; ++b) seed_track[b] = sq.cells[b % sq.period()];
        PeriodicConfiguration s = make_config(inst.squad.ca.alphabet(), seed_track);
        for (std::size_t j = 0; j < w.j; ++j) {
            // Up to the last step the blocks are ξ(x-block, N^j(y), S^j(seed)).
            Word expect;
            for (std::size_t b = 0; b < blocks; ++b) {
                Word blk = c.encode(slice(xc, (b % 3) * k, (b % 3 + 1) * k), c.coding().index(n_track[b], s.cells[b]));
                expect.insert(expect.end(), blk.begin(), blk.end());
            }
            REQUIRE(cur.cells == expect);
            for (Case t : inst.f0.classify_cells(cur)) REQUIRE(t == (j + 1 == w.j ? Case::unfreeze : Case::simulate));
            cur = step(inst.f0.ca(), cur);
            s = step(inst.squad.ca, s);
        }
        CHECK(cur.cells == repeat(xc, blocks / 3));
        // F_1 recovers x as well.
        CHECK(iterate(inst.f1.ca(), w.x_tilde, w.j).cells == repeat(xc, blocks / 3));
    }
    CHECK(js[0] < js[1]);
    CHECK(js[1] < js[2]);
    CHECK_THROWS_AS(sigomeg_witness(inst, 0, make_config(kBinary, Word(15, 0)), 0), DomainError);
    CHECK_THROWS_AS(sigomeg_witness(inst, 0, make_config(kBinary, Word(14, 1)), 0), DomainError);
}

TEST_CASE("mutations change the rule") {
    const auto& inst = reference();
    const FreezingCode& c = *inst.code;
    CHECK(parse_mutation("kill-is-identity") == DeltaMutation::kill_is_identity);
    CHECK_THROWS_AS(parse_mutation("nope"), DomainError);
    Word g(55, 0);
    for (std::size_t i = 25; i < 30; ++i) g[i] = 1;
    CHECK(inst.f0.ca().eval(g) == 0);
    CHECK(inst.compile(0, DeltaMutation::kill_is_identity).ca().eval(g) == 1);
    std::vector<Word> zs(3, c.pool()[0]);
    PeriodicConfiguration th = make_config(kBinary, encode_blocks(c, zs, Word{0, 0, 0}, Word{0, 0, 0}));
    CHECK(step(inst.f0.ca(), th).cells == Word(42, 0));
    CHECK(step(inst.compile(0, DeltaMutation::ignore_theta).ca(), th) == th);
    PeriodicConfiguration mid = make_config(kBinary, encode_blocks(c, zs, Word{1, 1, 1}, Word{2, 1, 0}));
    CHECK(step(inst.f0.ca(), mid) != step(inst.compile(0, DeltaMutation::simulate_skip_squad).ca(), mid));
}

TEST_CASE("delta rule files resolve through the manifest") {
    const std::string dir = LIMCA_DATA_DIR;
    auto ca = load_rule(dir + "/f0.rule", delta_resolver());
    CHECK(ca.radius() == 27);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 500; ++t) {
        Word y = sample_window(reference().f0, 55, 27, rng);
        REQUIRE(ca.eval(y) == reference().f0.ca().eval(y));
    }
    CHECK(format_delta_rule(reference().f0, "reference.delta", 0) ==
          "alphabet: 2\nradius: 27\nkind: proc\nproc: delta\nmanifest: reference.delta\nwhich: 0\nmutation: none\n");
    KeyValues bad = KeyValues::parse("kind: proc\nproc: delta\nmanifest: reference.delta\nwhich: 3\n");
    CHECK_THROWS_AS(parse_rule(bad, dir, delta_resolver()), DomainError);
}

TEST_CASE("formula-mode Δ single step") {
    ReductionOptions opt;
    opt.mode = CodeMode::formula;
    opt.agree_samples = 0;
    auto inst = build_reduction_pair(eca(0), eca(0), eca(128), 0, build_squad(), opt);
    const FreezingCode& c = *inst.code;
    CHECK(format_word(inst.u_sigma) == "1111");
    const std::size_t k = c.k();
    Word z(k, 0);
    std::vector<Word> zs(3, z);
    PeriodicConfiguration x = make_config(kBinary, encode_blocks(c, zs, Word{1, 1, 1}, Word{0, 0, 0}));
    PeriodicConfiguration y = step(inst.f0.ca(), x);
    CHECK(y.cells == encode_blocks(c, zs, Word{1, 1, 1}, Word{0, 0, 0}));
    PeriodicConfiguration g = make_config(kBinary, encode_blocks(c, zs, Word{1, 1, 1}, Word(3, inst.squad.gamma)));
    CHECK(step(inst.f0.ca(), g).cells == Word(3 * k, 0));
}
