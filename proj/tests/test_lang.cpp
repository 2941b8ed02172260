#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "limca/core/errors.hpp"
#include "limca/lang/limit.hpp"
#include "limca/lang/ranked.hpp"

using namespace limca;

namespace {

Word bits(std::uint64_t v, std::size_t len) {
    Word w(len);
    for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<Symbol>((v >> (len - 1 - i)) & 1);
    return w;
}

// Image words of length n by brute force over all preimages.
std::set<Word> brute_image(const CellularAutomaton& ca, std::size_t n) {
    std::set<Word> img;
    const std::size_t len = n + ca.window() - 1;
    for (std::uint64_t v = 0; v < (1ull << len); ++v) img.insert(apply_local(ca, bits(v, len)));
    return img;
}

bool naive_avoids(const Word& w, const std::vector<Word>& forbidden) {
    for (const Word& f : forbidden)
        if (contains_factor(w, f)) return false;
    return true;
}

Sft avoid(const char* u) { return Sft(kBinary, {parse_word(u)}); }

}  // namespace

TEST_CASE("language slices") {
    RankedLanguage l(avoid("11"), 3);
    CHECK(l.count() == 5);
    std::vector<std::string> got;
    for (const Word& w : l.enumerate()) got.push_back(format_word(w));
    CHECK(got == std::vector<std::string>{"000", "001", "010", "100", "101"});
    CHECK(RankedLanguage(Sft::full(kBinary), 4).count() == 16);
    CHECK(RankedLanguage(Sft(kBinary, {parse_word("0"), parse_word("1")}), 1).count() == 0);
    CHECK(l.rank(parse_word("000")) == 0);
    CHECK(format_word(l.unrank(4)) == "101");
    CHECK_THROWS_AS(l.rank(parse_word("110")), DomainError);
    CHECK_THROWS_AS(l.unrank(5), DomainError);
}

TEST_CASE("rank/unrank against sorted brute-force enumeration, k <= 12") {
    std::vector<std::vector<Word>> sets = {
        {parse_word("11")}, {parse_word("11111")}, {parse_word("101"), parse_word("0000")}, {}};
    for (const auto& forbidden : sets) {
        Sft sft(kBinary, forbidden);
        for (std::size_t k = 1; k <= 12; ++k) {
            std::vector<Word> ref;
            for (std::uint64_t v = 0; v < (1u << k); ++v)
                if (naive_avoids(bits(v, k), forbidden)) ref.push_back(bits(v, k));
            RankedLanguage l(sft, k);
            REQUIRE(l.count() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                REQUIRE(l.unrank(BigInt(i)) == ref[i]);
                REQUIRE(l.rank(ref[i]) == i);
            }
        }
    }
}

TEST_CASE("rank/unrank round trip at k = 30 and big counts") {
    RankedLanguage l(avoid("11111"), 30);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
        BigInt i = BigInt(rng()) % l.count();
        Word w = l.unrank(i);
        REQUIRE(l.contains(w));
        REQUIRE(l.rank(w) == i);
    }
    // Counts beyond 64 bits stay exact.
    RankedLanguage big(avoid("011"), 111);
    CHECK(big.count() > BigInt(1) << 64);
    Word top = big.unrank(big.count() - 1);
    CHECK(big.rank(top) == big.count() - 1);
}

TEST_CASE("sft membership") {
    Sft s = avoid("11111");
    CHECK(s.contains(parse_word("1111011110")));
    CHECK_FALSE(s.contains(parse_word("0111110")));
    CHECK(s.order() == 5);
    // 111011 avoids 11111 but its repetition does not.
    CHECK(s.contains(parse_word("111011")));
    CHECK_FALSE(s.contains_periodic(parse_word("111011")));
    CHECK(s.contains_periodic(parse_word("11101")));
    CHECK(Sft::parse(KeyValues::parse(s.str())).forbidden() == s.forbidden());
}

TEST_CASE("image language examples") {
    auto full = sft_automaton(Sft::full(kBinary));
    auto img0 = image_language(full, eca(0));
    CHECK(img0.accepts(parse_word("0000")));
    CHECK_FALSE(img0.accepts(parse_word("0010")));
    auto img128 = image_language(full, eca(128));
    CHECK_FALSE(img128.accepts(parse_word("101")));
    CHECK_FALSE(img128.accepts(parse_word("1001")));
    CHECK(img128.accepts(parse_word("10001")));
    auto img90 = image_language(full, eca(90));
    for (std::uint64_t v = 0; v < 256; ++v) CHECK(img90.accepts(bits(v, 8)));
}

TEST_CASE("image automaton agrees with brute-force images on all ECA") {
    auto full = sft_automaton(Sft::full(kBinary));
    for (int rule = 0; rule < 256; ++rule) {
        auto img = image_language(full, eca(rule));
        for (std::size_t n = 1; n <= 6; ++n) {
            auto ref = brute_image(eca(rule), n);
            for (std::uint64_t v = 0; v < (1u << n); ++v)
                REQUIRE(img.accepts(bits(v, n)) == (ref.count(bits(v, n)) > 0));
        }
    }
}

TEST_CASE("surjectivity and orphans") {
    CHECK(is_surjective(eca(90)));
    CHECK_FALSE(is_surjective(eca(128)));
    CHECK(is_surjective(identity_rule(kBinary)));
    CHECK(format_word(*shortest_orphan(eca(128))) == "101");
    CHECK(format_word(*shortest_orphan(eca(0))) == "1");
    CHECK_FALSE(shortest_orphan(eca(90)).has_value());
    CHECK_THROWS_AS(is_surjective(power(eca(90), 2, 0)), Unsupported);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(balanced_at(eca(90), static_cast<int>(n)));
    CHECK(balance_certificate_length(eca(30)) == 16);
}

TEST_CASE("surjectivity agrees with the balance oracle on all 256 ECA") {
    for (int rule = 0; rule < 256; ++rule) REQUIRE(is_surjective(eca(rule)) == balance_oracle(eca(rule)));
}

TEST_CASE("orphans are minimal, checked by exhaustive preimage search") {
    for (int rule = 0; rule < 256; ++rule) {
        auto o = shortest_orphan(eca(rule));
        if (!o || o->size() > 6) continue;
        auto img = brute_image(eca(rule), o->size());
        REQUIRE(img.count(*o) == 0);
        // Every word of the same length that precedes it, and every shorter
        // word, has a preimage.
        for (std::uint64_t v = 0; v < (1u << o->size()); ++v) {
            Word w = bits(v, o->size());
            if (w < *o) REQUIRE(img.count(w) == 1);
        }
        for (std::size_t n = 1; n < o->size(); ++n) REQUIRE(brute_image(eca(rule), n).size() == (1u << n));
    }
}

TEST_CASE("reachability at depth") {
    CHECK_FALSE(word_reachable_at_depth(eca(0), parse_word("1"), 1));
    CHECK_FALSE(word_reachable_at_depth(eca(128), parse_word("101"), 1));
    CHECK(word_reachable_at_depth(eca(128), parse_word("101"), 0));
    CHECK(word_reachable_at_depth(eca(30), parse_word("1110"), 3));
    // Agrees with the iterated image automaton.
    for (int rule : {4, 18, 30, 54, 110, 128, 184}) {
        for (int d = 0; d <= 3; ++d) {
            auto a = iterated_image(eca(rule), d);
            for (std::uint64_t v = 0; v < 32; ++v)
                REQUIRE(a.accepts(bits(v, 5)) == word_reachable_at_depth(eca(rule), bits(v, 5), d));
        }
    }
}

TEST_CASE("recurrent periodic configurations") {
    auto r = recurrent_periodic(eca(128), 3);
    REQUIRE(r.size() == 2);
    CHECK(format_word(r[0]) == "000");
    CHECK(format_word(r[1]) == "111");
    r = recurrent_periodic(eca(90), 2);
    REQUIRE(r.size() == 1);
    CHECK(format_word(r[0]) == "00");
    CHECK(limit_outer(eca(0), 1, 1).outer == std::vector<Word>{parse_word("0")});
}

TEST_CASE("outer approximations shrink and contain the inner slice") {
    for (int rule : {4, 18, 30, 54, 90, 110, 128, 184, 232}) {
        std::vector<Word> prev;
        for (int d = 0; d <= 4; ++d) {
            LimitApprox a = limit_approx(eca(rule), 5, d, 8);
            if (d > 0) REQUIRE(std::includes(prev.begin(), prev.end(), a.outer.begin(), a.outer.end()));
            REQUIRE(std::includes(a.outer.begin(), a.outer.end(), a.inner.begin(), a.inner.end()));
            prev = a.outer;
        }
    }
}

TEST_CASE("determinize and minimize") {
    // NFA for words ending in 1, determinized and minimized to 2 states.
    WordAutomaton n(kBinary, 2);
    n.set_initial(0);
    n.add_edge(0, 0, 0);
    n.add_edge(0, 1, 0);
    n.add_edge(0, 1, 1);
    n.set_accepting(1);
    auto d = n.determinize().minimize();
    CHECK(d.is_deterministic());
    CHECK(d.states() == 2);
    for (std::uint64_t v = 0; v < 64; ++v) CHECK(d.accepts(bits(v, 6)) == (v & 1));
    CHECK_THROWS_AS(n.determinize(1), Inconclusive);
}
