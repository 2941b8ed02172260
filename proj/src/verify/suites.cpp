#include "limca/verify/suites.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "limca/core/errors.hpp"
#include "limca/delta/reduction.hpp"
#include "limca/lang/limit.hpp"
#include "limca/verify/necklace.hpp"

namespace limca {

namespace {

constexpr std::size_t kListed = 10;

std::string default_manifest(bool nilpotent) {
    return join_path(LIMCA_DATA_DIR, nilpotent ? "prodnilp.delta" : "reference.delta");
}

struct Setup {
    std::string manifest;
    ReductionInstance inst;
};

Setup load(const SuiteParams& p, bool nilpotent = false) {
    Setup s;
    s.manifest = p.manifest.empty() ? default_manifest(nilpotent) : p.manifest;
    ReductionOptions opt;
    opt.agree_samples = 0;
    s.inst = load_reduction(s.manifest, opt);
    return s;
}

// Recurrent necklaces are expensive at period 2k and shared between suites.
const std::vector<Word>& recurrent_cached(const std::string& key, const CellularAutomaton& ca, std::size_t period) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const std::vector<Word>>> cache;
    const std::string full = key + "|" + std::to_string(period);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(full);
        if (it != cache.end()) return *it->second;
    }
    auto rec = std::make_shared<const std::vector<Word>>(recurrent_necklaces(ca, period));
    std::lock_guard<std::mutex> lock(mu);
    return *cache.emplace(full, rec).first->second;
}

std::vector<std::size_t> periods_of(const SuiteParams& p, std::size_t k) {
    if (!p.periods.empty()) return p.periods;
    return {k, 2 * k};
}

std::size_t samples_or(const SuiteParams& p, std::size_t fallback) { return p.samples ? p.samples : fallback; }

// Codewords at offsets start + t*k for t = -r_s..r_s inside w.
bool aligned_context(const FreezingCode& code, const Word& w, std::size_t start, int r_s) {
    const std::size_t k = code.k();
    for (int t = -r_s; t <= r_s; ++t) {
        const std::size_t at = start + static_cast<std::size_t>(t * static_cast<int>(k));
        if (at + k > w.size()) return false;
        if (!code.is_codeword(slice(w, at, at + k))) return false;
    }
    return true;
}

Word outputs(const CellularAutomaton& ca, const Word& x, std::size_t cells) {
    Word out(cells);
    for (std::size_t j = 0; j < cells; ++j) out[j] = ca.eval(x.data() + j);
    return out;
}

void suite_preinv0(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p);
    DeltaAutomaton d = s.inst.compile(0, p.mutation);
    const FreezingCode& code = *s.inst.code;
    const Word& u = s.inst.u_sigma;
    const std::size_t k = code.k(), r = static_cast<std::size_t>(d.radius());
    rep.samples = samples_or(p, 100000);
    std::mt19937_64 rng(p.seed);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < rep.samples; ++t) {
        Word x = sample_window(d, u.size() + 2 * r, r, rng);
        Word out = outputs(d.ca(), x, u.size());
        if (out != u) continue;
        ++hits;
        bool found = false;
        // Central codeword start i in (-k, 0], i.e. window position r+i.
        for (std::size_t i = 0; i < k && !found; ++i) found = aligned_context(code, x, r - i, d.r_s());
        if (!found) rep.violate(format_word(x), "E^(2r_S+1) aligned at some i in (-k,0]", format_word(out));
    }
    rep.fact("hits", std::to_string(hits));
    if (hits == 0) rep.budget_exhausted = true;
}

void suite_preinv(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p);
    DeltaAutomaton d = s.inst.compile(0, p.mutation);
    const FreezingCode& code = *s.inst.code;
    const std::size_t k = code.k(), r = static_cast<std::size_t>(d.radius());
    rep.samples = samples_or(p, 100000);
    std::mt19937_64 rng(p.seed);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < rep.samples; ++t) {
        Word x = sample_window(d, k + 2 * r, r, rng);
        Word out = outputs(d.ca(), x, k);
        if (!code.is_codeword(out)) continue;
        ++hits;
        if (!aligned_context(code, x, r, d.r_s()))
            rep.violate(format_word(x), "E^(2r_S+1) at -r_S k", format_word(out));
    }
    rep.fact("hits", std::to_string(hits));
    if (hits == 0) rep.budget_exhausted = true;
}

void suite_agree(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p);
    rep.samples = samples_or(p, 100000);
    DeltaAutomaton b = s.inst.compile(1, p.mutation);
    AgreementReport a = check_pair_agreement(s.inst.f0, b, rep.samples, p.seed);
    rep.fact("compared", std::to_string(a.compared));
    for (const Word& y : a.examples)
        rep.violate(format_word(y), std::to_string(s.inst.f0.ca().eval(y)), std::to_string(b.ca().eval(y)));
    rep.violation_count = a.disagreements;
    if (a.compared == 0) rep.budget_exhausted = true;
}

std::string instance_key(const Setup& s, const SuiteParams& p, bool squad_variant) {
    return s.manifest + "|" + mutation_name(p.mutation) + "|" + (squad_variant ? "no-isolation" : "squad");
}

void suite_ssgamma(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p);
    DeltaAutomaton d = s.inst.compile(0, p.mutation);
    const FreezingCode& code = *s.inst.code;
    std::size_t total = 0;
    for (std::size_t period : periods_of(p, code.k())) {
        const auto& rec = recurrent_cached(instance_key(s, p, false), d.ca(), period);
        std::size_t in_sigma = 0, in_lambda = 0;
        for (const Word& x : rec) {
            if (s.inst.sigma.contains_periodic(x)) ++in_sigma;
            else if (is_lambda(code, make_config(kBinary, x))) ++in_lambda;
            else rep.violate(format_word(x), "recurrent configuration in Σ ∪ Λ", "neither");
        }
        total += binary_necklaces(period).size();
        const std::string key = "period " + std::to_string(period);
        rep.fact(key + " recurrent", std::to_string(rec.size()));
        rep.fact(key + " in_sigma", std::to_string(in_sigma));
        rep.fact(key + " in_lambda", std::to_string(in_lambda));
    }
    rep.samples = total;
}

void suite_prodnilp(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p, true);
    auto verdict = nilpotency_probe(s.inst.n_ca, s.inst.theta, 4, 8);
    rep.fact("n", format_verdict(verdict));
    if (verdict.kind != Nilpotency::nilpotent) throw DomainError("prodnilp needs a nilpotent N");
    DeltaAutomaton d = s.inst.compile(0, p.mutation);
    const FreezingCode& code = *s.inst.code;
    std::size_t total = 0;
    for (std::size_t period : periods_of(p, code.k())) {
        const auto& rec = recurrent_cached(instance_key(s, p, false), d.ca(), period);
        std::set<Word> g_rec;
        for (const Word& x : recurrent_cached(s.manifest + "|g0", s.inst.g0, period))
            if (s.inst.sigma.contains_periodic(x)) g_rec.insert(x);
        std::set<Word> d_rec;
        for (const Word& x : rec) {
            d_rec.insert(x);
            if (!codeword_positions(code, x).empty())
                rep.violate(format_word(x), "no codeword in a recurrent configuration", "codeword");
            else if (!g_rec.count(x))
                rep.violate(format_word(x), "recurrent for G on Σ", "recurrent for Δ only");
        }
        for (const Word& x : g_rec)
            if (!d_rec.count(x)) rep.violate(format_word(x), "recurrent for Δ", "recurrent for G only");
        total += binary_necklaces(period).size();
        const std::string key = "period " + std::to_string(period);
        rep.fact(key + " recurrent_delta", std::to_string(rec.size()));
        rep.fact(key + " recurrent_g", std::to_string(g_rec.size()));
    }
    rep.samples = total;
}

void suite_fire(const SuiteParams& p, SuiteReport& rep) {
    SquadAutomaton sq = build_squad();
    if (p.squad_without_isolation) sq = squad_without_gamma_isolation(sq);
    if (p.depth < 1 || p.max_span < 1) throw DomainError("fire needs depth >= 1 and max_span >= 1");
    const int b_size = sq.ca.alphabet().size;
    // Squad level: no word γ B^(d-1) b with b outside {γ, κ} at depth p.depth.
    WordAutomaton a;
    try {
        a = iterated_image(sq.ca, p.depth);
    } catch (const Inconclusive&) {
        rep.budget_exhausted = true;
        return;
    }
    const int probe_to = std::max(p.max_span, 16);
    int first_reachable = 0;
    std::set<int> cur;
    for (int q : a.initial())
        for (int t : a.targets(q, sq.gamma)) cur.insert(t);
    for (int span = 1; span <= probe_to; ++span) {
        if (span > 1) {
            std::set<int> nx;
            for (int q : cur)
                for (int b = 0; b < b_size; ++b)
                    for (int t : a.targets(q, static_cast<Symbol>(b))) nx.insert(t);
            cur.swap(nx);
        }
        bool hit = false;
        for (int q : cur)
            for (int b = 0; b < b_size && !hit; ++b) {
                if (b == sq.gamma || b == sq.kappa) continue;
                for (int t : a.targets(q, static_cast<Symbol>(b))) hit = hit || a.accepting(t);
            }
        if (hit && first_reachable == 0) first_reachable = span;
        if (hit && span <= p.max_span)
            rep.violate("span " + std::to_string(span), "no γ B^" + std::to_string(span - 1) + " b at depth " +
                                                          std::to_string(p.depth),
                        "reachable");
    }
    rep.fact("depth", std::to_string(p.depth));
    rep.fact("max_span", std::to_string(p.max_span));
    rep.fact("image_states", std::to_string(a.states()));
    rep.fact("first_reachable_span", first_reachable ? std::to_string(first_reachable) : "none");
    // Δ level: recurrent configurations never carry a γ codeword together
    // with a codeword whose squad state is outside {γ, κ}.
    Setup s = load(p);
    DeltaAutomaton d = build_delta(PartialCa{s.inst.g0, s.inst.sigma}, s.inst.n_ca, s.inst.theta, sq, s.inst.code,
                                   p.mutation);
    const FreezingCode& code = *s.inst.code;
    std::size_t total = static_cast<std::size_t>(probe_to);
    for (std::size_t period : periods_of(p, code.k())) {
        const auto& rec = recurrent_cached(instance_key(s, p, p.squad_without_isolation), d.ca(), period);
        for (const Word& x : rec) {
            bool gamma = false, other = false;
            for (std::size_t pos : codeword_positions(code, x)) {
                Word w(code.k());
                for (std::size_t i = 0; i < w.size(); ++i) w[i] = x[(pos + i) % x.size()];
                const int b = code.coding().split(code.decode(w).symbol).second;
                gamma = gamma || b == sq.gamma;
                other = other || (b != sq.gamma && b != sq.kappa);
            }
            if (gamma && other) rep.violate(format_word(x), "squad states in {γ,κ} beside γ", "other state");
        }
        total += binary_necklaces(period).size();
        rep.fact("period " + std::to_string(period) + " recurrent", std::to_string(rec.size()));
    }
    rep.samples = total;
}

void suite_sigomeg(const SuiteParams& p, SuiteReport& rep) {
    Setup s = load(p);
    DeltaAutomaton d = s.inst.compile(0, p.mutation);
    const FreezingCode& code = *s.inst.code;
    if (p.count < 1) throw DomainError("sigomeg needs count >= 1");
    rep.samples = static_cast<std::size_t>(p.count);
    std::mt19937_64 rng(p.seed);
    std::set<std::size_t> js;
    std::string jlist;
    for (int idx = 0; idx < p.count; ++idx) {
        Word x;
        do {
            x.clear();
            const std::size_t blocks = 1 + rng() % 3;
            for (std::size_t b = 0; b < blocks; ++b) {
                Word z = random_z(code, rng);
                x.insert(x.end(), z.begin(), z.end());
            }
        } while (!s.inst.sigma.contains_periodic(x));
        SigomegWitness w = sigomeg_witness(s.inst, 0, make_config(kBinary, x), idx);
        PeriodicConfiguration got = iterate(d.ca(), w.x_tilde, w.j);
        Word expect = repeat(x, w.x_tilde.period() / x.size());
        if (got.cells != expect) rep.violate(format_word(w.x_tilde.cells), format_word(expect), format_word(got.cells));
        js.insert(w.j);
        jlist += (jlist.empty() ? "" : " ") + std::to_string(w.j);
    }
    rep.fact("j", jlist);
    if (js.size() != static_cast<std::size_t>(p.count))
        rep.violate("J values " + jlist, "distinct", std::to_string(js.size()) + " distinct");
}

void suite_surjectivity(const SuiteParams& p, SuiteReport& rep) {
    (void)p;
    rep.samples = 256;
    std::size_t surjective = 0;
    for (int rule = 0; rule < 256; ++rule) {
        const bool a = is_surjective(eca(rule)), b = balance_oracle(eca(rule));
        surjective += a ? 1 : 0;
        if (a != b) rep.violate("ECA " + std::to_string(rule), b ? "surjective" : "not surjective",
                                a ? "surjective" : "not surjective");
    }
    rep.fact("surjective", std::to_string(surjective));
    auto orphan = shortest_orphan(eca(128));
    const std::string o = orphan ? format_word(*orphan) : "none";
    rep.fact("orphan ECA 128", o);
    if (o != "101") rep.violate("orphan ECA 128", "101", o);
    // Exhaustive preimages: 101 is the only length-3 orphan and every
    // shorter word has a preimage.
    for (std::size_t len = 1; len <= 3; ++len) {
        std::set<Word> image;
        for (std::size_t v = 0; v < (std::size_t{1} << (len + 2)); ++v)
            image.insert(apply_local(eca(128), window_at(kBinary, v, len + 2)));
        for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
            Word w = window_at(kBinary, v, len);
            const bool expect = format_word(w) != "101";
            if ((image.count(w) > 0) != expect)
                rep.violate(format_word(w), expect ? "preimage" : "orphan", expect ? "orphan" : "preimage");
        }
    }
}

void suite_freezing(const SuiteParams& p, SuiteReport& rep) {
    FreezingReport f;
    std::size_t k = 0;
    if (p.code == "toy") {
        Setup s = load(p);
        f = check_code_freezing(*s.inst.code);
        k = s.inst.code->k();
    } else if (p.code == "formula") {
        FreezingCode code = build_code(parse_word("011"), SymbolCoding(1, 2));
        f = check_code_freezing(code, samples_or(p, 10000), p.seed);
        k = code.k();
        rep.fact("m n k", std::to_string(code.m()) + " " + std::to_string(code.n()) + " " + std::to_string(code.k()));
    } else {
        throw DomainError("unknown code '" + p.code + "'");
    }
    rep.samples = f.pairs_checked;
    rep.fact("code", p.code);
    rep.fact("exhaustive", f.sampled ? "no" : "yes");
    rep.fact("offsets", "1.." + std::to_string(k - 1));
    for (const auto& [offset, n] : f.by_offset) rep.fact("overlaps at offset " + std::to_string(offset), std::to_string(n));
    if (f.violations) {
        rep.violate("pair " + std::to_string(f.first) + " " + std::to_string(f.second), "no overlap",
                    "overlap at offset " + std::to_string(f.offset));
        rep.violation_count = f.violations;
    }
}

void suite_roundtrip(const SuiteParams& p, SuiteReport& rep) {
    std::mt19937_64 rng(p.seed);
    if (p.code == "toy") {
        Setup s = load(p);
        const FreezingCode& code = *s.inst.code;
        std::set<Word> table(code.table().begin(), code.table().end());
        std::size_t n = 0;
        for (const Word& z : code.pool())
            for (int c = 0; c < code.coding().size(); ++c, ++n) {
                Decoded back = code.decode(code.encode(z, c));
                if (!(back == Decoded{z, c}))
                    rep.violate(format_word(z) + " " + std::to_string(c), "round trip", format_word(back.z));
            }
        const std::size_t extra = samples_or(p, 10000);
        for (std::size_t t = 0; t < extra; ++t) {
            Word w(code.k());
            for (Symbol& c : w) c = static_cast<Symbol>(rng() & 1);
            if (code.is_codeword(w) != (table.count(w) > 0)) rep.violate(format_word(w), "decode iff in table", "mismatch");
        }
        rep.samples = n + extra;
    } else if (p.code == "formula") {
        FreezingCode code = build_code(parse_word("011"), SymbolCoding(1, 2));
        rep.samples = samples_or(p, 1000);
        for (std::size_t t = 0; t < rep.samples; ++t) {
            Word z = random_z(code, rng);
            const int c = static_cast<int>(rng() % static_cast<unsigned>(code.coding().size()));
            Word w = code.encode(z, c);
            auto back = code.try_decode(w);
            if (!back || !(*back == Decoded{z, c}))
                rep.violate(format_word(z) + " " + std::to_string(c), "round trip", back ? format_word(back->z) : "reject");
        }
    } else {
        throw DomainError("unknown code '" + p.code + "'");
    }
    rep.fact("code", p.code);
}

void suite_squad(const SuiteParams& p, SuiteReport& rep) {
    SquadAutomaton sq = build_squad();
    if (p.squad_without_isolation) sq = squad_without_gamma_isolation(sq);
    if (p.max_n < 2) throw DomainError("max_n must be >= 2");
    std::size_t prev = 0;
    std::string times;
    for (int n = 2; n <= p.max_n; ++n) {
        try {
            SquadRun run = run_segment(sq, n, 4 * static_cast<std::size_t>(n) + 16);
            if (run.early_gamma || run.early_kappa)
                rep.violate("n=" + std::to_string(n), "no γ/κ before firing", run.early_gamma ? "early γ" : "early κ");
            if (run.fire_time <= prev)
                rep.violate("n=" + std::to_string(n), "t(n) > " + std::to_string(prev), std::to_string(run.fire_time));
            prev = run.fire_time;
            times += (times.empty() ? "" : " ") + std::to_string(run.fire_time);
        } catch (const IntegrityError& e) {
            rep.violate("n=" + std::to_string(n), "fires", e.what());
        }
    }
    rep.fact("t(2..max_n)", times);
    std::size_t examined = 0;
    for (std::size_t period = 1; period <= 4; ++period) {
        LimitGammaReport l = check_limit_gamma(sq, period);
        examined += l.configurations;
        rep.fact("period " + std::to_string(period) + " recurrent", std::to_string(l.recurrent));
        rep.fact("period " + std::to_string(period) + " recurrent_gamma", std::to_string(l.recurrent_gamma));
        for (const Word& w : l.violations) rep.violate(format_word(w), "in {κ,γ}^P", "other state");
    }
    rep.samples = static_cast<std::size_t>(p.max_n - 1) + examined;
}

using SuiteFn = void (*)(const SuiteParams&, SuiteReport&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r = {
        {"freezing", suite_freezing}, {"code-roundtrip", suite_roundtrip}, {"squad", suite_squad},
        {"preinv0", suite_preinv0},   {"preinv", suite_preinv},           {"fire", suite_fire},
        {"ssgamma", suite_ssgamma},   {"prodnilp", suite_prodnilp},       {"sigomeg", suite_sigomeg},
        {"surjectivity", suite_surjectivity}, {"reduction-agree", suite_agree}};
    return r;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void SuiteReport::violate(std::string input, std::string expected, std::string got) {
    ++violation_count;
    if (violations.size() < kListed) violations.push_back({std::move(input), std::move(expected), std::move(got)});
}

void SuiteReport::finish() {
    if (violation_count > 0) verdict = Verdict::fail;
    else if (budget_exhausted) verdict = Verdict::inconclusive;
    else verdict = Verdict::pass;
}

std::string SuiteReport::str() const {
    std::ostringstream out;
    out << "suite: " << suite << "\nseed: " << seed << "\nsamples: " << samples << '\n';
    for (const auto& [k, v] : facts) out << k << ": " << v << '\n';
    out << "violations: " << violation_count << '\n';
    for (const Violation& v : violations)
        out << "violation: input=" << v.input << " expected=" << v.expected << " got=" << v.got << '\n';
    if (budget_exhausted) out << "budget: exhausted\n";
    out << "verdict: " << verdict_name(verdict) << '\n';
    return out.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"freezing", "code-roundtrip", "squad",   "preinv0",
                                                   "preinv",   "fire",           "ssgamma", "prodnilp",
                                                   "sigomeg",  "surjectivity",   "reduction-agree"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
    auto it = registry().find(name);
    if (it == registry().end()) throw DomainError("unknown suite '" + name + "'");
    for (std::size_t period : params.periods)
        if (period < 1 || period > 32) throw DomainError("periods must be in 1..32");
    SuiteReport rep;
    rep.suite = name;
    rep.seed = params.seed;
    const auto t0 = std::chrono::steady_clock::now();
    it->second(params, rep);
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.finish();
    return rep;
}

}  // namespace limca
