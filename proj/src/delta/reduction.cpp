#include "limca/delta/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "limca/core/errors.hpp"
#include "limca/lang/limit.hpp"

namespace limca {

QuiescentSquare square_quiescent(const CellularAutomaton& g) {
    if (!(g.alphabet() == kBinary)) throw DomainError("square_quiescent needs a binary rule");
    for (Symbol q : {Symbol{0}, Symbol{1}})
        if (is_quiescent(g, q)) return {g, q, false};
    CellularAutomaton g2 = power(g, 2);
    for (Symbol q : {Symbol{0}, Symbol{1}})
        if (is_quiescent(g2, q)) return {g2, q, true};
    throw IntegrityError("square of a binary rule without a quiescent state");
}

Word complement(const Word& w) {
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<Symbol>(1 - w[i]);
    return out;
}

CellularAutomaton complement_rule(const CellularAutomaton& g) {
    if (!(g.alphabet() == kBinary)) throw DomainError("complement needs a binary rule");
    CellularAutomaton t = to_table(g);
    const std::size_t n = t.table().size();
    std::vector<Symbol> table(n);
    // Complementing every cell of a window reverses its index.
    for (std::size_t i = 0; i < n; ++i) table[i] = static_cast<Symbol>(1 - t.table()[n - 1 - i]);
    return table_rule(kBinary, g.radius(), std::move(table));
}

DeltaAutomaton ReductionInstance::compile(int which, DeltaMutation m) const {
    const CellularAutomaton& g = which == 0 ? g0 : g1;
    return build_delta(PartialCa{g, sigma}, n_ca, theta, squad, code, m);
}

ReductionInstance build_reduction_pair(const CellularAutomaton& g0, const CellularAutomaton& g1,
                                       const CellularAutomaton& n_ca, Symbol theta, const SquadAutomaton& squad,
                                       const ReductionOptions& options) {
    if (!(g0.alphabet() == kBinary) || !(g1.alphabet() == kBinary)) throw DomainError("G_0 and G_1 must be binary");
    if (!is_spreading(n_ca, theta)) throw DomainError("θ is not spreading for N");
    ReductionInstance inst;
    int q = -1;
    for (Symbol s : {Symbol{0}, Symbol{1}})
        if (q < 0 && is_quiescent(g0, s) && is_quiescent(g1, s)) q = s;
    if (q < 0) throw DomainError("G_0 and G_1 share no quiescent state");
    inst.complemented = q == 1;
    inst.g0 = inst.complemented ? complement_rule(g0) : to_table(g0);
    inst.g1 = inst.complemented ? complement_rule(g1) : to_table(g1);
    auto o0 = shortest_orphan(inst.g0);
    auto o1 = shortest_orphan(inst.g1);
    if (!o0 || !o1) throw DomainError("G_0 and G_1 must both be non-surjective");
    inst.u0 = *o0;
    inst.u1 = *o1;
    inst.u_sigma = Word{1};
    inst.u_sigma.insert(inst.u_sigma.end(), inst.u0.begin(), inst.u0.end());
    inst.u_sigma.insert(inst.u_sigma.end(), inst.u1.begin(), inst.u1.end());
    inst.u_sigma.push_back(1);
    inst.sigma = Sft(kBinary, {inst.u_sigma});
    inst.n_ca = n_ca;
    inst.theta = theta;
    inst.squad = squad;
    SymbolCoding coding(n_ca.alphabet().size, squad.ca.alphabet().size);
    if (options.code) {
        if (options.code->u_sigma() != inst.u_sigma || options.code->coding().a_size() != coding.a_size() ||
            options.code->coding().b_size() != coding.b_size())
            throw DomainError("supplied code does not match u_Σ and C");
        inst.code = options.code;
    } else if (options.mode == CodeMode::formula) {
        inst.code = std::make_shared<const FreezingCode>(build_code(inst.u_sigma, coding));
    } else {
        const std::size_t k = options.toy_k;
        std::vector<Word> pool = options.pool;
        if (pool.empty()) {
            Word z0(k, 0), z1(k, 0);
            z1[k / 2] = 1;
            pool = {z0, z1};
        }
        inst.code = std::make_shared<const FreezingCode>(search_toy_code(inst.sigma, inst.u_sigma, pool, coding, k));
    }
    inst.f0 = inst.compile(0, DeltaMutation::none);
    inst.f1 = inst.compile(1, DeltaMutation::none);
    if (options.agree_samples > 0) {
        auto rep = check_pair_agreement(inst.f0, inst.f1, options.agree_samples, options.seed);
        if (rep.disagreements != 0) throw IntegrityError("F_0 and F_1 differ outside case (1)");
    }
    return inst;
}

AgreementReport check_pair_agreement(const DeltaAutomaton& a, const DeltaAutomaton& b, std::size_t samples,
                                     std::uint64_t seed) {
    if (a.radius() != b.radius()) throw DomainError("radius mismatch");
    AgreementReport rep;
    rep.samples = samples;
    const std::size_t len = 2 * static_cast<std::size_t>(a.radius()) + 1;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
        Word y = sample_window(a, len, static_cast<std::size_t>(a.radius()), rng);
        CaseTag ta = a.classify(y), tb = b.classify(y);
        if (ta.tag == Case::sigma || tb.tag == Case::sigma) continue;
        ++rep.compared;
        if (ta.output != tb.output) {
            ++rep.disagreements;
            if (rep.examples.size() < 5) rep.examples.push_back(y);
        }
    }
    return rep;
}

NilpotencyVerdict nilpotency_probe(const CellularAutomaton& n, Symbol theta, std::size_t width, std::size_t depth) {
    if (theta >= n.alphabet().size || !is_spreading(n, theta)) throw DomainError("θ is not spreading for N");
    NilpotencyVerdict v;
    const int a = n.alphabet().size;
    for (std::size_t t = 1; t <= depth; ++t) {
        bool only_theta = true;
        for (int s = 0; s < a && only_theta; ++s)
            if (s != theta && word_reachable_at_depth(n, Word{static_cast<Symbol>(s)}, static_cast<int>(t)))
                only_theta = false;
        if (only_theta) {
            v.kind = Nilpotency::nilpotent;
            v.steps = t;
            return v;
        }
    }
    for (std::size_t p = 1; p <= width; ++p) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < p && total <= (std::size_t{1} << 20); ++i) total *= static_cast<std::size_t>(a);
        if (total > (std::size_t{1} << 20)) break;
        for (std::size_t idx = 0; idx < total; ++idx) {
            PeriodicConfiguration x = make_config(n.alphabet(), window_at(n.alphabet(), idx, p));
            OrbitSummary orbit = eventual_cycle(n, x, std::size_t{1} << 16);
            bool free = true;
            for (const auto& c : orbit.cycle)
                for (Symbol s : c.cells) free = free && s != theta;
            if (free) {
                v.kind = Nilpotency::non_nilpotent;
                v.witness = x.cells;
                return v;
            }
        }
    }
    return v;
}

std::string format_verdict(const NilpotencyVerdict& v) {
    switch (v.kind) {
        case Nilpotency::nilpotent: return "nilpotent(" + std::to_string(v.steps) + ")";
        case Nilpotency::non_nilpotent: return "non_nilpotent(inf " + format_word(v.witness) + " inf)";
        case Nilpotency::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

bool decide_nilpotency_with_oracle(const ReductionInstance& inst,
                                   const std::function<bool(const CellularAutomaton&)>& oracle) {
    return oracle(inst.f0.ca()) && !oracle(inst.f1.ca());
}

SigomegWitness sigomeg_witness(const ReductionInstance& inst, int which, const PeriodicConfiguration& x, int idx,
                               const Word& y_in) {
    const FreezingCode& code = *inst.code;
    const std::size_t k = code.k();
    if (!(x.alphabet == kBinary) || x.period() == 0 || x.period() % k != 0)
        throw DomainError("x must be binary with period a multiple of k");
    if (!inst.sigma.contains_periodic(x.cells)) throw DomainError("x is not in Σ");
    if (idx < 0) throw DomainError("idx must be non-negative");
    const std::size_t xb = x.period() / k;
    std::vector<Word> zs(xb);
    for (std::size_t i = 0; i < xb; ++i) {
        zs[i] = slice(x.cells, i * k, (i + 1) * k);
        if (!code.accepts_z(zs[i])) throw DomainError("block of x not accepted by the code");
    }
    Word y = y_in;
    if (y.empty()) {
        auto v = nilpotency_probe(inst.n_ca, inst.theta, 4, 0);
        if (v.kind != Nilpotency::non_nilpotent) throw DomainError("no θ-free periodic point for N");
        y = v.witness;
    }
    for (Symbol s : y)
        if (s == inst.theta || s >= inst.n_ca.alphabet().size) throw DomainError("y must avoid θ");
    const int n = idx + 2;
    const SquadAutomaton& s = inst.squad;
    SquadRun run = run_segment(s, n, 4 * static_cast<std::size_t>(n) + 16);
    const Word seed = seed_segment(s, n).cells;
    std::size_t blocks = std::lcm(std::lcm(xb, seed.size()), y.size());
    Word cells;
    cells.reserve(blocks * k);
    for (std::size_t b = 0; b < blocks; ++b) {
        Word w = code.encode(zs[b % xb], code.coding().index(y[b % y.size()], seed[b % seed.size()]));
        cells.insert(cells.end(), w.begin(), w.end());
    }
    (void)which;
    SigomegWitness out;
    out.x_tilde = make_config(kBinary, std::move(cells));
    out.j = run.fire_time + 1;
    out.segment = n;
    return out;
}

ReductionInstance load_reduction(const std::string& manifest_path, ReductionOptions options) {
    KeyValues kv = KeyValues::load(manifest_path);
    const std::string dir = dir_of(manifest_path);
    CellularAutomaton g0 = load_rule(join_path(dir, kv.get("g0")));
    CellularAutomaton g1 = load_rule(join_path(dir, kv.get("g1")));
    CellularAutomaton n = load_rule(join_path(dir, kv.get("n")));
    const long long theta = kv.get_int("theta");
    if (theta < 0 || theta >= n.alphabet().size) throw DomainError("θ outside N's alphabet");
    SquadAutomaton squad = load_squad(join_path(dir, kv.get("squad")));
    if (kv.has("code") && !options.code) {
        options.code = std::make_shared<const FreezingCode>(FreezingCode::load(join_path(dir, kv.get("code"))));
    } else if (kv.has("mode")) {
        const std::string mode = kv.get("mode");
        if (mode == "toy") options.mode = CodeMode::toy;
        else if (mode == "formula") options.mode = CodeMode::formula;
        else throw DomainError("unknown code mode '" + mode + "'");
    }
    if (kv.has("toy_k")) options.toy_k = static_cast<std::size_t>(kv.get_int("toy_k"));
    return build_reduction_pair(g0, g1, n, static_cast<Symbol>(theta), squad, options);
}

ProcResolver delta_resolver() {
    return [](const std::string& name, const KeyValues& kv, const std::string& dir, CellularAutomaton& out) {
        if (name != "delta") return false;
        ReductionInstance inst = load_reduction(join_path(dir, kv.get("manifest")));
        const long long which = kv.has("which") ? kv.get_int("which") : 0;
        if (which != 0 && which != 1) throw DomainError("which must be 0 or 1");
        DeltaMutation m = parse_mutation(kv.get_or("mutation", "none"));
        out = inst.compile(static_cast<int>(which), m).ca();
        return true;
    };
}

std::string format_delta_rule(const DeltaAutomaton& d, const std::string& manifest, int which) {
    return "alphabet: 2\nradius: " + std::to_string(d.radius()) + "\nkind: proc\nproc: delta\nmanifest: " + manifest +
           "\nwhich: " + std::to_string(which) + "\nmutation: " + mutation_name(d.mutation()) + "\n";
}

}  // namespace limca
