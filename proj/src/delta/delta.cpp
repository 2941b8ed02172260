#include "limca/delta/delta.hpp"

#include <algorithm>
#include <map>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

constexpr std::size_t kMaxLookupK = 24;

}  // namespace

std::string mutation_name(DeltaMutation m) {
    switch (m) {
        case DeltaMutation::none: return "none";
        case DeltaMutation::kill_is_identity: return "kill-is-identity";
        case DeltaMutation::ignore_theta: return "ignore-theta";
        case DeltaMutation::unfreeze_phase_shift: return "unfreeze-phase-shift";
        case DeltaMutation::simulate_skip_squad: return "simulate-skip-squad";
    }
    return "none";
}

DeltaMutation parse_mutation(const std::string& name) {
    for (DeltaMutation m : {DeltaMutation::none, DeltaMutation::kill_is_identity, DeltaMutation::ignore_theta,
                            DeltaMutation::unfreeze_phase_shift, DeltaMutation::simulate_skip_squad})
        if (mutation_name(m) == name) return m;
    throw DomainError("unknown mutation: " + name);
}

class DeltaRule final : public LocalRule {
public:
    DeltaRule(PartialCa g, CellularAutomaton n, Symbol theta, SquadAutomaton squad,
              std::shared_ptr<const FreezingCode> code, DeltaMutation mutation)
        : g_(std::move(g)), n_(std::move(n)), theta_(theta), squad_(std::move(squad)), code_(std::move(code)),
          mutation_(mutation) {
        r_s_ = n_.radius();
        r_g_ = g_.base.radius();
        k_ = code_->k();
        r_ = (r_s_ + 1) * static_cast<int>(k_) - 1;
        blocks_ = 2 * static_cast<std::size_t>(r_s_) + 1;
        u_ = code_->u_sigma();
        toy_ = code_->mode() == CodeMode::toy;
        csize_ = static_cast<std::size_t>(code_->coding().size());
        if (toy_ && k_ <= kMaxLookupK) {
            lookup_.assign(std::size_t{1} << k_, -1);
            for (std::size_t i = 0; i < code_->table().size(); ++i) {
                std::size_t v = 0;
                for (Symbol s : code_->table()[i]) v = 2 * v + s;
                lookup_[v] = static_cast<int>(i);
            }
            // Which tuples of pool words concatenate inside L(Σ).
            const std::size_t p = code_->pool().size();
            std::size_t tuples = 1;
            for (std::size_t b = 0; b < blocks_ && tuples <= (1u << 20); ++b) tuples *= p;
            if (tuples <= (1u << 20)) {
                tuple_ok_.assign(tuples, 0);
                for (std::size_t t = 0; t < tuples; ++t) {
                    Word cat;
                    std::size_t rest = t;
                    std::vector<std::size_t> idx(blocks_);
                    for (std::size_t b = blocks_; b-- > 0;) {
                        idx[b] = rest % p;
                        rest /= p;
                    }
                    for (std::size_t b = 0; b < blocks_; ++b)
                        cat.insert(cat.end(), code_->pool()[idx[b]].begin(), code_->pool()[idx[b]].end());
                    tuple_ok_[t] = g_.domain.contains(cat) ? 1 : 0;
                }
            }
        }
    }

    Alphabet alphabet() const override { return kBinary; }
    int radius() const override { return r_; }
    Symbol eval(const Symbol* w) const override {
        Symbol out = 0;
        run(w, 2 * static_cast<std::size_t>(r_) + 1, static_cast<std::size_t>(r_), 1, &out, nullptr);
        return out;
    }
    std::string proc_name() const override { return "delta"; }
    void step_cyclic(const Symbol* in, std::size_t period, Symbol* out) const override {
        thread_local Word ext;
        const std::size_t r = static_cast<std::size_t>(r_);
        ext.resize(period + 2 * r);
        const std::size_t shift = period * (r / period + 1) - r;
        for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = in[(i + shift) % period];
        run(ext.data(), ext.size(), r, period, out, nullptr);
    }

    CaseTag classify(const Word& y) const {
        if (y.size() != 2 * static_cast<std::size_t>(r_) + 1) throw DomainError("window must have length 2r+1");
        check_word(kBinary, y);
        CaseTag tag;
        Symbol out = 0;
        run(y.data(), y.size(), static_cast<std::size_t>(r_), 1, &out, &tag);
        return tag;
    }

    std::vector<Case> classify_cells(const Word& x) const {
        const std::size_t period = x.size();
        const std::size_t r = static_cast<std::size_t>(r_);
        Word ext(period + 2 * r);
        const std::size_t shift = period * (r / period + 1) - r;
        for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = x[(i + shift) % period];
        std::vector<Case> cases(period);
        for (std::size_t j = 0; j < period; ++j) {
            CaseTag tag;
            Symbol out;
            run(ext.data(), ext.size(), r + j, 1, &out, &tag);
            cases[j] = tag.tag;
        }
        return cases;
    }

    const PartialCa& g() const { return g_; }
    const CellularAutomaton& n() const { return n_; }
    Symbol theta() const { return theta_; }
    const SquadAutomaton& squad() const { return squad_; }
    const FreezingCode& code() const { return *code_; }
    DeltaMutation mutation() const { return mutation_; }
    std::size_t k() const { return k_; }
    int r_s() const { return r_s_; }

private:
    // Decoded codeword starting at some position.
    struct Block {
        int z = -1;  // toy: pool index; formula: index into the local z list
        int sym = 0;
    };

    // Evaluates cells first..first+count-1 of ext; every window must lie
    // inside ext.
    void run(const Symbol* ext, std::size_t len, std::size_t first, std::size_t count, Symbol* out,
             CaseTag* tag) const {
        const std::size_t r = static_cast<std::size_t>(r_);
        const std::size_t ul = u_.size();
        thread_local std::vector<std::uint32_t> forb;
        thread_local std::vector<int> starts;
        thread_local std::vector<Block> blocks;
        thread_local std::vector<Word> zs;
        // forb[p] = occurrences of u_Σ starting before p.
        const std::size_t lo = first - r, hi = first + count - 1 + r;  // inclusive span used
        forb.assign(len + 1, 0);
        for (std::size_t p = lo; p <= hi; ++p) {
            bool hit = p + ul <= len && std::equal(u_.begin(), u_.end(), ext + p);
            forb[p + 1] = forb[p] + (hit ? 1 : 0);
        }
        // Codeword starts.
        starts.assign(len, -1);
        blocks.clear();
        zs.clear();
        if (k_ <= len) {
            if (!lookup_.empty()) {
                std::size_t v = 0;
                const std::size_t mask = (std::size_t{1} << k_) - 1;
                for (std::size_t p = lo; p <= hi; ++p) {
                    v = ((v << 1) | ext[p]) & mask;
                    if (p + 1 >= lo + k_) {
                        int id = lookup_[v];
                        if (id >= 0) {
                            starts[p + 1 - k_] = static_cast<int>(blocks.size());
                            blocks.push_back({id / static_cast<int>(csize_), id % static_cast<int>(csize_)});
                        }
                    }
                }
            } else {
                for (std::size_t p = lo; p + k_ <= hi + 1; ++p) {
                    auto d = code_->try_decode(Word(ext + p, ext + p + k_));
                    if (!d) continue;
                    starts[p] = static_cast<int>(blocks.size());
                    blocks.push_back({static_cast<int>(zs.size()), d->symbol});
                    zs.push_back(std::move(d->z));
                }
            }
        }
        const std::size_t kk = k_;
        for (std::size_t e = first; e < first + count; ++e) {
            Symbol& o = out[e - first];
            // (1) no occurrence of u_Σ inside the window.
            const std::size_t a = e - r;
            const std::size_t b = e + r + 1 >= ul ? e + r + 1 - ul : 0;  // last start fully inside
            if (b < a || forb[b + 1] == forb[a]) {
                o = g_.base.eval(ext + e - static_cast<std::size_t>(r_g_));
                if (tag) {
                    tag->tag = Case::sigma;
                    tag->output = o;
                }
                continue;
            }
            // Central codeword start c in [e-k+1, e] with full context.
            int found = -1, matches = 0;
            for (std::size_t c = e + 1 - kk; c <= e; ++c) {
                bool ok = true;
                for (int t = -r_s_; t <= r_s_ && ok; ++t) {
                    const std::size_t p = c + static_cast<std::size_t>(t * static_cast<int>(kk));
                    ok = starts[p] >= 0;
                }
                if (ok) {
                    ++matches;
                    found = static_cast<int>(c);
                }
            }
            Case cs = Case::kill;
            Symbol result = 0;
            std::vector<int> ctx;
            if (matches == 1) {
                const std::size_t c = static_cast<std::size_t>(found);
                const std::size_t phase = e - c;
                for (int t = -r_s_; t <= r_s_; ++t)
                    ctx.push_back(starts[c + static_cast<std::size_t>(t * static_cast<int>(kk))]);
                const Block& centre = blocks[static_cast<std::size_t>(ctx[static_cast<std::size_t>(r_s_)])];
                auto [ca, cb] = code_->coding().split(centre.sym);
                const Word& zc = toy_ ? code_->pool()[static_cast<std::size_t>(centre.z)]
                                      : zs[static_cast<std::size_t>(centre.z)];
                if (cb == squad_.gamma) {
                    cs = Case::unfreeze;
                    const std::size_t i = kk - 1 - phase;
                    result = mutation_ == DeltaMutation::unfreeze_phase_shift ? zc[i] : zc[phase];
                } else if (z_concat_ok(ctx, blocks, zs) &&
                           (static_cast<Symbol>(ca) != theta_ || mutation_ == DeltaMutation::ignore_theta) &&
                           cb != squad_.kappa) {
                    cs = Case::simulate;
                    Word v(blocks_), w(blocks_);
                    for (std::size_t t = 0; t < blocks_; ++t) {
                        auto [va, wb] = code_->coding().split(blocks[static_cast<std::size_t>(ctx[t])].sym);
                        v[t] = static_cast<Symbol>(va);
                        w[t] = static_cast<Symbol>(wb);
                    }
                    const int na = n_.eval(v.data());
                    const int sb = mutation_ == DeltaMutation::simulate_skip_squad ? cb : squad_.ca.eval(w.data());
                    const int sym = code_->coding().index(na, sb);
                    if (toy_) {
                        result = code_->table()[static_cast<std::size_t>(centre.z) * csize_ +
                                                static_cast<std::size_t>(sym)][phase];
                    } else {
                        result = code_->encode(zc, sym)[phase];
                    }
                }
            }
            if (tag) tag->matches = matches;
            if (cs == Case::kill) result = mutation_ == DeltaMutation::kill_is_identity ? ext[e] : 0;
            o = result;
            if (tag) {
                tag->tag = cs;
                tag->output = result;
                if (!ctx.empty()) {
                    const std::size_t c = static_cast<std::size_t>(found);
                    tag->offset = static_cast<int>(c - static_cast<std::size_t>(r_s_) * kk - (e - r));
                    tag->z.clear();
                    tag->v.clear();
                    tag->w.clear();
                    for (int id : ctx) {
                        const Block& bl = blocks[static_cast<std::size_t>(id)];
                        tag->z.push_back(toy_ ? code_->pool()[static_cast<std::size_t>(bl.z)]
                                              : zs[static_cast<std::size_t>(bl.z)]);
                        auto [va, wb] = code_->coding().split(bl.sym);
                        tag->v.push_back(static_cast<Symbol>(va));
                        tag->w.push_back(static_cast<Symbol>(wb));
                    }
                }
            }
        }
    }

    bool z_concat_ok(const std::vector<int>& ctx, const std::vector<Block>& blocks, const std::vector<Word>& zs) const {
        if (toy_ && !tuple_ok_.empty()) {
            std::size_t t = 0;
            for (int id : ctx) t = t * code_->pool().size() + static_cast<std::size_t>(blocks[static_cast<std::size_t>(id)].z);
            return tuple_ok_[t] != 0;
        }
        Word cat;
        for (int id : ctx) {
            const Block& bl = blocks[static_cast<std::size_t>(id)];
            const Word& z = toy_ ? code_->pool()[static_cast<std::size_t>(bl.z)] : zs[static_cast<std::size_t>(bl.z)];
            cat.insert(cat.end(), z.begin(), z.end());
        }
        return g_.domain.contains(cat);
    }

    PartialCa g_;
    CellularAutomaton n_;
    Symbol theta_;
    SquadAutomaton squad_;
    std::shared_ptr<const FreezingCode> code_;
    DeltaMutation mutation_;
    int r_s_ = 1, r_g_ = 1, r_ = 0;
    std::size_t k_ = 0, blocks_ = 3, csize_ = 1;
    Word u_;
    bool toy_ = false;
    std::vector<int> lookup_;
    std::vector<std::uint8_t> tuple_ok_;
};

std::size_t DeltaAutomaton::k() const { return rule_->k(); }
int DeltaAutomaton::r_s() const { return rule_->r_s(); }
const PartialCa& DeltaAutomaton::g() const { return rule_->g(); }
const CellularAutomaton& DeltaAutomaton::n_ca() const { return rule_->n(); }
Symbol DeltaAutomaton::theta() const { return rule_->theta(); }
const SquadAutomaton& DeltaAutomaton::squad() const { return rule_->squad(); }
const FreezingCode& DeltaAutomaton::code() const { return rule_->code(); }
DeltaMutation DeltaAutomaton::mutation() const { return rule_->mutation(); }
CaseTag DeltaAutomaton::classify(const Word& y) const { return rule_->classify(y); }
std::vector<Case> DeltaAutomaton::classify_cells(const PeriodicConfiguration& x) const {
    return rule_->classify_cells(x.cells);
}

DeltaAutomaton build_delta(const PartialCa& g, const CellularAutomaton& n_ca, Symbol theta, const SquadAutomaton& squad,
                           std::shared_ptr<const FreezingCode> code, DeltaMutation mutation) {
    if (!code) throw DomainError("missing code");
    if (!(g.base.alphabet() == kBinary) || !(g.domain.alphabet() == kBinary)) throw DomainError("G must be binary");
    if (g.domain.forbidden() != std::vector<Word>{code->u_sigma()})
        throw DomainError("G's domain must be the subshift forbidding the code's u_Σ");
    const Word& u = code->u_sigma();
    if (u.front() == 0 || u.back() == 0) throw DomainError("u_Σ must start and end with 1");
    if (code->coding().a_size() != n_ca.alphabet().size || code->coding().b_size() != squad.ca.alphabet().size)
        throw DomainError("code alphabet must be A x B_S");
    if (theta >= n_ca.alphabet().size) throw DomainError("θ outside N's alphabet");
    const int r_s = std::max({1, n_ca.radius(), squad.ca.radius()});
    CellularAutomaton n = pad_radius(n_ca, r_s);
    SquadAutomaton s = squad;
    s.ca = pad_radius(squad.ca, r_s);
    if (g.base.radius() >= r_s * static_cast<int>(code->k())) throw DomainError("need r_G < r_S k");
    if (u.size() >= code->k()) throw DomainError("u_Σ must be shorter than k");
    DeltaAutomaton d;
    d.rule_ = std::make_shared<DeltaRule>(g, n, theta, s, std::move(code), mutation);
    d.ca_ = CellularAutomaton(d.rule_);
    return d;
}

std::vector<std::size_t> codeword_positions(const FreezingCode& code, const Word& x) {
    const std::size_t p = x.size(), k = code.k();
    std::vector<std::size_t> out;
    Word w(k);
    for (std::size_t s = 0; s < p; ++s) {
        for (std::size_t i = 0; i < k; ++i) w[i] = x[(s + i) % p];
        if (code.is_codeword(w)) out.push_back(s);
    }
    return out;
}

bool is_lambda(const FreezingCode& code, const PeriodicConfiguration& x) {
    const std::size_t p = x.period(), k = code.k();
    auto pos = codeword_positions(code, x.cells);
    if (pos.empty()) {
        for (Symbol c : x.cells)
            if (c != 0) return false;
        return true;
    }
    std::vector<char> is_start(p, 0);
    for (std::size_t s : pos) is_start[s] = 1;
    for (std::size_t s : pos) {
        // A codeword never fits inside a zero run, so the longest run from s decides.
        std::size_t run = 0;
        while ((run + 1) * k <= p && is_start[(s + run * k) % p]) ++run;
        bool zeros = true;
        for (std::size_t i = run * k; i < p && zeros; ++i) zeros = x.cells[(s + i) % p] == 0;
        if (zeros) return true;
    }
    return false;
}

Word random_z(const FreezingCode& code, std::mt19937_64& rng) {
    if (code.mode() == CodeMode::toy) return code.pool()[rng() % code.pool().size()];
    // Random walk on the matcher; a single forbidden word never blocks both
    // symbols.
    const ForbiddenMatcher& m = code.sigma().matcher();
    Word z(code.k());
    int state = 0;
    for (Symbol& c : z) {
        Symbol s = static_cast<Symbol>(rng() & 1);
        if (m.next(state, s) < 0) s ^= 1;
        state = m.next(state, s);
        if (state < 0) throw DomainError("Σ blocks both symbols");
        c = s;
    }
    return z;
}

Word sample_window(const DeltaAutomaton& d, std::size_t len, std::size_t anchor, std::mt19937_64& rng) {
    Word y(len);
    if (rng() % 4 == 0) {
        for (Symbol& c : y) c = static_cast<Symbol>(rng() & 1);
        return y;
    }
    const FreezingCode& code = d.code();
    const SquadAutomaton& s = d.squad();
    const std::size_t k = code.k();
    const int a_size = code.coding().a_size(), b_size = code.coding().b_size();
    const std::size_t phase = rng() % 2 ? anchor % k : rng() % k;
    // Shared squad regime: mostly uniform γ, mostly non-special, or mixed.
    const int regime = static_cast<int>(rng() % 3);
    auto squad_state = [&]() -> int {
        if (regime == 0 && rng() % 8 != 0) return s.gamma;
        if (regime == 1) {
            int b;
            do b = static_cast<int>(rng() % static_cast<unsigned>(b_size));
            while (b == s.gamma || b == s.kappa);
            return b;
        }
        return static_cast<int>(rng() % static_cast<unsigned>(b_size));
    };
    auto block = [&]() {
        const std::uint64_t roll = rng() % 20;
        Word w(k, 0);
        if (roll < 17) {
            const int a = static_cast<int>(rng() % static_cast<unsigned>(a_size));
            w = code.encode(random_z(code, rng), code.coding().index(a, squad_state()));
        } else if (roll == 17) {
            for (Symbol& c : w) c = static_cast<Symbol>(rng() & 1);
        }
        return w;
    };
    if (phase != 0) {
        // Tail of a block cut by the left edge.
        Word w = block();
        for (std::size_t i = 0; i < phase && i < len; ++i) y[i] = w[k - phase + i];
    }
    for (std::size_t start = phase; start < len; start += k) {
        Word w = block();
        for (std::size_t i = 0; i < k && start + i < len; ++i) y[start + i] = w[i];
    }
    const std::uint64_t flips = rng() % 4 == 0 ? 1 + rng() % 3 : 0;
    for (std::uint64_t f = 0; f < flips; ++f) y[rng() % len] ^= 1;
    return y;
}

}  // namespace limca
