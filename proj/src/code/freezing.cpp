#include "limca/code/freezing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

std::string key_of(const Word& w) { return std::string(w.begin(), w.end()); }

// x B^i and B^i y intersect iff x[i..) == y[..L-i).
bool overlaps_at(const Word& x, const Word& y, std::size_t i) {
    return std::equal(x.begin() + static_cast<std::ptrdiff_t>(i), x.end(), y.begin());
}

bool overlaps(const Word& x, const Word& y) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (overlaps_at(x, y, i)) return true;
    return false;
}

void check_binary(const Word& u) {
    if (u.empty()) throw DomainError("word must be nonempty");
    check_word(kBinary, u);
}

void append_bits(Word& out, const BigInt& v, std::size_t width) {
    for (std::size_t i = width; i-- > 0;) out.push_back(boost::multiprecision::bit_test(v, static_cast<unsigned>(i)) ? 1 : 0);
}

BigInt read_bits(const Word& w, std::size_t from, std::size_t width) {
    BigInt v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v <<= 1;
        if (w[from + i]) v |= 1;
    }
    return v;
}

}  // namespace

bool is_strongly_freezing_word(const Word& u) {
    if (u.empty()) throw DomainError("word must be nonempty");
    return !overlaps(u, u);
}

FreezingReport check_strongly_freezing_set(const std::vector<Word>& e, std::size_t exhaustive_limit,
                                           std::size_t samples, std::uint64_t seed) {
    FreezingReport rep;
    if (e.empty()) return rep;
    const std::size_t len = e[0].size();
    for (const Word& w : e)
        if (w.size() != len || w.empty()) throw DomainError("freezing set words must share one positive length");
    auto test = [&](std::size_t a, std::size_t b) {
        ++rep.pairs_checked;
        for (std::size_t i = 1; i < len; ++i)
            if (overlaps_at(e[a], e[b], i)) {
                if (rep.ok) {
                    rep.first = a;
                    rep.second = b;
                    rep.offset = i;
                }
                rep.ok = false;
                ++rep.violations;
                ++rep.by_offset[i];
            }
    };
    const std::size_t n = e.size();
    if (n <= exhaustive_limit / n) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) test(a, b);
        return rep;
    }
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t a = pick(rng);
        test(a, pick(rng));
    }
    return rep;
}

bool is_strongly_freezing_set(const std::vector<Word>& e) { return check_strongly_freezing_set(e).ok; }

Word extend_strongly_freezing(const Word& u) {
    check_binary(u);
    if (is_strongly_freezing_word(u)) return u;
    const Symbol b = static_cast<Symbol>(1 - u[0]);
    Word w = u;
    // u.b^c with b^c absent from u is always freezing, so this terminates
    // within 1 + (longest b-run) steps.
    for (;;) {
        w.push_back(b);
        if (is_strongly_freezing_word(w)) return w;
    }
}

SymbolCoding::SymbolCoding(int a_size, int b_size) : a_size_(a_size), b_size_(b_size) {
    if (a_size < 1 || b_size < 1) throw DomainError("coding alphabets must be nonempty");
    width_ = 1;
    while ((1LL << width_) < static_cast<long long>(size())) ++width_;
}

int SymbolCoding::index(int a, int b) const {
    if (a < 0 || a >= a_size_ || b < 0 || b >= b_size_) throw DomainError("coded symbol out of range");
    return a * b_size_ + b;
}

std::pair<int, int> SymbolCoding::split(int index) const {
    if (index < 0 || index >= size()) throw DomainError("coded symbol index out of range");
    return {index / b_size_, index % b_size_};
}

Word SymbolCoding::bits(int index) const {
    if (index < 0 || index >= size()) throw DomainError("coded symbol index out of range");
    Word w(static_cast<std::size_t>(width_));
    for (int i = 0; i < width_; ++i) w[static_cast<std::size_t>(i)] = static_cast<Symbol>((index >> (width_ - 1 - i)) & 1);
    return w;
}

int SymbolCoding::from_bits(const Word& w) const {
    if (w.size() != static_cast<std::size_t>(width_)) throw DomainError("coded symbol has wrong width");
    int v = 0;
    for (Symbol s : w) {
        if (s > 1) throw DomainError("coded symbol is not binary");
        v = 2 * v + s;
    }
    if (v >= size()) throw DomainError("bits do not code a symbol");
    return v;
}

bool m_bound_holds(std::size_t u_len, std::size_t l, std::size_t m) {
    if (m * u_len <= 2 * u_len + l) return false;
    const std::size_t n = m * u_len - 2 * u_len - l;
    BigInt lhs = BigInt(1) << n;
    BigInt base = (BigInt(1) << u_len) - 1;
    BigInt rhs = boost::multiprecision::pow(base, static_cast<unsigned>(m));
    return lhs >= rhs;
}

std::size_t minimal_m(std::size_t u_len, std::size_t l) {
    if (u_len < 1) throw DomainError("delimiter must be nonempty");
    const double u = static_cast<double>(u_len);
    const double denom = u - std::log2(std::exp2(u) - 1.0);
    const double est = (2.0 * u + static_cast<double>(l)) / denom;
    if (!(est < 1e6)) throw DomainError("code parameters exceed the supported size");
    std::size_t m = static_cast<std::size_t>(std::max(1.0, std::floor(est) - 2.0));
    while (m > 1 && m_bound_holds(u_len, l, m - 1)) --m;
    while (!m_bound_holds(u_len, l, m)) ++m;
    return m;
}

FreezingCode build_code(const Word& u_sigma, const SymbolCoding& coding) {
    check_binary(u_sigma);
    FreezingCode c;
    c.mode_ = CodeMode::formula;
    c.sigma_ = Sft(kBinary, {u_sigma});
    c.u_sigma_ = u_sigma;
    c.u_e_ = extend_strongly_freezing(u_sigma);
    c.coding_ = coding;
    const std::size_t u = c.u_e_.size();
    c.m_ = minimal_m(u, c.l());
    c.n_ = c.m_ * u - 2 * u - c.l();
    c.k_ = 2 * c.m_ * u;
    c.ranked_ = std::make_shared<RankedLanguage>(c.sigma_, c.m_ * u);
    if (c.ranked_->count() == 0) throw DomainError("Σ is empty");
    if (c.ranked_->count() > BigInt(1) << c.n_) throw IntegrityError("rank payload does not fit in n bits");
    return c;
}

FreezingReport check_code_freezing(const FreezingCode& code, std::size_t pairs, std::uint64_t seed) {
    if (code.mode() == CodeMode::toy) return check_strongly_freezing_set(code.table());
    RankedLanguage lk(code.sigma(), code.k());
    std::mt19937_64 rng(seed);
    const std::size_t bits = static_cast<std::size_t>(boost::multiprecision::msb(lk.count())) + 64;
    auto draw = [&] {
        BigInt r = 0;
        for (std::size_t i = 0; i < bits; i += 64) r = (r << 64) | BigInt(rng());
        Word z = lk.unrank(r % lk.count());
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(code.coding().size()));
        return code.encode(z, v);
    };
    FreezingReport total;
    total.sampled = true;
    for (std::size_t p = 0; p < pairs; ++p) {
        std::vector<Word> e{draw(), draw()};
        // Ordered pair (x, y): x above y at every offset.
        for (std::size_t i = 1; i < code.k(); ++i)
            if (std::equal(e[0].begin() + static_cast<std::ptrdiff_t>(i), e[0].end(), e[1].begin())) {
                if (total.ok) total.offset = i;
                total.ok = false;
                ++total.violations;
                ++total.by_offset[i];
            }
        ++total.pairs_checked;
    }
    return total;
}

void FreezingCode::index_table() {
    lookup_.clear();
    pool_lookup_.clear();
    for (std::size_t i = 0; i < table_.size(); ++i) lookup_.emplace(key_of(table_[i]), i);
    for (std::size_t i = 0; i < pool_.size(); ++i) pool_lookup_.emplace(key_of(pool_[i]), i);
}

FreezingCode make_toy_code(const Sft& sigma, const Word& u_sigma, std::vector<Word> pool, const SymbolCoding& coding,
                           std::vector<Word> table) {
    check_binary(u_sigma);
    if (pool.empty()) throw DomainError("toy code needs a nonempty z pool");
    const std::size_t k = pool[0].size();
    if (table.size() != pool.size() * static_cast<std::size_t>(coding.size()))
        throw DomainError("toy table must have |pool|*|C| entries");
    for (const Word& z : pool)
        if (z.size() != k || !sigma.contains(z)) throw DomainError("pool word outside L_k(Σ)");
    for (const Word& w : table) {
        if (w.size() != k) throw DomainError("codeword has wrong length");
        check_word(kBinary, w);
        if (sigma.contains(w)) throw DomainError("codeword lies in L_k(Σ): " + format_word(w));
    }
    FreezingCode c;
    c.mode_ = CodeMode::toy;
    c.sigma_ = sigma;
    c.u_sigma_ = u_sigma;
    c.u_e_ = extend_strongly_freezing(u_sigma);
    c.k_ = k;
    c.coding_ = coding;
    c.pool_ = std::move(pool);
    c.table_ = std::move(table);
    c.index_table();
    if (c.pool_lookup_.size() != c.pool_.size()) throw DomainError("pool words must be distinct");
    if (c.lookup_.size() != c.table_.size()) throw DomainError("toy table is not injective");
    auto rep = check_strongly_freezing_set(c.table_);
    if (!rep.ok)
        throw DomainError("toy table is not strongly freezing: " + format_word(c.table_[rep.first]) + " overlaps " +
                          format_word(c.table_[rep.second]) + " at offset " + std::to_string(rep.offset));
    return c;
}

int FreezingCode::pool_index(const Word& z) const {
    auto it = pool_lookup_.find(key_of(z));
    return it == pool_lookup_.end() ? -1 : static_cast<int>(it->second);
}

bool FreezingCode::accepts_z(const Word& z) const {
    if (mode_ == CodeMode::toy) return pool_index(z) >= 0;
    return z.size() == k_ && sigma_.contains(z);
}

Word FreezingCode::encode(const Word& z, int symbol) const {
    if (symbol < 0 || symbol >= coding_.size()) throw DomainError("symbol outside C");
    if (mode_ == CodeMode::toy) {
        int zi = pool_index(z);
        if (zi < 0) throw DomainError("z is not in the toy pool");
        return table_[static_cast<std::size_t>(zi) * static_cast<std::size_t>(coding_.size()) +
                      static_cast<std::size_t>(symbol)];
    }
    if (z.size() != k_ || !sigma_.contains(z)) throw DomainError("z is not in L_k(Σ)");
    const std::size_t h = k_ / 2;
    Word w = u_e_;
    w.insert(w.end(), z.begin(), z.begin() + static_cast<std::ptrdiff_t>(h));
    append_bits(w, ranked_->rank(slice(z, h, k_)), n_);
    Word v = coding_.bits(symbol);
    w.insert(w.end(), v.begin(), v.end());
    w.insert(w.end(), u_e_.begin(), u_e_.end());
    return w;
}

std::optional<Decoded> FreezingCode::try_decode(const Word& w) const {
    if (w.size() != k_) return std::nullopt;
    if (mode_ == CodeMode::toy) {
        auto it = lookup_.find(key_of(w));
        if (it == lookup_.end()) return std::nullopt;
        const std::size_t c = static_cast<std::size_t>(coding_.size());
        return Decoded{pool_[it->second / c], static_cast<int>(it->second % c)};
    }
    const std::size_t u = u_e_.size(), h = k_ / 2;
    if (!std::equal(u_e_.begin(), u_e_.end(), w.begin())) return std::nullopt;
    if (!std::equal(u_e_.begin(), u_e_.end(), w.end() - static_cast<std::ptrdiff_t>(u))) return std::nullopt;
    for (Symbol s : w)
        if (s > 1) return std::nullopt;
    BigInt r = read_bits(w, u + h, n_);
    if (r >= ranked_->count()) return std::nullopt;
    int v = 0;
    for (std::size_t i = 0; i < l(); ++i) v = 2 * v + w[u + h + n_ + i];
    if (v >= coding_.size()) return std::nullopt;
    Word z = slice(w, u, u + h);
    Word tail = ranked_->unrank(r);
    z.insert(z.end(), tail.begin(), tail.end());
    if (!sigma_.contains(z)) return std::nullopt;
    return Decoded{std::move(z), v};
}

Decoded FreezingCode::decode(const Word& w) const {
    auto d = try_decode(w);
    if (!d) throw DomainError("not a codeword: " + format_word(w));
    return *d;
}

std::string FreezingCode::str() const {
    KeyValues kv;
    kv.add("mode", mode_ == CodeMode::toy ? "toy" : "formula");
    kv.add("u_sigma", format_word(u_sigma_));
    kv.add("u_e", format_word(u_e_));
    kv.add("m", std::to_string(m_));
    kv.add("n", std::to_string(n_));
    kv.add("l", std::to_string(l()));
    kv.add("k", std::to_string(k_));
    kv.add("c_a", std::to_string(coding_.a_size()));
    kv.add("c_b", std::to_string(coding_.b_size()));
    if (mode_ == CodeMode::toy) {
        for (const Word& f : sigma_.forbidden()) kv.add("forbid", format_word(f));
        for (const Word& z : pool_) kv.add("z", format_word(z));
        const std::size_t c = static_cast<std::size_t>(coding_.size());
        for (std::size_t i = 0; i < table_.size(); ++i)
            kv.add("codeword", std::to_string(i / c) + " " + std::to_string(i % c) + " " + format_word(table_[i]));
    }
    return kv.str();
}

FreezingCode FreezingCode::parse(const KeyValues& kv) {
    const std::string mode = kv.get("mode");
    const Word u_sigma = parse_word(kv.get("u_sigma"));
    SymbolCoding coding(static_cast<int>(kv.get_int("c_a")), static_cast<int>(kv.get_int("c_b")));
    FreezingCode c;
    if (mode == "formula") {
        c = build_code(u_sigma, coding);
    } else if (mode == "toy") {
        std::vector<Word> forbidden;
        for (const auto& f : kv.get_all("forbid")) forbidden.push_back(parse_word(f));
        if (forbidden.empty()) forbidden.push_back(u_sigma);
        std::vector<Word> pool;
        for (const auto& z : kv.get_all("z")) pool.push_back(parse_word(z));
        const std::size_t csize = static_cast<std::size_t>(coding.size());
        std::vector<Word> table(pool.size() * csize);
        std::vector<bool> seen(table.size(), false);
        for (const auto& line : kv.get_all("codeword")) {
            std::size_t zi = 0, ci = 0;
            char bits[512];
            if (std::sscanf(line.c_str(), "%zu %zu %511s", &zi, &ci, bits) != 3 || zi >= pool.size() || ci >= csize)
                throw DomainError("malformed codeword line: " + line);
            const std::size_t idx = zi * csize + ci;
            if (seen[idx]) throw DomainError("duplicate codeword entry: " + line);
            seen[idx] = true;
            table[idx] = parse_word(bits);
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw DomainError("toy table is incomplete");
        c = make_toy_code(Sft(kBinary, forbidden), u_sigma, std::move(pool), coding, std::move(table));
    } else {
        throw DomainError("unknown code mode: " + mode);
    }
    if (format_word(c.u_e_) != kv.get("u_e") || std::to_string(c.k_) != kv.get("k") ||
        std::to_string(c.l()) != kv.get("l") || std::to_string(c.m_) != kv.get("m") ||
        std::to_string(c.n_) != kv.get("n"))
        throw IntegrityError("code file parameters disagree with the rebuilt code");
    return c;
}

FreezingCode FreezingCode::load(const std::string& path) { return parse(KeyValues::load(path)); }

FreezingCode search_toy_code(const Sft& sigma, const Word& u_sigma, const std::vector<Word>& pool,
                             const SymbolCoding& coding, std::size_t k, std::size_t node_budget) {
    if (k < 1 || k > 24) throw DomainError("toy code length must be in [1,24]");
    const std::size_t need = pool.size() * static_cast<std::size_t>(coding.size());
    const Word u_e = extend_strongly_freezing(u_sigma);
    // Candidates: unbordered words outside L_k(Σ). Those that start with the
    // delimiter come first, fewest conflicts among themselves first.
    std::vector<Word> lead, rest;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        Word w(k);
        for (std::size_t i = 0; i < k; ++i) w[i] = static_cast<Symbol>((v >> (k - 1 - i)) & 1);
        if (sigma.contains(w) || overlaps(w, w)) continue;
        bool led = u_e.size() <= k && std::equal(u_e.begin(), u_e.end(), w.begin());
        (led ? lead : rest).push_back(std::move(w));
    }
    if (lead.size() + rest.size() < need)
        throw DomainError("no toy code: only " + std::to_string(lead.size() + rest.size()) +
                          " freezing candidates outside L_k(Σ), need " + std::to_string(need));
    if (lead.size() <= 4096) {
        std::vector<std::size_t> degree(lead.size(), 0);
        for (std::size_t a = 0; a < lead.size(); ++a)
            for (std::size_t b = a + 1; b < lead.size(); ++b)
                if (overlaps(lead[a], lead[b]) || overlaps(lead[b], lead[a])) ++degree[a], ++degree[b];
        std::vector<std::size_t> order(lead.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
        std::vector<Word> sorted;
        for (std::size_t i : order) sorted.push_back(lead[i]);
        lead.swap(sorted);
    }
    std::vector<Word> cand = std::move(lead);
    cand.insert(cand.end(), rest.begin(), rest.end());

    std::vector<std::size_t> chosen;
    auto fits = [&](std::size_t i) {
        for (std::size_t j : chosen)
            if (overlaps(cand[i], cand[j]) || overlaps(cand[j], cand[i])) return false;
        return true;
    };
    std::size_t nodes = 0;
    std::size_t next = 0;
    while (chosen.size() < need) {
        if (++nodes > node_budget) throw DomainError("no toy code found within the search budget");
        // Not enough candidates left for the remaining slots: backtrack.
        if (cand.size() - next < need - chosen.size()) {
            if (chosen.empty()) throw DomainError("no strongly freezing set of the required size at this k");
            next = chosen.back() + 1;
            chosen.pop_back();
            continue;
        }
        if (fits(next)) chosen.push_back(next);
        ++next;
    }
    std::vector<Word> table;
    for (std::size_t i : chosen) table.push_back(cand[i]);
    return make_toy_code(sigma, u_sigma, pool, coding, std::move(table));
}

}  // namespace limca
