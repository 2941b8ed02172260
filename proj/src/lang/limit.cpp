#include "limca/lang/limit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

std::size_t ipow(std::size_t b, std::size_t e, std::size_t cap) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (v > cap / b) return cap + 1;
        v *= b;
    }
    return v;
}

}  // namespace

WordAutomaton image_language(const WordAutomaton& a, const CellularAutomaton& ca, std::size_t budget) {
    if (!(a.alphabet() == ca.alphabet())) throw DomainError("alphabet mismatch");
    const std::size_t k = static_cast<std::size_t>(ca.alphabet().size);
    const std::size_t m = 2 * static_cast<std::size_t>(ca.radius());
    const std::size_t contexts = ipow(k, m, budget);
    if (contexts > budget) throw Inconclusive("de Bruijn context count exceeds budget");
    // Output of the rule for context w (m symbols) followed by c.
    std::vector<Symbol> out(contexts * k);
    for (std::size_t w = 0; w < contexts; ++w) {
        Word win = window_at(ca.alphabet(), w, m);
        win.push_back(0);
        for (std::size_t c = 0; c < k; ++c) {
            win.back() = static_cast<Symbol>(c);
            out[w * k + c] = ca.eval(win.data());
        }
    }
    WordAutomaton nfa(ca.alphabet(), 0);
    std::unordered_map<std::uint64_t, int> id;
    std::vector<std::pair<int, std::size_t>> pending;
    auto state = [&](int q, std::size_t w) {
        std::uint64_t key = static_cast<std::uint64_t>(q) * contexts + w;
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (id.size() >= budget) throw Inconclusive("image automaton exceeded state budget");
        int s = nfa.add_state(a.accepting(q));
        id.emplace(key, s);
        pending.emplace_back(q, w);
        return s;
    };
    // Initial states: read m symbols of a preimage without output.
    std::vector<std::pair<int, std::size_t>> layer;
    for (int q : a.initial()) layer.emplace_back(q, 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::set<std::pair<int, std::size_t>> next;
        for (auto [q, w] : layer)
            for (std::size_t c = 0; c < k; ++c)
                for (int t : a.targets(q, static_cast<Symbol>(c))) next.emplace(t, w * k + c);
        layer.assign(next.begin(), next.end());
    }
    for (auto [q, w] : layer) nfa.set_initial(state(q, w));
    for (std::size_t i = 0; i < pending.size(); ++i) {
        auto [q, w] = pending[i];
        int from = id.at(static_cast<std::uint64_t>(q) * contexts + w);
        for (std::size_t c = 0; c < k; ++c) {
            Symbol b = out[w * k + c];
            std::size_t w2 = m == 0 ? 0 : (w * k + c) % contexts;
            for (int t : a.targets(q, static_cast<Symbol>(c))) nfa.add_edge(from, b, state(t, w2));
        }
    }
    return nfa.determinize(budget).minimize();
}

WordAutomaton iterated_image(const CellularAutomaton& ca, int depth, std::size_t budget) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    WordAutomaton a = sft_automaton(Sft::full(ca.alphabet()));
    for (int d = 0; d < depth; ++d) a = image_language(a, ca, budget);
    return a;
}

bool is_surjective(const CellularAutomaton& ca) { return !shortest_orphan(ca).has_value(); }

std::optional<Word> shortest_orphan(const CellularAutomaton& ca) {
    if (!ca.is_table()) throw Unsupported("surjectivity is decided for table rules only");
    return image_language(sft_automaton(Sft::full(ca.alphabet())), ca).first_rejected();
}

bool balanced_at(const CellularAutomaton& ca, int n, std::size_t budget) {
    if (n < 1) throw DomainError("length must be >= 1");
    const std::size_t k = static_cast<std::size_t>(ca.alphabet().size);
    const std::size_t w = ca.window();
    const std::size_t len = static_cast<std::size_t>(n) + w - 1;
    const std::size_t total = ipow(k, len, budget);
    if (total > budget) throw Inconclusive("balance check exceeds enumeration budget");
    const std::size_t outputs = ipow(k, static_cast<std::size_t>(n), budget);
    const std::size_t wsize = ipow(k, w, budget);
    std::vector<Symbol> f(wsize);
    for (std::size_t i = 0; i < wsize; ++i) f[i] = ca.eval(window_at(ca.alphabet(), i, w).data());
    std::vector<std::uint32_t> hist(outputs, 0);
    // Windows of x from the left; x is read most-significant first.
    if ((k & (k - 1)) == 0) {
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < k) ++bits;
        for (std::size_t x = 0; x < total; ++x) {
            std::size_t y = 0;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
                y = (y << bits) | f[(x >> (bits * (len - w - i))) & (wsize - 1)];
            ++hist[y];
        }
    } else {
        for (std::size_t x = 0; x < total; ++x) {
            std::size_t y = 0;
            std::size_t div = total / wsize;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                y = y * k + f[(x / div) % wsize];
                div /= k;
            }
            ++hist[y];
        }
    }
    const std::size_t expected = ipow(k, w - 1, budget);
    for (auto h : hist)
        if (h != expected) return false;
    return true;
}

int balance_certificate_length(const CellularAutomaton& ca) {
    const std::size_t contexts = ipow(static_cast<std::size_t>(ca.alphabet().size), 2 * static_cast<std::size_t>(ca.radius()), 62);
    if (contexts > 30) throw Inconclusive("balance certificate length too large");
    return static_cast<int>(std::size_t{1} << contexts);
}

bool balance_oracle(const CellularAutomaton& ca, std::size_t budget) {
    if (!ca.is_table()) throw Unsupported("surjectivity is decided for table rules only");
    return balanced_at(ca, balance_certificate_length(ca), budget);
}

bool word_reachable_at_depth(const CellularAutomaton& ca, const Word& w, int d, std::size_t budget) {
    if (d < 0) throw DomainError("depth must be >= 0");
    check_word(ca.alphabet(), w);
    const std::size_t win = ca.window();
    const int k = ca.alphabet().size;
    std::size_t nodes = 0;
    std::vector<std::unordered_set<std::string>> dead(static_cast<std::size_t>(d) + 1);
    auto reach = [&](auto&& self, const Word& target, int depth) -> bool {
        if (depth == 0) return true;
        std::string key(target.begin(), target.end());
        if (dead[static_cast<std::size_t>(depth)].count(key)) return false;
        Word x(target.size() + win - 1);
        // Place symbols left to right; a window is checked as soon as it closes.
        auto place = [&](auto&& rec, std::size_t i) -> bool {
            if (++nodes > budget) throw Inconclusive("reachability search exceeded budget");
            if (i == x.size()) return self(self, x, depth - 1);
            for (int c = 0; c < k; ++c) {
                x[i] = static_cast<Symbol>(c);
                if (i + 1 >= win && ca.eval(x.data() + (i + 1 - win)) != target[i + 1 - win]) continue;
                if (rec(rec, i + 1)) return true;
            }
            return false;
        };
        bool ok = place(place, 0);
        if (!ok) dead[static_cast<std::size_t>(depth)].insert(std::move(key));
        return ok;
    };
    return reach(reach, w, d);
}

std::vector<Word> recurrent_periodic(const CellularAutomaton& ca, std::size_t period, std::size_t budget) {
    if (period < 1) throw DomainError("period must be >= 1");
    const std::size_t k = static_cast<std::size_t>(ca.alphabet().size);
    const std::size_t n = ipow(k, period, budget);
    if (n > budget) throw Inconclusive("too many periodic configurations");
    auto encode = [&](const Word& w) {
        std::size_t v = 0;
        for (Symbol s : w) v = v * k + s;
        return v;
    };
    std::vector<std::uint32_t> next(n);
    Word x(period), y(period);
    for (std::size_t v = 0; v < n; ++v) {
        x = window_at(ca.alphabet(), v, period);
        ca.rule().step_cyclic(x.data(), period, y.data());
        next[v] = static_cast<std::uint32_t>(encode(y));
    }
    // 0 = unseen, 1 = on current walk, 2 = finished.
    std::vector<std::uint8_t> color(n, 0);
    std::vector<char> cyclic(n, 0);
    std::vector<std::size_t> walk;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s]) continue;
        walk.clear();
        std::size_t v = s;
        while (color[v] == 0) {
            color[v] = 1;
            walk.push_back(v);
            v = next[v];
        }
        if (color[v] == 1) {
            std::size_t u = v;
            do {
                cyclic[u] = 1;
                u = next[u];
            } while (u != v);
        }
        for (std::size_t u : walk) color[u] = 2;
    }
    std::vector<Word> out;
    for (std::size_t v = 0; v < n; ++v)
        if (cyclic[v]) out.push_back(window_at(ca.alphabet(), v, period));
    return out;
}

LimitApprox limit_outer(const CellularAutomaton& ca, std::size_t width, int depth, std::size_t budget) {
    LimitApprox approx;
    approx.width = width;
    approx.depth = depth;
    // Small slices are enumerated word by word; the iterated image automaton
    // of a chaotic rule can grow past any budget after a few steps.
    const std::size_t k = static_cast<std::size_t>(ca.alphabet().size);
    const std::size_t slice_size = ipow(k, width, std::size_t{1} << 16);
    if (slice_size <= (std::size_t{1} << 16)) {
        for (std::size_t i = 0; i < slice_size; ++i) {
            Word w = window_at(ca.alphabet(), i, width);
            if (word_reachable_at_depth(ca, w, depth)) approx.outer.push_back(std::move(w));
        }
        return approx;
    }
    approx.outer = iterated_image(ca, depth, budget).words_of_length(width);
    return approx;
}

LimitApprox limit_approx(const CellularAutomaton& ca, std::size_t width, int depth, std::size_t max_period) {
    LimitApprox approx = limit_outer(ca, width, depth);
    std::set<Word> inner;
    for (std::size_t p = 1; p <= max_period; ++p)
        for (const Word& x : recurrent_periodic(ca, p)) {
            Word ext = repeat(x, width / p + 2);
            for (std::size_t i = 0; i < p; ++i) inner.insert(slice(ext, i, i + width));
        }
    approx.inner.assign(inner.begin(), inner.end());
    return approx;
}

}  // namespace limca
