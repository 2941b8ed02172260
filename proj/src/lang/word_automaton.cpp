#include "limca/lang/word_automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

WordAutomaton::WordAutomaton(Alphabet a, int states) : alphabet_(a) {
    for (int i = 0; i < states; ++i) add_state(false);
}

int WordAutomaton::add_state(bool accepting) {
    edges_.emplace_back(static_cast<std::size_t>(alphabet_.size));
    accepting_.push_back(accepting);
    return states() - 1;
}

void WordAutomaton::add_edge(int from, Symbol s, int to) {
    auto& t = edges_[static_cast<std::size_t>(from)][s];
    if (std::find(t.begin(), t.end(), to) == t.end()) t.push_back(to);
}

void WordAutomaton::set_initial(int state, bool on) {
    auto it = std::find(initial_.begin(), initial_.end(), state);
    if (on && it == initial_.end()) initial_.push_back(state);
    if (!on && it != initial_.end()) initial_.erase(it);
}

bool WordAutomaton::is_deterministic() const {
    if (initial_.size() > 1) return false;
    for (const auto& row : edges_)
        for (const auto& t : row)
            if (t.size() > 1) return false;
    return true;
}

bool WordAutomaton::accepts(const Word& w) const {
    std::vector<int> cur = initial_;
    std::vector<char> mark(accepting_.size());
    for (Symbol s : w) {
        if (s >= alphabet_.size) return false;
        std::vector<int> nxt;
        std::fill(mark.begin(), mark.end(), 0);
        for (int q : cur)
            for (int t : targets(q, s))
                if (!mark[static_cast<std::size_t>(t)]) {
                    mark[static_cast<std::size_t>(t)] = 1;
                    nxt.push_back(t);
                }
        cur.swap(nxt);
        if (cur.empty()) return false;
    }
    for (int q : cur)
        if (accepting(q)) return true;
    return false;
}

WordAutomaton WordAutomaton::determinize(std::size_t budget) const {
    WordAutomaton d(alphabet_, 0);
    std::unordered_map<std::vector<int>, int, VecHash> index;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        auto it = index.find(set);
        if (it != index.end()) return it->second;
        if (subsets.size() >= budget) throw Inconclusive("determinization exceeded state budget " + std::to_string(budget));
        bool acc = false;
        for (int q : set) acc = acc || accepting(q);
        int id = d.add_state(acc);
        index.emplace(set, id);
        subsets.push_back(std::move(set));
        return id;
    };
    if (initial_.empty()) return d;
    d.set_initial(intern(initial_));
    std::vector<char> mark(accepting_.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (int s = 0; s < alphabet_.size; ++s) {
            std::vector<int> nxt;
            std::fill(mark.begin(), mark.end(), 0);
            for (int q : subsets[i])
                for (int t : targets(q, static_cast<Symbol>(s)))
                    if (!mark[static_cast<std::size_t>(t)]) {
                        mark[static_cast<std::size_t>(t)] = 1;
                        nxt.push_back(t);
                    }
            if (nxt.empty()) continue;
            int to = intern(std::move(nxt));
            d.add_edge(static_cast<int>(i), static_cast<Symbol>(s), to);
        }
    }
    return d;
}

WordAutomaton WordAutomaton::minimize() const {
    if (!is_deterministic()) throw DomainError("minimize requires a deterministic automaton");
    const int n = states();
    const int k = alphabet_.size;
    if (initial_.empty() || n == 0) return WordAutomaton(alphabet_, 0);
    auto delta = [&](int q, int s) {
        const auto& t = targets(q, static_cast<Symbol>(s));
        return t.empty() ? -1 : t[0];
    };
    // Reachable from the start.
    std::vector<char> reach(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{initial_[0]};
    reach[static_cast<std::size_t>(initial_[0])] = 1;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int s = 0; s < k; ++s) {
            int t = delta(q, s);
            if (t >= 0 && !reach[static_cast<std::size_t>(t)]) {
                reach[static_cast<std::size_t>(t)] = 1;
                queue.push_back(t);
            }
        }
    }
    // Co-accessible: can still reach an accepting state.
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
        for (int s = 0; s < k; ++s) {
            int t = delta(q, s);
            if (t >= 0) rev[static_cast<std::size_t>(t)].push_back(q);
        }
    std::vector<char> live(static_cast<std::size_t>(n), 0);
    for (int q = 0; q < n; ++q)
        if (accepting(q)) {
            live[static_cast<std::size_t>(q)] = 1;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : rev[static_cast<std::size_t>(q)])
            if (!live[static_cast<std::size_t>(p)]) {
                live[static_cast<std::size_t>(p)] = 1;
                queue.push_back(p);
            }
    }
    auto keep = [&](int q) { return q >= 0 && reach[static_cast<std::size_t>(q)] && live[static_cast<std::size_t>(q)]; };
    if (!keep(initial_[0])) return WordAutomaton(alphabet_, 0);
    // Moore refinement; dropped states behave as a shared dead class (-1).
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    for (int q = 0; q < n; ++q)
        if (keep(q)) cls[static_cast<std::size_t>(q)] = accepting(q) ? 1 : 0;
    int classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> sig_id;
        std::vector<int> next(static_cast<std::size_t>(n), -1);
        for (int q = 0; q < n; ++q) {
            if (!keep(q)) continue;
            std::vector<int> sig{cls[static_cast<std::size_t>(q)]};
            for (int s = 0; s < k; ++s) {
                int t = delta(q, s);
                sig.push_back(keep(t) ? cls[static_cast<std::size_t>(t)] : -1);
            }
            auto [it, fresh] = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
            next[static_cast<std::size_t>(q)] = it->second;
        }
        int count = static_cast<int>(sig_id.size());
        cls.swap(next);
        if (count == classes) break;
        classes = count;
    }
    // Renumber classes in breadth-first order from the start for a canonical form.
    std::vector<int> order(static_cast<std::size_t>(classes), -1);
    std::vector<int> rep(static_cast<std::size_t>(classes), -1);
    for (int q = 0; q < n; ++q)
        if (keep(q) && rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(q)])] < 0)
            rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(q)])] = q;
    WordAutomaton m(alphabet_, 0);
    std::deque<int> cq;
    int c0 = cls[static_cast<std::size_t>(initial_[0])];
    order[static_cast<std::size_t>(c0)] = m.add_state(accepting(initial_[0]));
    cq.push_back(c0);
    while (!cq.empty()) {
        int c = cq.front();
        cq.pop_front();
        int q = rep[static_cast<std::size_t>(c)];
        for (int s = 0; s < k; ++s) {
            int t = delta(q, s);
            if (!keep(t)) continue;
            int ct = cls[static_cast<std::size_t>(t)];
            if (order[static_cast<std::size_t>(ct)] < 0) {
                order[static_cast<std::size_t>(ct)] = m.add_state(accepting(t));
                cq.push_back(ct);
            }
            m.add_edge(order[static_cast<std::size_t>(c)], static_cast<Symbol>(s), order[static_cast<std::size_t>(ct)]);
        }
    }
    m.set_initial(0);
    return m;
}

std::optional<Word> WordAutomaton::first_rejected() const {
    if (!is_deterministic()) throw DomainError("first_rejected requires a deterministic automaton");
    if (initial_.empty()) return Word{};
    std::vector<int> parent(static_cast<std::size_t>(states()), -2);
    std::vector<Symbol> via(static_cast<std::size_t>(states()), 0);
    auto path = [&](int q) {
        Word w;
        while (parent[static_cast<std::size_t>(q)] >= 0) {
            w.push_back(via[static_cast<std::size_t>(q)]);
            q = parent[static_cast<std::size_t>(q)];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    std::deque<int> queue{initial_[0]};
    parent[static_cast<std::size_t>(initial_[0])] = -1;
    if (!accepting(initial_[0])) return Word{};
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int s = 0; s < alphabet_.size; ++s) {
            const auto& t = targets(q, static_cast<Symbol>(s));
            if (t.empty() || !accepting(t[0])) {
                Word w = path(q);
                w.push_back(static_cast<Symbol>(s));
                return w;
            }
            if (parent[static_cast<std::size_t>(t[0])] == -2) {
                parent[static_cast<std::size_t>(t[0])] = q;
                via[static_cast<std::size_t>(t[0])] = static_cast<Symbol>(s);
                queue.push_back(t[0]);
            }
        }
    }
    return std::nullopt;
}

std::vector<Word> WordAutomaton::words_of_length(std::size_t n, std::size_t limit) const {
    std::vector<Word> out;
    Word cur;
    // Depth-first in symbol order yields lexicographic output.
    auto rec = [&](auto&& self, const std::vector<int>& set) -> void {
        if (set.empty()) return;
        if (cur.size() == n) {
            for (int q : set)
                if (accepting(q)) {
                    if (out.size() >= limit) throw Inconclusive("too many words");
                    out.push_back(cur);
                    return;
                }
            return;
        }
        for (int s = 0; s < alphabet_.size; ++s) {
            std::vector<int> nxt;
            for (int q : set)
                for (int t : targets(q, static_cast<Symbol>(s))) nxt.push_back(t);
            std::sort(nxt.begin(), nxt.end());
            nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
            cur.push_back(static_cast<Symbol>(s));
            self(self, nxt);
            cur.pop_back();
        }
    };
    rec(rec, initial_);
    return out;
}

WordAutomaton sft_automaton(const Sft& sft) {
    const auto& m = sft.matcher();
    WordAutomaton a(sft.alphabet(), 0);
    for (int q = 0; q < m.states(); ++q) a.add_state(true);
    for (int q = 0; q < m.states(); ++q)
        for (int s = 0; s < sft.alphabet().size; ++s) {
            int t = m.next(q, static_cast<Symbol>(s));
            if (t >= 0) a.add_edge(q, static_cast<Symbol>(s), t);
        }
    if (m.states() > 0) a.set_initial(0);
    return a;
}

}  // namespace limca
