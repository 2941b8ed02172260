#include "limca/lang/sft.hpp"

#include <algorithm>
#include <deque>

#include "limca/core/errors.hpp"

namespace limca {

ForbiddenMatcher::ForbiddenMatcher(Alphabet a, const std::vector<Word>& forbidden) : alphabet_(a) {
    const std::size_t n = static_cast<std::size_t>(a.size);
    std::vector<std::vector<int>> child(1, std::vector<int>(n, -1));
    std::vector<bool> terminal(1, false);
    for (const Word& w : forbidden) {
        int s = 0;
        for (Symbol c : w) {
            if (child[static_cast<std::size_t>(s)][c] < 0) {
                child[static_cast<std::size_t>(s)][c] = static_cast<int>(child.size());
                child.emplace_back(n, -1);
                terminal.push_back(false);
            }
            s = child[static_cast<std::size_t>(s)][c];
        }
        terminal[static_cast<std::size_t>(s)] = true;
    }
    // Breadth-first failure links turn the trie into a complete automaton.
    std::vector<int> fail(child.size(), 0);
    std::vector<std::vector<int>> go(child.size(), std::vector<int>(n, 0));
    std::deque<int> queue;
    for (std::size_t c = 0; c < n; ++c) {
        int t = child[0][c];
        if (t >= 0) {
            go[0][c] = t;
            queue.push_back(t);
        }
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        std::size_t su = static_cast<std::size_t>(s);
        if (terminal[static_cast<std::size_t>(fail[su])]) terminal[su] = true;
        for (std::size_t c = 0; c < n; ++c) {
            int t = child[su][c];
            if (t >= 0) {
                fail[static_cast<std::size_t>(t)] = go[static_cast<std::size_t>(fail[su])][c];
                go[su][c] = t;
                queue.push_back(t);
            } else {
                go[su][c] = go[static_cast<std::size_t>(fail[su])][c];
            }
        }
    }
    // Renumber the surviving (non-terminal) states, keeping 0 as start.
    std::vector<int> id(child.size(), -1);
    int count = 0;
    for (std::size_t s = 0; s < child.size(); ++s)
        if (!terminal[s]) id[s] = count++;
    next_.assign(static_cast<std::size_t>(count), std::vector<int>(n, -1));
    if (terminal[0]) {
        // The empty word is forbidden: nothing is accepted.
        next_.clear();
        return;
    }
    for (std::size_t s = 0; s < child.size(); ++s) {
        if (terminal[s]) continue;
        for (std::size_t c = 0; c < n; ++c) next_[static_cast<std::size_t>(id[s])][c] = id[static_cast<std::size_t>(go[s][c])];
    }
}

Sft::Sft(Alphabet a, std::vector<Word> forbidden) : alphabet_(a), forbidden_(std::move(forbidden)) {
    for (const Word& w : forbidden_) {
        if (w.empty()) throw DomainError("forbidden word must be nonempty");
        check_word(a, w);
        order_ = std::max(order_, static_cast<int>(w.size()));
    }
    matcher_ = ForbiddenMatcher(a, forbidden_);
}

bool Sft::contains(const Word& w) const {
    if (matcher_.states() == 0) return false;
    int s = 0;
    for (Symbol c : w) {
        if (c >= alphabet_.size) return false;
        s = matcher_.next(s, c);
        if (s < 0) return false;
    }
    return true;
}

bool Sft::contains_periodic(const Word& w) const {
    if (w.empty()) return true;
    // Every factor of length <= order of the repetition occurs in w^k with
    // k covering order + |w| symbols.
    std::size_t need = w.size() + static_cast<std::size_t>(order_);
    return contains(repeat(w, need / w.size() + 1));
}

Sft Sft::parse(const KeyValues& kv) {
    Alphabet a{static_cast<int>(kv.get_int("alphabet"))};
    std::vector<Word> f;
    for (const auto& s : kv.get_all("forbid")) f.push_back(parse_word(s));
    return Sft(a, std::move(f));
}

Sft Sft::load(const std::string& path) { return parse(KeyValues::load(path)); }

std::string Sft::str() const {
    std::string s = "alphabet: " + std::to_string(alphabet_.size) + "\n";
    for (const Word& w : forbidden_) s += "forbid: " + format_word(w) + "\n";
    return s;
}

}  // namespace limca
