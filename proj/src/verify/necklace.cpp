#include "limca/verify/necklace.hpp"

#include <algorithm>
#include <thread>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

constexpr std::size_t kMaxBits = 32;

std::uint64_t mask_of(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void fkm(std::size_t t, std::size_t p, std::size_t n, std::vector<int>& a, std::vector<std::uint64_t>& out) {
    if (t > n) {
        if (n % p == 0) {
            std::uint64_t v = 0;
            for (std::size_t i = 1; i <= n; ++i) v = (v << 1) | static_cast<std::uint64_t>(a[i]);
            out.push_back(v);
        }
        return;
    }
    a[t] = a[t - p];
    fkm(t + 1, p, n, a, out);
    if (a[t - p] == 0) {
        a[t] = 1;
        fkm(t + 1, t, n, a, out);
    }
}

}  // namespace

std::uint64_t pack_bits(const Word& w) {
    std::uint64_t v = 0;
    for (Symbol s : w) v = (v << 1) | (s & 1);
    return v;
}

Word unpack_bits(std::uint64_t v, std::size_t n) {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<Symbol>((v >> (n - 1 - i)) & 1);
    return w;
}

std::uint64_t canonical_rotation(std::uint64_t v, std::size_t n) {
    const std::uint64_t m = mask_of(n);
    std::uint64_t best = v, cur = v;
    for (std::size_t s = 1; s < n; ++s) {
        cur = ((cur << 1) | (cur >> (n - 1))) & m;
        best = std::min(best, cur);
    }
    return best;
}

std::vector<std::uint64_t> binary_necklaces(std::size_t n) {
    if (n < 1 || n > kMaxBits) throw DomainError("necklace length must be in 1..32");
    std::vector<int> a(n + 1, 0);
    std::vector<std::uint64_t> out;
    fkm(1, 1, n, a, out);
    return out;
}

std::vector<Word> recurrent_necklaces(const CellularAutomaton& ca, std::size_t n, unsigned threads) {
    if (!(ca.alphabet() == kBinary)) throw DomainError("necklace enumeration needs a binary rule");
    const std::vector<std::uint64_t> reps = binary_necklaces(n);
    const std::size_t count = reps.size();
    std::vector<std::uint32_t> next(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count / 1024)));
    auto work = [&](std::size_t from, std::size_t to) {
        Word x(n), y(n);
        for (std::size_t i = from; i < to; ++i) {
            x = unpack_bits(reps[i], n);
            ca.rule().step_cyclic(x.data(), n, y.data());
            std::uint64_t c = canonical_rotation(pack_bits(y), n);
            next[i] = static_cast<std::uint32_t>(std::lower_bound(reps.begin(), reps.end(), c) - reps.begin());
        }
    };
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t from = std::min(count, t * chunk), to = std::min(count, from + chunk);
        pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();
    // 0 = unseen, 1 = on the current walk, 2 = done.
    std::vector<std::uint8_t> color(count, 0);
    std::vector<char> cyclic(count, 0);
    std::vector<std::size_t> walk;
    for (std::size_t s = 0; s < count; ++s) {
        if (color[s]) continue;
        walk.clear();
        std::size_t v = s;
        while (color[v] == 0) {
            color[v] = 1;
            walk.push_back(v);
            v = next[v];
        }
        if (color[v] == 1)
            for (std::size_t u = v;;) {
                cyclic[u] = 1;
                u = next[u];
                if (u == v) break;
            }
        for (std::size_t u : walk) color[u] = 2;
    }
    std::vector<Word> out;
    for (std::size_t i = 0; i < count; ++i)
        if (cyclic[i]) out.push_back(unpack_bits(reps[i], n));
    return out;
}

}  // namespace limca
