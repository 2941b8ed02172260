#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limca/core/kv.hpp"
#include "limca/lang/ranked.hpp"

namespace limca {

// Unbordered: no proper suffix equals a prefix.
bool is_strongly_freezing_word(const Word& u);

struct FreezingReport {
    bool ok = true;
    bool sampled = false;
    std::size_t pairs_checked = 0;
    // Overlapping (pair, offset) hits, in total and per offset.
    std::size_t violations = 0;
    std::map<std::size_t, std::size_t> by_offset;
    // First violation: E[first] overlaps E[second] at the given offset.
    std::size_t first = 0, second = 0, offset = 0;
};

// Exhaustive over ordered pairs when |E|^2 <= exhaustive_limit, otherwise
// `samples` random pairs (seeded). Every offset 1..len-1 of every pair is
// tested.
FreezingReport check_strongly_freezing_set(const std::vector<Word>& e, std::size_t exhaustive_limit = 1u << 24,
                                           std::size_t samples = 10000, std::uint64_t seed = 1);
bool is_strongly_freezing_set(const std::vector<Word>& e);

// u itself when already freezing, else u.b^c with b = 1-u[0] and the
// smallest c >= 1 that gives a freezing word.
Word extend_strongly_freezing(const Word& u);

// C = A x B, symbol (a, b) has index a*|B| + b and is written as the
// l-bit binary of its index, most significant bit first.
class SymbolCoding {
public:
    SymbolCoding() = default;
    SymbolCoding(int a_size, int b_size);

    int a_size() const { return a_size_; }
    int b_size() const { return b_size_; }
    int size() const { return a_size_ * b_size_; }
    int width() const { return width_; }
    int index(int a, int b) const;
    std::pair<int, int> split(int index) const;
    Word bits(int index) const;
    // Throws DomainError on a word that is not the image of a symbol.
    int from_bits(const Word& w) const;

private:
    int a_size_ = 1, b_size_ = 1, width_ = 1;
};

enum class CodeMode { formula, toy };

struct Decoded {
    Word z;
    int symbol = 0;
    bool operator==(const Decoded&) const = default;
};

class FreezingCode {
public:
    CodeMode mode() const { return mode_; }
    const Sft& sigma() const { return sigma_; }
    const Word& u_sigma() const { return u_sigma_; }
    const Word& u_e() const { return u_e_; }
    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    std::size_t l() const { return static_cast<std::size_t>(coding_.width()); }
    const SymbolCoding& coding() const { return coding_; }
    // L_{m|u_E|}(Σ); formula mode only.
    const RankedLanguage& ranked() const { return *ranked_; }
    // Toy mode: the z-track pool and the explicit table, entry z*|C|+c.
    const std::vector<Word>& pool() const { return pool_; }
    const std::vector<Word>& table() const { return table_; }

    Word encode(const Word& z, int symbol) const;
    Decoded decode(const Word& w) const;
    // Empty when w is not a codeword.
    std::optional<Decoded> try_decode(const Word& w) const;
    bool is_codeword(const Word& w) const { return try_decode(w).has_value(); }
    // Toy: index of z in the pool, or -1.
    int pool_index(const Word& z) const;
    // z-track words the code accepts: the pool (toy) or L_k(Σ) (formula).
    bool accepts_z(const Word& z) const;

    std::string str() const;
    static FreezingCode parse(const KeyValues& kv);
    static FreezingCode load(const std::string& path);

    friend FreezingCode build_code(const Word& u_sigma, const SymbolCoding& coding);
    friend FreezingCode make_toy_code(const Sft& sigma, const Word& u_sigma, std::vector<Word> pool,
                                      const SymbolCoding& coding, std::vector<Word> table);

private:
    void index_table();

    CodeMode mode_ = CodeMode::formula;
    Sft sigma_;
    Word u_sigma_, u_e_;
    std::size_t m_ = 0, n_ = 0, k_ = 0;
    SymbolCoding coding_;
    std::shared_ptr<const RankedLanguage> ranked_;
    std::vector<Word> pool_, table_;
    std::unordered_map<std::string, std::size_t> lookup_, pool_lookup_;
};

// Smallest m with 2^(m|u|-2|u|-l) >= (2^|u|-1)^m, exact.
std::size_t minimal_m(std::size_t u_len, std::size_t l);
bool m_bound_holds(std::size_t u_len, std::size_t l, std::size_t m);

FreezingCode build_code(const Word& u_sigma, const SymbolCoding& coding);

// Toy codes: exhaustive over the table. Formula codes: `pairs` pairs of
// codewords of uniformly drawn (z, v), seeded.
FreezingReport check_code_freezing(const FreezingCode& code, std::size_t pairs = 10000, std::uint64_t seed = 1);

// Validates the table (length k, outside L_k(Σ), injective, freezing).
FreezingCode make_toy_code(const Sft& sigma, const Word& u_sigma, std::vector<Word> pool, const SymbolCoding& coding,
                           std::vector<Word> table);

// Backtracking search for |pool|*|C| words of 2^k \ L_k(Σ) forming a
// strongly freezing set. Throws DomainError when none is found.
FreezingCode search_toy_code(const Sft& sigma, const Word& u_sigma, const std::vector<Word>& pool,
                             const SymbolCoding& coding, std::size_t k, std::size_t node_budget = 1u << 22);

}  // namespace limca
