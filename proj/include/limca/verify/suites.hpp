#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "limca/delta/delta.hpp"

namespace limca {

enum class Verdict { pass, fail, inconclusive };
std::string verdict_name(Verdict v);

struct Violation {
    std::string input, expected, got;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    // Suite-specific counters, in the order they were recorded.
    std::vector<std::pair<std::string, std::string>> facts;
    std::size_t violation_count = 0;
    std::vector<Violation> violations;  // first few only
    bool budget_exhausted = false;
    double elapsed = 0;  // seconds; not part of str()
    Verdict verdict = Verdict::pass;

    void fact(const std::string& key, const std::string& value) { facts.emplace_back(key, value); }
    void violate(std::string input, std::string expected, std::string got);
    // Sets the verdict from the violations and budget flag.
    void finish();
    // Line-oriented key: value text. Deterministic for fixed parameters.
    std::string str() const;
};

struct SuiteParams {
    std::size_t samples = 0;  // 0: the suite's default
    std::uint64_t seed = 42;
    // Reduction manifest; empty: the shipped reference instance (prodnilp:
    // the shipped instance with a nilpotent N).
    std::string manifest;
    DeltaMutation mutation = DeltaMutation::none;
    // Run squad and fire against squad_without_gamma_isolation.
    bool squad_without_isolation = false;
    std::string code = "toy";               // freezing, code-roundtrip: toy | formula
    std::vector<std::size_t> periods;       // ssgamma, prodnilp, fire; default k and 2k
    int depth = 3;                          // fire: backward depth
    int max_span = 6;                       // fire: widest γ ... b span checked
    int max_n = 32;                         // squad
    int count = 3;                          // sigomeg: number of J values
};

const std::vector<std::string>& suite_names();
// Throws DomainError on an unknown suite or bad parameters.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

}  // namespace limca
