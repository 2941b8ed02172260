#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "limca/core/rule_io.hpp"
#include "limca/delta/delta.hpp"

namespace limca {

struct QuiescentSquare {
    CellularAutomaton ca;
    Symbol quiescent = 0;
    bool squared = false;
};

// g itself when it has a quiescent state (0 preferred), else g^2.
QuiescentSquare square_quiescent(const CellularAutomaton& g);

Word complement(const Word& w);
// The binary rule conjugated by 0 <-> 1.
CellularAutomaton complement_rule(const CellularAutomaton& g);

struct ReductionOptions {
    CodeMode mode = CodeMode::toy;
    std::size_t toy_k = 14;
    // Toy z-pool; empty means {0^k, 0^(k/2) 1 0^(k/2-1)}.
    std::vector<Word> pool;
    // Prebuilt code (must match u_Σ and C); skips the search.
    std::shared_ptr<const FreezingCode> code;
    std::size_t agree_samples = 2000;
    std::uint64_t seed = 1;
};

struct ReductionInstance {
    // After normalization, so q = 0.
    CellularAutomaton g0, g1;
    bool complemented = false;
    CellularAutomaton n_ca;
    Symbol theta = 0;
    SquadAutomaton squad;
    Word u0, u1, u_sigma;
    Sft sigma;
    std::shared_ptr<const FreezingCode> code;
    DeltaAutomaton f0, f1;

    const DeltaAutomaton& f(int which) const { return which == 0 ? f0 : f1; }
    // F_which compiled again with a defect.
    DeltaAutomaton compile(int which, DeltaMutation m) const;
};

ReductionInstance build_reduction_pair(const CellularAutomaton& g0, const CellularAutomaton& g1,
                                       const CellularAutomaton& n_ca, Symbol theta, const SquadAutomaton& squad,
                                       const ReductionOptions& options = {});

struct AgreementReport {
    std::size_t samples = 0;
    std::size_t compared = 0;  // windows outside case (1) under both rules
    std::size_t disagreements = 0;
    std::vector<Word> examples;  // first few disagreeing windows
};

// Windows from sample_window; outputs must match whenever neither rule
// applies case (1).
AgreementReport check_pair_agreement(const DeltaAutomaton& a, const DeltaAutomaton& b, std::size_t samples,
                                     std::uint64_t seed);

enum class Nilpotency { nilpotent, non_nilpotent, inconclusive };

struct NilpotencyVerdict {
    Nilpotency kind = Nilpotency::inconclusive;
    std::size_t steps = 0;  // nilpotent: t
    Word witness;           // non_nilpotent: one period of a θ-free cycle
};

// nilpotent(t) for the least t <= depth with no state other than θ
// reachable after t steps; otherwise non_nilpotent with the shortlex-first
// periodic point of period <= width whose cycle avoids θ.
NilpotencyVerdict nilpotency_probe(const CellularAutomaton& n, Symbol theta, std::size_t width, std::size_t depth);
std::string format_verdict(const NilpotencyVerdict& v);

// True iff oracle(F_0) and not oracle(F_1).
bool decide_nilpotency_with_oracle(const ReductionInstance& inst,
                                   const std::function<bool(const CellularAutomaton&)>& oracle);

struct SigomegWitness {
    PeriodicConfiguration x_tilde;
    std::size_t j = 0;  // Δ^j(x̃) = x
    int segment = 0;    // squad segment length used
};

// Encodes x (period a multiple of k, blocks accepted by the code) with the
// θ-free N-track y and repeated squad seeds of length idx+2. y defaults to
// the probe's witness.
SigomegWitness sigomeg_witness(const ReductionInstance& inst, int which, const PeriodicConfiguration& x, int idx,
                               const Word& y = {});

// Manifest keys: g0, g1, n, theta, squad (manifest), and either code (file)
// or mode (toy|formula). Paths are relative to the manifest.
ReductionInstance load_reduction(const std::string& manifest_path, ReductionOptions options = {});

// Resolves `proc: delta` rule files (keys manifest, which, mutation).
ProcResolver delta_resolver();
std::string format_delta_rule(const DeltaAutomaton& d, const std::string& manifest, int which);

}  // namespace limca
