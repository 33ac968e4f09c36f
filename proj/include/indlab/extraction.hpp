#pragma once
// Independence-extraction searches: given an adversary that answers every
// equidistributed coloring psi with a retained subset Z_psi (set adversary)
// or a function f_psi (function adversary), find the largest J such that
// every pattern sigma: J -> [k] extends to a psi passing the adversary's
// predicate. Includes the explicit equal-split adversary, the threshold
// grid for the function form, the partial-colors reduction, and the
// counting pipeline that mirrors the existence proof step by step.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "indlab/core.hpp"

namespace indlab {

struct SetAdversary {
    int n = 0, k = 2;
    Rat tau;  // declared bound |Z_psi| >= tau * n
    std::uint64_t seed = 0;
    std::function<Mask(const DenseMap&)> assign;  // pure, deterministic
};

struct FuncAdversary {
    int n = 0, k = 2;
    bool pInf = true;  // p = infinity; otherwise p finite (> 1)
    double p = 0.0;    // used when !pInf
    Rat C, R;
    std::uint64_t seed = 0;
    std::function<std::vector<Rat>(const DenseMap&)> assign;
};

struct ThresholdGrid {
    int k = 1, M = 1;
    bool pInf = true;
    double p = 0.0;
    Rat tau, C, r;
    std::vector<std::vector<Rat>> entries;  // each of length k, mean >= r
};

struct SigmaWitness {
    std::vector<std::uint8_t> sigma;  // dense over [n]; 0 outside J
    DenseMap psi;
};

struct ExtractionCertificate {
    int n = 0, k = 2;
    Mask J = 0;
    std::vector<Rat> thresholds;  // chosen t (function searches), empty otherwise
    std::vector<SigmaWitness> witnesses;
    bool verified = false;
    bool exact = true;       // exhaustive search completed
    bool budgetHit = false;  // best-found mode was entered
};

// shared engine: largest J (descending-size exhaustive search within
// budget; greedy best-found otherwise) such that every sigma: J -> [k]
// has a witnessing extension psi in R([n],k) with predicate true
using CorePredicate =
    std::function<bool(const DenseMap& psi, const PatternMap& sigma, Mask J)>;

ExtractionCertificate extendable_core(int n, int k, const CorePredicate& pred,
                                      bool maximize = true,
                                      long long workBudget = 2'000'000'000LL);

// re-check a certificate against the predicate (every witness must be
// equidistributed, extend its sigma, and satisfy the predicate)
bool verify_certificate(const ExtractionCertificate& cert, const CorePredicate& pred);

// --- lemma specializations ----------------------------------------------

ExtractionCertificate half_to_indep_search(const SetAdversary& adv, const Rat& tau,
                                           long long workBudget = 2'000'000'000LL);

SetAdversary equal_split_adversary(int k, int n);
// the retained set computed by the equal-split rule for one psi
Mask equal_split_retained(int k, int n, const DenseMap& psi);

ThresholdGrid threshold_grid(int k, const Rat& r, const Rat& R, const Rat& C, bool pInf,
                             double p = 0.0);

ExtractionCertificate func_to_indep_search(const FuncAdversary& adv,
                                           const ThresholdGrid& grid,
                                           long long workBudget = 2'000'000'000LL);

struct PartialIndepResult {
    Mask J = 0;
    std::vector<int> A;  // colors with threshold > -1
    ExtractionCertificate cert;
    Rat theta, C, R;
};

PartialIndepResult partial_indep_search(const SetAdversary& adv, int m, const Rat& tau,
                                        long long workBudget = 2'000'000'000LL);

// --- fast path + counting pipeline ---------------------------------------

// optimized k=2 subset-predicate search over bitmask tables; must agree
// with extendable_core (the serial reference) — compared in tests and in
// the benchmark tool
ExtractionCertificate half_to_indep_search_fast2(const SetAdversary& adv, const Rat& tau);

struct HalfPipelineReport {
    int n = 0, k = 2, wSize = 0;
    BigInt xiTotal;       // |Xi|
    Mask bestW = 0;
    BigInt xiW;           // |Xi_W| for the maximizing W
    DenseMap bestPhi;     // phi: Z\W -> [k] maximizing |Xi_{W,phi}|
    BigInt xiWPhi;        // |Xi_{W,phi}|
    BigInt traceSize;     // |S| (= xiWPhi; restrictions are distinct)
    Mask shattered = 0;   // largest_shattered(S) inside W
    bool chainOk = false; // |Xi_W| * C(n,w) >= |Xi| and |Xi_{W,phi}| * k^{n-w} >= |Xi_W|
};

HalfPipelineReport proof_pipeline_half(const SetAdversary& adv, const Rat& tau,
                                       const Rat& delta);

}  // namespace indlab
