#pragma once
// Exact-rational convex geometry over small dimensions: convex-hull
// membership with Farkas certificates, the sign-pattern l_1 -> l_inf
// embedding, dual images of embeddings, the signed-threshold extraction
// over a vector family, the resulting log-size bound audit, and the
// simplex net intersection argument.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "indlab/extraction.hpp"
#include "indlab/lp.hpp"

namespace indlab {

// vectors declared inside B_1(l_p^n); exact norm check for p in {1, inf},
// 1e-12 tolerance otherwise
struct VectorFamily {
    int n = 0;
    std::vector<std::vector<Rat>> vectors;
    bool pInf = true;  // exponent context
    double p = 1.0;    // used when !pInf (p >= 1)
    bool in_unit_ball() const;
};

struct LinearMapData {
    std::vector<std::vector<Rat>> matrix;  // m x n
    int rows() const { return (int)matrix.size(); }
    int cols() const { return matrix.empty() ? 0 : (int)matrix[0].size(); }
    std::vector<Rat> apply(const std::vector<Rat>& x) const;
};

// ---- hull membership ---------------------------------------------------------

struct HullResult {
    bool feasible = false;
    std::vector<Rat> coeffs;  // t_v >= 0, sum <= 1, sum t_v v = target
    std::vector<Rat> farkas;  // separating certificate on infeasibility
};

// membership of target in conv(E ∪ {0}); coefficients re-verified by
// substitution, infeasibility certified by a re-checked Farkas vector
HullResult hull_member(const VectorFamily& E, const std::vector<Rat>& target);

// ---- sign embedding and its dual ---------------------------------------------

// the 2^{n-1}-row sign-pattern matrix: rows <x, eps> over eps in {±1}^n
// with eps_1 = +1; an isometry l_1^n -> l_inf^{2^{n-1}}
LinearMapData sign_embedding(int n);

// exact check of ||Phi x||_inf = ||x||_1 on seeded rational vectors
bool sign_embedding_isometry_check(const LinearMapData& Phi, std::uint64_t seed,
                                   int trials = 100);

struct DualImageReport {
    VectorFamily Eprime;       // ± rows of Phi, rescaled by 1/||Phi||
    Rat norm;                  // the rescale factor ||Phi|| (q -> inf operator norm)
    bool dualityChecked = false;   // <Phi*(e_i), x> = (Phi x)_i on seeded x
    bool containment = false;      // Phi*(B_1(l_1^m)) ⊇ B_{1/C}(l_p^n)
    bool containmentExact = false; // vertex-certified (p in {1, inf})
    std::string failVertex;
};

// E' = Phi*(± standard basis), with the dual-ball containment check for
// the dual exponent of q; q in {1} ∪ (1, inf) (q = 1 gives p = inf)
DualImageReport dual_image(const LinearMapData& Phi, int q, const Rat& C,
                           std::uint64_t seed = 0);

// ---- signed-threshold extraction ------------------------------------------------

struct FlmExtractResult {
    ExtractionCertificate cert;
    Rat t1, t2;  // v(j) >= t1 * n^{-1/p} on sigma^{-1}(1), <= t2 * n^{-1/p} on sigma^{-1}(2)
    Rat scale;   // n^{-1/p}
    bool preconditionOk = true;
    std::string failedPsi;  // a psi whose target misses the hull
    // per-sigma witness vectors v (pairwise distinct when t1 > t2)
    std::vector<std::pair<std::vector<std::uint8_t>, std::vector<Rat>>> sigmaWitnesses;
};

// for each coloring psi, solve hull membership of the signed target
// g_psi(i) = ±delta n^{-1/p}, pick the support vector maximizing the
// signed average, and search for the largest J with per-color sign
// thresholds (grid (k=2, delta/2, delta, 1))
FlmExtractResult flm_extract(const VectorFamily& E, const Rat& delta, std::uint64_t seed = 0,
                             int sampleTrials = 200);

// ---- the log-size bound audit ----------------------------------------------------

struct FlmBoundAudit {
    int n = 0, m = 0;
    Rat C;
    int Jsize = 0;
    long long EprimeSize = 0;
    bool embeddingVerified = false;
    bool witnessesDistinct = false;
    bool chainPass = false;  // 2^{|J|} <= |E'| <= 2m
    DualImageReport dual;
    FlmExtractResult extract;
};

// Phi must C-embed l_q^n into l_inf^m; runs dual_image then flm_extract
// with delta = 1/C and audits the pigeonhole chain
FlmBoundAudit flm_bound_audit(int q, const Rat& C, const LinearMapData& Phi,
                              std::uint64_t seed = 0);

// ---- simplex net intersection ------------------------------------------------------

struct SimplexNet {
    int m = 0, D = 1;
    Rat C;
    Rat epsilon;  // fixed to 1/4
    std::vector<std::vector<Rat>> Lambda;  // grid probability vectors, mesh <= 1/(4C)
};

SimplexNet simplex_net(int m, const Rat& C);

struct NetIntersection {
    bool feasible = false;
    std::vector<Rat> point;   // every coordinate >= 1/2 exactly
    std::vector<Rat> coeffs;  // convex coefficients over Lambda
    SimplexNet net;
};

// given w: Lambda -> R^m with ||w||_inf <= C and <w(lambda), lambda> >= 3/4,
// find a convex combination of the w-values with all coordinates >= 1/2
NetIntersection simplex_net_intersection(
    int m, const Rat& C,
    const std::function<std::vector<Rat>(const std::vector<Rat>&)>& w);

}  // namespace indlab
