#pragma once
// Cover numbers over avoidance boxes: for S a family of maps Z -> {0..k},
// N_S is the least number of boxes U_phi = prod_z({0..k} \ {phi(z)}),
// phi in [k]^Z, covering S. Exact branch-and-bound below a size threshold,
// greedy upper / LP lower bracket above it.

#include <optional>
#include <vector>

#include "indlab/core.hpp"

namespace indlab {

struct CoverResult {
    enum class Status { EXACT, BRACKET, NOT_COVERABLE } status = Status::EXACT;
    BigInt value = 0;        // exact N_S (EXACT), or greedy upper bound (BRACKET)
    BigInt lowerBound = 0;   // LP-relaxation lower bound (ceil), always valid
    std::optional<DenseMap> uncoverable;  // witness psi for NOT_COVERABLE
};

struct CoverOptions {
    int exactThreshold = 8;        // exact search when |Z| <= this
    long long candidateCap = 1 << 22;  // refuse to expand more than this many phi
};

CoverResult cover_number(const MapFamily& S, const CoverOptions& opt = {});

}  // namespace indlab
