#pragma once
// Verification suites shared by the CLI and the acceptance runner. Each
// suite exercises one family of claims end to end and returns certificates
// whose payloads are re-checked before `verified` is set.

#include <cstdint>
#include <vector>

#include "indlab/certificate.hpp"
#include "indlab/toeplitz.hpp"

namespace indlab {

struct SuiteResult {
    std::vector<Certificate> certs;
    bool allVerified() const {
        for (const auto& c : certs)
            if (!c.verified) return false;
        return !certs.empty();
    }
};

// shattering bound, exhaustive over all families S ⊆ {1,2}^[n], n <= nMax
SuiteResult suite_sauer(int nMax = 4);

// the equal-split adversary admits no fully extendable 4-set (k = 2)
SuiteResult suite_equal_split(const std::vector<int>& ns = {4, 8, 12, 16});

// half-retention positivity: exhaustive 4^6 adversaries at n = 4 plus
// seeded adversaries at n in {8, 10}; every search returns |J| >= 1
SuiteResult suite_half_positivity(std::uint64_t seed, int trials = 1000);

// deviant-map census: convolution count vs full enumeration, and the
// closed-form rate constant vs numeric maximization
SuiteResult suite_census();

// equidistributed-count lower bound at the proof threshold
SuiteResult suite_regular_bound();

// nested residue system: construction, properties, and period certificates
SuiteResult suite_toeplitz_build(int depth = 4, long long sRange = 10'000,
                                 int spotCheck = 25);

// pattern witnesses for p <= 4 and the pair-independence audits
SuiteResult suite_toeplitz_independence(const ToeplitzSpec* prebuilt = nullptr);

// two-component subshift: density collapse for the cross-component pair,
// full density for controls, and the measure-to-point reduction
SuiteResult suite_not_ie(int nMax = 32);

// layer-cake split and the three-term audit on seeded instances
SuiteResult suite_measures(std::uint64_t seed, int trials = 200);

// sign embedding, the bound audit chain, and the net intersection
SuiteResult suite_banach(std::uint64_t seed, int trials = 200);

}  // namespace indlab
