// Acceptance gate: runs every verification suite and prints one pass/fail
// line per criterion. The final criterion reruns all seeded suites with the
// same seeds and demands byte-identical certificates. Exits nonzero if any
// criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "indlab/suites.hpp"

using namespace indlab;

namespace {

constexpr std::uint64_t SEED = 2026;

struct RunOutput {
    std::vector<bool> criteria;          // criteria 1..10, index 0..9
    std::string certBytes;               // concatenated canonical certificates
};

void absorb(RunOutput& out, const SuiteResult& res, int criterion) {
    if ((int)out.criteria.size() < criterion) out.criteria.resize(criterion, true);
    out.criteria[criterion - 1] = out.criteria[criterion - 1] && res.allVerified();
    for (const auto& c : res.certs) out.certBytes += certificate_json(c);
}

RunOutput run_all(const ToeplitzSpec& spec4) {
    RunOutput out;
    out.criteria.assign(10, true);
    absorb(out, suite_sauer(4), 1);
    absorb(out, suite_equal_split({4, 8, 12, 16}), 2);
    absorb(out, suite_half_positivity(SEED, 1000), 3);
    absorb(out, suite_census(), 4);
    absorb(out, suite_regular_bound(), 5);
    absorb(out, suite_toeplitz_build(4, 10'000, 25), 6);
    absorb(out, suite_toeplitz_independence(&spec4), 7);
    absorb(out, suite_not_ie(32), 8);
    absorb(out, suite_measures(SEED, 200), 9);
    absorb(out, suite_banach(SEED, 200), 10);
    return out;
}

const char* const DESCRIPTIONS[11] = {
    "shattering bound, exhaustive n <= 4",
    "equal-split adversary admits no extendable 4-set, n in {4,8,12,16}",
    "half-retention positivity, exhaustive 4^6 plus 1000 seeded trials",
    "deviant-map census: convolution = enumeration, rate constant matches",
    "equidistributed-count lower bound at the frozen thresholds",
    "residue system: properties verified, periodic on |s| <= 10^4",
    "residue system: pattern witnesses p <= 4, pair audits find no 2-set",
    "cross-component density collapse and the measure-to-point reduction",
    "layer-cake split and three-term audit, 200 seeded instances each",
    "embedding chain: isometry, size-bound audit, simplex net intersection",
    "determinism: identical seeds give byte-identical certificates",
};

}  // namespace

int main() {
    ToeplitzSpec spec4 = build_spec(4);
    RunOutput first = run_all(spec4);
    RunOutput second = run_all(spec4);

    bool pass[11];
    for (int i = 0; i < 10; ++i) pass[i] = first.criteria[i];
    pass[10] = first.certBytes == second.certBytes && !first.certBytes.empty();

    bool all = true;
    for (int i = 0; i < 11; ++i) {
        std::printf("criterion %2d: %s  %s\n", i + 1, pass[i] ? "PASS" : "FAIL",
                    DESCRIPTIONS[i]);
        all = all && pass[i];
    }
    std::printf("%s\n", all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
    return all ? 0 : 1;
}
