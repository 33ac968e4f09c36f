// Extraction-search tests: equal-split retention rule, the generic core
// engine vs the k=2 bitmask kernel, threshold grids, certificate
// verification with tamper detection, and the counting pipeline.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "indlab/extraction.hpp"

using namespace indlab;

namespace {

Mask random_subset(std::mt19937_64& rng, int n, int m) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> d(0, i);
        std::swap(idx[i], idx[d(rng)]);
    }
    Mask out = 0;
    for (int i = 0; i < m; ++i) out |= Mask(1) << idx[i];
    return out;
}

SetAdversary table_adversary(int n, std::uint64_t seed, int retained) {
    std::mt19937_64 rng(seed);
    auto table = std::make_shared<std::vector<Mask>>(std::size_t(1) << n, 0);
    for (const DenseMap& psi : enumerate_equidistributed(n, 2)) {
        std::uint32_t c = 0;
        for (size_t z = 0; z < psi.size(); ++z)
            if (psi[z] == 2) c |= 1u << z;
        (*table)[c] = random_subset(rng, n, retained);
    }
    SetAdversary adv;
    adv.n = n;
    adv.k = 2;
    adv.tau = Rat(retained, n);
    adv.assign = [table](const DenseMap& psi) {
        std::uint32_t c = 0;
        for (size_t z = 0; z < psi.size(); ++z)
            if (psi[z] == 2) c |= 1u << z;
        return (*table)[c];
    };
    return adv;
}

}  // namespace

TEST_CASE("equal-split retention: frozen small cases") {
    CHECK(equal_split_retained(2, 4, {1, 1, 2, 2}) == 0b1001);  // keeps {0,3}
    CHECK(equal_split_retained(2, 4, {1, 2, 1, 2}) == 0b1001);
    CHECK(equal_split_retained(2, 4, {2, 2, 1, 1}) == 0b1001);
    // every equidistributed psi keeps exactly (k-1)n/k elements
    for (int n : {4, 8}) {
        for (const DenseMap& psi : enumerate_equidistributed(n, 2))
            CHECK(popcount(equal_split_retained(2, n, psi)) == n / 2);
    }
    for (const DenseMap& psi : enumerate_equidistributed(9, 3))
        CHECK(popcount(equal_split_retained(3, 9, psi)) == 6);
    CHECK_THROWS(equal_split_adversary(2, 6));  // k^2 must divide n
}

TEST_CASE("full-retention adversary yields the coverage-limited maximum") {
    // Z_psi = everything: the only obstruction is |R| >= k^|J|; at n = 4,
    // |R([4],2)| = 6, so |J| = 2 is optimal
    SetAdversary adv;
    adv.n = 4;
    adv.k = 2;
    adv.tau = Rat(3, 4);
    adv.assign = [](const DenseMap&) { return full_mask(4); };
    ExtractionCertificate cert = half_to_indep_search(adv, Rat(3, 4));
    CHECK(cert.verified);
    CHECK(cert.exact);
    CHECK(popcount(cert.J) == 2);
    CHECK(cert.witnesses.size() == 4);
}

TEST_CASE("adversary violating its declared bound is rejected") {
    SetAdversary adv;
    adv.n = 4;
    adv.k = 2;
    adv.tau = Rat(3, 4);
    adv.assign = [](const DenseMap&) { return Mask(0b0001); };  // retains 1 < 3
    CHECK_THROWS(half_to_indep_search(adv, Rat(3, 4)));
    CHECK_THROWS(half_to_indep_search(adv, Rat(1, 4)));  // tau must exceed (k-1)/k
}

TEST_CASE("always-false predicate leaves the trivially extendable empty set") {
    CorePredicate never = [](const DenseMap&, const PatternMap&, Mask) { return false; };
    ExtractionCertificate cert = extendable_core(4, 2, never);
    CHECK(cert.J == 0);
    CHECK(cert.verified);
    CHECK(cert.exact);
    CHECK(cert.witnesses.empty());
}

TEST_CASE("bitmask kernel agrees with the serial reference on seeded adversaries") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        int n = 8;
        int m = 6;  // tau = 3/4
        SetAdversary adv = table_adversary(n, seed, m);
        ExtractionCertificate a = half_to_indep_search(adv, Rat(3, 4));
        ExtractionCertificate b = half_to_indep_search_fast2(adv, Rat(3, 4));
        CHECK(a.verified);
        CHECK(b.verified);
        CHECK(popcount(a.J) == popcount(b.J));
    }
}

TEST_CASE("certificate verification detects tampering") {
    SetAdversary adv = table_adversary(8, 42, 6);
    CorePredicate pred = [&adv](const DenseMap& psi, const PatternMap&, Mask J) {
        return (J & ~adv.assign(psi)) == 0;
    };
    ExtractionCertificate cert = half_to_indep_search(adv, Rat(3, 4));
    REQUIRE(cert.verified);
    REQUIRE(!cert.witnesses.empty());
    CHECK(verify_certificate(cert, pred));

    auto tampered = cert;  // non-equidistributed witness
    tampered.witnesses[0].psi.assign(8, 1);
    CHECK(!verify_certificate(tampered, pred));

    tampered = cert;  // witness no longer extends its sigma
    int e = mask_elems(cert.J)[0];
    tampered.witnesses[0].psi[e] = (std::uint8_t)(3 - tampered.witnesses[0].psi[e]);
    CHECK(!verify_certificate(tampered, pred));

    tampered = cert;  // missing pattern
    tampered.witnesses.pop_back();
    CHECK(!verify_certificate(tampered, pred));

    tampered = cert;  // duplicated pattern
    tampered.witnesses[1] = tampered.witnesses[0];
    CHECK(!verify_certificate(tampered, pred));

    tampered = cert;  // J grown beyond what the witnesses cover
    tampered.J |= full_mask(8);
    CHECK(!verify_certificate(tampered, pred));
}

TEST_CASE("threshold grid invariants") {
    // k=2, r=1/4, R=1/2, C=1, p=inf
    ThresholdGrid g = threshold_grid(2, Rat(1, 4), Rat(1, 2), Rat(1), true);
    CHECK(g.tau == Rat(1, 32));
    CHECK(g.M == 9);
    Rat bound = Rat(1, 8);
    CHECK(g.C / g.M < bound);
    CHECK(g.C / (g.M - 1) >= bound);  // M is minimal
    REQUIRE(!g.entries.empty());
    Rat top = -g.C + Rat(2 * g.M - 1) * g.C / g.M;
    bool sawTop = false;
    for (const auto& t : g.entries) {
        REQUIRE(t.size() == 2);
        Rat mean = (t[0] + t[1]) / 2;
        CHECK(mean >= g.r);
        for (const Rat& v : t) {
            CHECK(v >= -g.C);
            CHECK(v <= top);
        }
        if (t[0] == top && t[1] == top) sawTop = true;
    }
    CHECK(sawTop);
    CHECK_THROWS(threshold_grid(2, Rat(1, 2), Rat(1, 4), Rat(1), true));  // r < R required
    CHECK_THROWS(threshold_grid(2, Rat(1, 4), Rat(1, 2), Rat(1), false, 0.5));  // p > 1
}

TEST_CASE("function search finds thresholds for a benign constant adversary") {
    FuncAdversary adv;
    adv.n = 4;
    adv.k = 2;
    adv.pInf = true;
    adv.C = 1;
    adv.R = Rat(1, 2);
    adv.assign = [](const DenseMap& psi) {
        return std::vector<Rat>(psi.size(), Rat(1, 2));
    };
    ThresholdGrid grid = threshold_grid(2, Rat(1, 4), Rat(1, 2), Rat(1), true);
    ExtractionCertificate cert = func_to_indep_search(adv, grid);
    CHECK(cert.verified);
    CHECK(popcount(cert.J) == 2);  // coverage-limited as in the set case
    REQUIRE(cert.thresholds.size() == 2);
    // the constant 1/2 must clear both chosen thresholds
    CHECK(cert.thresholds[0] <= Rat(1, 2));
    CHECK(cert.thresholds[1] <= Rat(1, 2));
}

TEST_CASE("function adversary bound violations are rejected") {
    ThresholdGrid grid = threshold_grid(2, Rat(1, 4), Rat(1, 2), Rat(1), true);
    FuncAdversary adv;
    adv.n = 4;
    adv.k = 2;
    adv.pInf = true;
    adv.C = 1;
    adv.R = Rat(1, 2);
    adv.assign = [](const DenseMap& psi) { return std::vector<Rat>(psi.size(), Rat(2)); };
    CHECK_THROWS(func_to_indep_search(adv, grid));  // norm bound violated
    adv.assign = [](const DenseMap& psi) { return std::vector<Rat>(psi.size(), Rat(0)); };
    CHECK_THROWS(func_to_indep_search(adv, grid));  // mean bound violated
}

TEST_CASE("partial-colors reduction on the equal-split adversary") {
    SetAdversary adv = equal_split_adversary(2, 4);
    PartialIndepResult out = partial_indep_search(adv, 1, Rat(1, 2));
    CHECK(out.theta == 1);
    CHECK(out.R == Rat(1, 2));
    CHECK(out.cert.verified);
    CHECK(popcount(out.J) >= 1);
    CHECK(!out.A.empty());  // at least one color with threshold above -1
    CHECK_THROWS(partial_indep_search(adv, 3, Rat(1, 2)));  // m <= k
}

TEST_CASE("counting pipeline chain inequalities hold and recount exactly") {
    SetAdversary adv = equal_split_adversary(2, 8);
    HalfPipelineReport rep = proof_pipeline_half(adv, Rat(1, 2), Rat(1, 4));
    CHECK(rep.wSize == 2);
    CHECK(rep.chainOk);
    // independent recount of |Xi| = sum over psi of C(|Z_psi|, w)
    BigInt recount = 0;
    for (const DenseMap& psi : enumerate_equidistributed(8, 2))
        recount += binomial((unsigned)popcount(adv.assign(psi)), 2);
    CHECK(recount == rep.xiTotal);
    CHECK(popcount(rep.bestW) == 2);
    CHECK(rep.xiW <= rep.xiTotal);
    CHECK(rep.xiWPhi <= rep.xiW);
    CHECK(rep.traceSize == rep.xiWPhi);
    // the shattered set lives inside W
    CHECK((rep.shattered & ~rep.bestW) == 0);
}
