// Benchmark of the parallel kernels against their serial reference
// implementations: the bitmask subset-extraction kernel vs the generic
// search engine, and the windowed pair audit vs the direct scan. Results
// must agree; disagreement exits nonzero.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <vector>

#include "indlab/extraction.hpp"
#include "indlab/toeplitz.hpp"

using namespace indlab;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

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

}  // namespace

int main() {
    bool ok = true;
    std::cout << "kernel benchmark (parallel vs serial reference)\n\n";

    // subset-extraction search: generic engine vs bitmask kernel
    std::cout << "extraction search, tau = 3/4, seeded adversaries:\n";
    std::cout << "  n   serial[s]  fast2[s]  |J|\n";
    for (int n : {8, 10, 12}) {
        std::mt19937_64 rng(12345 + (std::uint64_t)n);
        std::vector<DenseMap> R = enumerate_equidistributed(n, 2);
        std::vector<Mask> table(std::size_t(1) << n, 0);
        auto code = [](const DenseMap& psi) {
            std::uint32_t c = 0;
            for (size_t z = 0; z < psi.size(); ++z)
                if (psi[z] == 2) c |= 1u << z;
            return c;
        };
        int m = (3 * n + 3) / 4;
        for (const DenseMap& psi : R) table[code(psi)] = random_subset(rng, n, m);
        SetAdversary adv;
        adv.n = n;
        adv.k = 2;
        adv.tau = Rat(3, 4);
        adv.assign = [&](const DenseMap& psi) { return table[code(psi)]; };
        auto t0 = Clock::now();
        ExtractionCertificate serial = half_to_indep_search(adv, Rat(3, 4));
        auto t1 = Clock::now();
        ExtractionCertificate fast = half_to_indep_search_fast2(adv, Rat(3, 4));
        auto t2 = Clock::now();
        std::printf("  %2d  %9.4f  %8.4f  %d\n", n, secs(t0, t1), secs(t1, t2),
                    popcount(fast.J));
        if (popcount(serial.J) != popcount(fast.J) || !serial.verified || !fast.verified) {
            std::cerr << "  MISMATCH at n=" << n << "\n";
            ok = false;
        }
    }

    // pair audit: bitset difference kernel vs direct scan
    std::cout << "\npair audit, depth-3 residue system:\n";
    ToeplitzSpec spec = build_spec(3);
    PairAuditConfig cfg;
    cfg.sLo = -56;
    cfg.sHi = 56;
    cfg.abLo = -3528;
    cfg.abHi = 3528;
    std::cout << "  pair      serial[s]  bitset[s]\n";
    for (int mode = 0; mode < 2; ++mode) {
        cfg.product = mode == 1;
        cfg.c1 = 1;
        cfg.c2 = 3;
        auto t0 = Clock::now();
        PairAuditResult serial = pair_independence_audit_serial(spec, cfg);
        auto t1 = Clock::now();
        PairAuditResult fast = pair_independence_audit(spec, cfg);
        auto t2 = Clock::now();
        std::printf("  %-8s  %9.4f  %9.4f\n", mode ? "product" : "plain", secs(t0, t1),
                    secs(t1, t2));
        if (serial.independentPairs != fast.independentPairs ||
            serial.inconclusivePairs != fast.inconclusivePairs ||
            serial.nearMissPairs != fast.nearMissPairs ||
            serial.maxIndependenceSize != fast.maxIndependenceSize) {
            std::cerr << "  MISMATCH in audit counts\n";
            ok = false;
        }
    }

    std::cout << (ok ? "\nall kernels agree\n" : "\nKERNEL DISAGREEMENT\n");
    return ok ? 0 : 1;
}
