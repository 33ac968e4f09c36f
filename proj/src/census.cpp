#include "indlab/census.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace indlab {

double shannon_g(double t) {
    if (t < 0.0 || t > 1.0) throw std::domain_error("shannon_g: t outside [0,1]");
    if (t == 0.0) return 0.0;
    return -t * std::log(t);
}

double entropy_h(double t, int k) {
    if (k < 2) throw std::domain_error("entropy_h: k >= 2 required");
    return shannon_g(t) + shannon_g(1.0 - t) + (1.0 - t) * std::log((double)(k - 1));
}

double entropy_h_max_outside(double eps, int k) {
    // fine scan + local refinement on each interval
    auto scan = [&](double lo, double hi) {
        if (lo > hi) return -1e300;
        double best = -1e300;
        const int STEPS = 200000;
        for (int i = 0; i <= STEPS; ++i) {
            double t = lo + (hi - lo) * i / STEPS;
            best = std::max(best, entropy_h(t, k));
        }
        return best;
    };
    double c = 1.0 / k;
    return std::max(scan(0.0, c - eps), scan(c + eps, 1.0));
}

namespace {

// exact count of deviant colorings of a single block of size b
BigInt deviant_block_count(int b, int k, const Rat& eps) {
    BigInt total = 0;
    std::vector<int> comp(k, 0);
    // enumerate compositions of b into k nonnegative parts
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == k - 1) {
            comp[idx] = rem;
            bool deviant = false;
            for (int j = 0; j < k; ++j) {
                // | c_j/b - 1/k | >= eps  <=>  |k c_j - b| >= eps k b
                Rat lhs(std::abs((long long)k * comp[j] - b), 1);
                if (lhs >= eps * k * b) {
                    deviant = true;
                    break;
                }
            }
            if (deviant) total += multinomial(comp);
            return;
        }
        for (int c = 0; c <= rem; ++c) {
            comp[idx] = c;
            rec(idx + 1, rem - c);
        }
    };
    rec(0, b);
    return total;
}

}  // namespace

BigInt deviant_map_count_bruteforce(int n, int k, const std::vector<int>& blockSizes,
                                    const Rat& epsilon, const Rat& eta) {
    std::vector<std::pair<int, int>> blocks;  // (start, size), consecutive layout
    int at = 0;
    for (int b : blockSizes) {
        blocks.push_back({at, b});
        at += b;
    }
    BigInt count = 0;
    std::vector<int> psi(n, 1);
    for (;;) {
        bool deviant = false;
        for (auto [start, b] : blocks) {
            if (Rat(b, n) < eta) continue;
            for (int j = 1; j <= k && !deviant; ++j) {
                int cj = 0;
                for (int z = start; z < start + b; ++z)
                    if (psi[z] == j) cj++;
                Rat lhs(std::abs((long long)k * cj - b), 1);
                if (lhs >= epsilon * k * b) deviant = true;
            }
            if (deviant) break;
        }
        if (deviant) ++count;
        int z = 0;
        for (; z < n; ++z) {
            if (psi[z] < k) {
                psi[z]++;
                break;
            }
            psi[z] = 1;
        }
        if (z == n) break;
    }
    return count;
}

DeviationCensus deviant_map_census(int n, int k, const std::vector<int>& blockSizes,
                                   const Rat& epsilon, const Rat& eta, long long enumCap) {
    int sum = 0;
    for (int b : blockSizes) {
        if (b <= 0) throw std::invalid_argument("deviant_map_census: block sizes positive");
        sum += b;
    }
    if (sum != n) throw std::invalid_argument("deviant_map_census: blocks must partition Z");
    if (!(eta > 0 && eta < 1)) throw std::invalid_argument("deviant_map_census: eta in (0,1)");
    if (!(epsilon > 0 && epsilon < Rat(1, k)))
        throw std::invalid_argument("deviant_map_census: epsilon in (0,1/k)");

    DeviationCensus out;
    out.n = n;
    out.k = k;
    out.blockSizes = blockSizes;
    out.epsilon = epsilon;
    out.eta = eta;

    double kn = std::pow((double)k, (double)n);
    if (kn <= (double)enumCap) {
        out.count = deviant_map_count_bruteforce(n, k, blockSizes, epsilon, eta);
    } else {
        // blocks are independent; a map is non-deviant iff every large
        // block is non-deviant
        BigInt nondeviant = 1;
        for (int b : blockSizes) {
            BigInt blockTotal = ipow(k, (unsigned)b);
            if (Rat(b, n) >= eta)
                nondeviant *= blockTotal - deviant_block_count(b, k, epsilon);
            else
                nondeviant *= blockTotal;
        }
        out.count = ipow(k, (unsigned)n) - nondeviant;
    }

    double eps = to_double(epsilon), etad = to_double(eta), c = 1.0 / k;
    double hmax = std::max(entropy_h(c - eps, k), entropy_h(c + eps, k));
    out.delta1 = (etad / 2.0) * (entropy_h(c, k) - hmax);

    // smallest N >= 3 with t(t+1)k/eta <= e^{t delta1/eta + 1} for all t >= N
    double rate = out.delta1 / etad;
    long N = 3;
    for (;; ++N) {
        double t = (double)N;
        bool holds = std::log(t * (t + 1) * k / etad) <= rate * t + 1.0;
        bool monotone = rate >= 1.0 / t + 1.0 / (t + 1);
        if (holds && monotone) break;
        if (N > 100'000'000) break;  // defensive cap for tiny delta1
    }
    out.N1 = (double)N / etad;
    return out;
}

StirlingCheck stirling_check(unsigned m) {
    if (m < 1) throw std::invalid_argument("stirling_check: m >= 1");
    auto [eLo, eHi] = e_bracket();
    StirlingCheck r;
    r.fact = factorial(m);
    Rat mm = rat_pow(Rat(m), m);
    Rat eLoPow = rat_pow(eLo, m - 1), eHiPow = rat_pow(eHi, m - 1);
    // e(m/e)^m = e^{1-m} m^m;  em(m/e)^m = e^{1-m} m^{m+1}
    r.lowerLo = mm / eHiPow;
    r.lowerHi = mm / eLoPow;
    r.upperLo = mm * m / eHiPow;
    r.upperHi = mm * m / eLoPow;
    r.pass = (r.lowerHi <= Rat(r.fact)) && (Rat(r.fact) <= r.upperLo);
    return r;
}

}  // namespace indlab
