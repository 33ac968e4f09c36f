#pragma once
// Deviation census over block partitions plus the analytic constants that
// accompany it: the Shannon function g, the k-ary entropy-style function h,
// the decay constant delta_1, and certified Stirling bounds.

#include <vector>

#include "indlab/numeric.hpp"

namespace indlab {

// g(t) = -t log t, g(0) = 0
double shannon_g(double t);

// h(t) = g(t) + g(1-t) + (1-t) log(k-1); increasing on [0,1/k],
// decreasing on [1/k,1], h(1/k) = log k
double entropy_h(double t, int k);

// numeric maximum of h over [0, 1/k - eps] union [1/k + eps, 1]
double entropy_h_max_outside(double eps, int k);

struct DeviationCensus {
    int n = 0, k = 2;
    std::vector<int> blockSizes;
    Rat epsilon, eta;
    BigInt count;    // |V_{P,eps,eta}|, exact
    double delta1;   // (eta/2)(h(1/k) - max(h(1/k-eps), h(1/k+eps)))
    double N1;       // threshold from the counting argument, N/eta
};

// count maps psi in [k]^Z for which some block P with |P|/n >= eta has a
// color j with | |psi^-1(j) cap P| / |P| - 1/k | >= eps. Exact: full
// enumeration when k^n <= enumCap, per-block multinomial convolution
// otherwise (blocks are independent coordinates).
DeviationCensus deviant_map_census(int n, int k, const std::vector<int>& blockSizes,
                                   const Rat& epsilon, const Rat& eta,
                                   long long enumCap = 10'000'000);

// brute-force oracle (always full enumeration); for tests
BigInt deviant_map_count_bruteforce(int n, int k, const std::vector<int>& blockSizes,
                                    const Rat& epsilon, const Rat& eta);

struct StirlingCheck {
    // certified outer brackets of e(m/e)^m and em(m/e)^m
    Rat lowerLo, lowerHi;  // lowerLo <= e(m/e)^m <= lowerHi
    Rat upperLo, upperHi;  // upperLo <= em(m/e)^m <= upperHi
    BigInt fact;
    bool pass;  // lowerHi <= m! <= upperLo (certifies both inequalities)
};

StirlingCheck stirling_check(unsigned m);

}  // namespace indlab
