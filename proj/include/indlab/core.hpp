#pragma once
// Finite combinatorics primitives: ground sets and bitmask subsets,
// equidistributed colorings, independence patterns over tuple families,
// shattering/trace. Ground sets are 0-based index sets of size <= 64 so
// subsets are single-word bitmasks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "indlab/numeric.hpp"

namespace indlab {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask(0) : ((Mask(1) << n) - 1); }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }

// elements of a mask in increasing index order
std::vector<int> mask_elems(Mask m);
std::string mask_str(Mask m);

// lexicographic comparison of masks viewed as sorted element lists
bool mask_lex_less(Mask a, Mask b);

struct GroundSet {
    int size = 0;
    std::vector<std::string> labels;  // optional; empty or exactly `size` entries
    bool valid() const { return labels.empty() || (int)labels.size() == size; }
};

// sigma: J -> [k]; color[z] in 1..k for z in domain, 0 elsewhere
struct PatternMap {
    Mask domain = 0;
    std::vector<std::uint8_t> color;
    int at(int z) const { return color[z]; }
};

// dense map Z -> {0..k} (color classes use 1..k; 0 only when the
// alphabet includes it)
using DenseMap = std::vector<std::uint8_t>;

struct MapFamily {
    int n = 0;
    int k = 1;
    bool alphabetIncludesZero = false;
    std::vector<DenseMap> maps;
};

// family {(A_{i,1},...,A_{i,k}) : i in index}; masks live over `universe`
struct IndexedTupleFamily {
    GroundSet universe;
    GroundSet index;
    int k = 1;
    std::vector<std::vector<Mask>> tuples;  // tuples[i][j-1]
};

// ---- equidistributed maps R(Z,k) --------------------------------------

BigInt count_equidistributed(int n, int k);

// visit maps in lexicographic order of their dense value sequences
void for_each_equidistributed(int n, int k, const std::function<void(const DenseMap&)>& f);
std::vector<DenseMap> enumerate_equidistributed(int n, int k);

// smallest N >= k with e^{k-1} t^k <= e^{delta t} for all t >= N
// (threshold used by the |R(Z,k)| >= k^n e^{-delta n} bound)
long regular_bound_threshold(int k, double delta);

// certified check of |R([n],k)| >= k^n e^{-delta n}, exact rationals
bool regular_bound_holds(int n, int k, const Rat& delta);

// ---- independence ------------------------------------------------------

struct IndepResult {
    bool independent = false;
    std::optional<PatternMap> counterexample;  // a sigma with empty intersection
};

IndepResult is_independent(const IndexedTupleFamily& fam, Mask J);

// generic branch-and-bound over J subsets of [0,nIndex), driven by an
// oracle deciding whether a candidate J is independent. Monotone pruning:
// supersets of dependent sets are dependent.
struct MaxIndepResult {
    Mask J = 0;
    bool exact = true;  // false only on budget exhaustion (J = best found)
    long long nodes = 0;
};

MaxIndepResult max_independent_subset_oracle(
    int nIndex, Mask F, const std::function<bool(Mask)>& indep, long long nodeBudget);

MaxIndepResult max_independent_subset(const IndexedTupleFamily& fam, Mask F,
                                      long long nodeBudget = 1'000'000);

// ---- shattering ---------------------------------------------------------

// maximum-cardinality J with S|_J containing all of [k]^J (colors 1..k
// only; the 0 symbol is never required). Ties broken lexicographically.
Mask largest_shattered(const MapFamily& S);

bool is_shattered(const MapFamily& S, Mask J);

}  // namespace indlab
