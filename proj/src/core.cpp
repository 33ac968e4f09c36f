#include "indlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indlab {

std::vector<int> mask_elems(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = __builtin_ctzll(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

std::string mask_str(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int i : mask_elems(m)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

bool mask_lex_less(Mask a, Mask b) {
    // compare sorted element lists elementwise
    while (a && b) {
        int ia = __builtin_ctzll(a), ib = __builtin_ctzll(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// ---- equidistributed maps ----------------------------------------------

BigInt count_equidistributed(int n, int k) {
    if (n < 0 || k < 1) throw std::invalid_argument("count_equidistributed: bad args");
    int q = n / k, r = n % k;
    // exactly r color classes of size q+1, the rest of size q
    BigInt per = factorial(static_cast<unsigned>(n));
    per /= ipow(factorial(static_cast<unsigned>(q + 1)), static_cast<unsigned>(r));
    per /= ipow(factorial(static_cast<unsigned>(q)), static_cast<unsigned>(k - r));
    return binomial(static_cast<unsigned>(k), static_cast<unsigned>(r)) * per;
}

namespace {

void equi_rec(int n, int k, int q, int r, int pos, DenseMap& cur, std::vector<int>& used,
              int nOver, const std::function<void(const DenseMap&)>& f) {
    if (pos == n) {
        f(cur);
        return;
    }
    int left = n - pos;
    for (int j = 1; j <= k; ++j) {
        if (used[j - 1] >= q + 1) continue;
        bool makesOver = (used[j - 1] == q);
        if (makesOver && nOver == r) continue;
        used[j - 1]++;
        // completable iff every class can still reach its floor
        long long needed = 0;
        for (int c = 0; c < k; ++c) needed += std::max(0, q - used[c]);
        if (needed <= left - 1) {
            cur[pos] = static_cast<std::uint8_t>(j);
            equi_rec(n, k, q, r, pos + 1, cur, used, nOver + (makesOver ? 1 : 0), f);
        }
        used[j - 1]--;
    }
}

}  // namespace

void for_each_equidistributed(int n, int k, const std::function<void(const DenseMap&)>& f) {
    if (n < 0 || k < 1) throw std::invalid_argument("for_each_equidistributed: bad args");
    if (n == 0) {
        DenseMap empty;
        f(empty);
        return;
    }
    DenseMap cur(n, 0);
    std::vector<int> used(k, 0);
    equi_rec(n, k, n / k, n % k, 0, cur, used, 0, f);
}

std::vector<DenseMap> enumerate_equidistributed(int n, int k) {
    std::vector<DenseMap> out;
    for_each_equidistributed(n, k, [&](const DenseMap& m) { out.push_back(m); });
    return out;
}

long regular_bound_threshold(int k, double delta) {
    if (k < 1 || delta <= 0) throw std::invalid_argument("regular_bound_threshold: bad args");
    // need delta*t >= (k-1) + k*ln t for all t >= N; the gap is increasing
    // once delta >= k/t, so scan for the first N where both hold
    for (long t = k;; ++t) {
        double td = static_cast<double>(t);
        if (delta * td >= (k - 1) + k * std::log(td) && delta >= static_cast<double>(k) / td)
            return t;
    }
}

bool regular_bound_holds(int n, int k, const Rat& delta) {
    // |R| * L^n >= k^n with L a certified lower bound of e^delta suffices
    Rat L = exp_bracket(delta).first;
    Rat lhs = Rat(count_equidistributed(n, k)) * rat_pow(L, static_cast<unsigned>(n));
    return lhs >= Rat(ipow(k, static_cast<unsigned>(n)));
}

// ---- independence ------------------------------------------------------

IndepResult is_independent(const IndexedTupleFamily& fam, Mask J) {
    if ((J & ~full_mask(fam.index.size)) != 0)
        throw std::invalid_argument("is_independent: J outside index ground set");
    std::vector<int> elems = mask_elems(J);
    int m = static_cast<int>(elems.size());
    Mask universe = full_mask(fam.universe.size);
    std::vector<int> sigma(m, 1);
    while (true) {
        Mask inter = universe;
        for (int t = 0; t < m && inter; ++t)
            inter &= fam.tuples[elems[t]][sigma[t] - 1];
        if (!inter) {
            PatternMap cex;
            cex.domain = J;
            cex.color.assign(fam.index.size, 0);
            for (int t = 0; t < m; ++t) cex.color[elems[t]] = static_cast<std::uint8_t>(sigma[t]);
            return {false, cex};
        }
        int t = 0;
        for (; t < m; ++t) {
            if (sigma[t] < fam.k) {
                sigma[t]++;
                break;
            }
            sigma[t] = 1;
        }
        if (t == m) break;
    }
    return {true, std::nullopt};
}

namespace {

struct BnB {
    int n;
    const std::function<bool(Mask)>* indep;
    long long budget, nodes = 0;
    Mask best = 0;
    bool exact = true;
    std::vector<int> order;  // element visit order

    // extend `cur` using order positions >= idx
    void rec(Mask cur, size_t idx) {
        if (popcount(cur) > popcount(best) ||
            (popcount(cur) == popcount(best) && mask_lex_less(cur, best)))
            best = cur;
        if (!exact) return;
        int remaining = static_cast<int>(order.size() - idx);
        if (popcount(cur) + remaining <= popcount(best)) return;  // cannot improve
        for (size_t i = idx; i < order.size(); ++i) {
            if (popcount(cur) + static_cast<int>(order.size() - i) <= popcount(best)) return;
            Mask cand = cur | (Mask(1) << order[i]);
            if (++nodes > budget) {
                exact = false;
                return;
            }
            if ((*indep)(cand)) rec(cand, i + 1);
        }
    }
};

}  // namespace

MaxIndepResult max_independent_subset_oracle(int nIndex, Mask F,
                                             const std::function<bool(Mask)>& indep,
                                             long long nodeBudget) {
    BnB b;
    b.n = nIndex;
    b.indep = &indep;
    b.budget = nodeBudget;
    // conflict heuristic: try elements with fewer pairwise conflicts first
    std::vector<int> elems = mask_elems(F & full_mask(nIndex));
    std::vector<int> conflicts(elems.size(), 0);
    for (size_t a = 0; a < elems.size(); ++a)
        for (size_t c = a + 1; c < elems.size(); ++c) {
            Mask pair = (Mask(1) << elems[a]) | (Mask(1) << elems[c]);
            if (!indep(pair)) {
                conflicts[a]++;
                conflicts[c]++;
            }
        }
    std::vector<size_t> idx(elems.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t c) { return conflicts[a] < conflicts[c]; });
    for (size_t i : idx) b.order.push_back(elems[i]);
    if (indep(0)) b.rec(0, 0);
    return {b.best, b.exact, b.nodes};
}

MaxIndepResult max_independent_subset(const IndexedTupleFamily& fam, Mask F,
                                      long long nodeBudget) {
    auto oracle = [&](Mask J) { return is_independent(fam, J).independent; };
    return max_independent_subset_oracle(fam.index.size, F, oracle, nodeBudget);
}

// ---- shattering ---------------------------------------------------------

bool is_shattered(const MapFamily& S, Mask J) {
    std::vector<int> elems = mask_elems(J);
    int m = static_cast<int>(elems.size());
    std::uint64_t want = 1;
    for (int i = 0; i < m; ++i) want *= static_cast<std::uint64_t>(S.k);
    if (static_cast<std::uint64_t>(S.maps.size()) < want) return false;
    std::vector<char> seen(want, 0);
    std::uint64_t distinct = 0;
    for (const DenseMap& psi : S.maps) {
        std::uint64_t code = 0;
        bool inRange = true;
        for (int i = 0; i < m; ++i) {
            int v = psi[elems[i]];
            if (v < 1 || v > S.k) {
                inRange = false;
                break;
            }
            code = code * S.k + static_cast<std::uint64_t>(v - 1);
        }
        if (!inRange) continue;
        if (!seen[code]) {
            seen[code] = 1;
            if (++distinct == want) return true;
        }
    }
    return distinct == want;
}

Mask largest_shattered(const MapFamily& S) {
    if (S.maps.empty()) throw std::invalid_argument("largest_shattered: empty family");
    Mask best = 0;
    bool have = false;
    for (Mask J = 0; J <= full_mask(S.n); ++J) {
        int sz = popcount(J);
        if (have && sz < popcount(best)) continue;
        // skip sets that cannot beat/tie the current best
        if (static_cast<double>(S.maps.size()) < std::pow((double)S.k, (double)sz)) continue;
        if (!is_shattered(S, J)) continue;
        if (!have || sz > popcount(best) || (sz == popcount(best) && mask_lex_less(J, best))) {
            best = J;
            have = true;
        }
        if (S.n >= 64) break;  // defensive; masks cap at 64 elements
    }
    return best;  // J = 0 (empty set) is always shattered
}

}  // namespace indlab
