#include "indlab/cover.hpp"

#include <algorithm>
#include <stdexcept>

#include "indlab/lp.hpp"

namespace indlab {

namespace {

using Bits = std::vector<std::uint64_t>;  // bitset over the maps of S

int bits_count(const Bits& b) {
    int c = 0;
    for (auto w : b) c += __builtin_popcountll(w);
    return c;
}
bool bits_subset(const Bits& a, const Bits& b) {  // a subseteq b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

// enumerate coverage masks of all phi in [k]^Z (phi covers psi iff
// phi(z) != psi(z) for every z), deduplicated and pruned of dominated masks
std::vector<Bits> candidate_masks(const MapFamily& S, long long cap, bool& capped) {
    int n = S.n, k = S.k;
    size_t words = (S.maps.size() + 63) / 64;
    std::vector<Bits> out;
    DenseMap phi(n, 1);
    long long seen = 0;
    capped = false;
    for (;;) {
        if (++seen > cap) {
            capped = true;
            break;
        }
        Bits cov(words, 0);
        for (size_t s = 0; s < S.maps.size(); ++s) {
            bool covers = true;
            for (int z = 0; z < n; ++z)
                if (S.maps[s][z] == phi[z]) {
                    covers = false;
                    break;
                }
            if (covers) cov[s / 64] |= (std::uint64_t(1) << (s % 64));
        }
        if (bits_count(cov) > 0) out.push_back(std::move(cov));
        int z = 0;
        for (; z < n; ++z) {
            if (phi[z] < k) {
                phi[z]++;
                break;
            }
            phi[z] = 1;
        }
        if (z == n) break;
        if (n == 0) break;
    }
    // dedup + dominance pruning
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<Bits> keep;
    for (size_t i = 0; i < out.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < out.size() && !dominated; ++j)
            if (i != j && bits_subset(out[i], out[j]) && !(out[i] == out[j] && i < j))
                dominated = true;
        if (!dominated) keep.push_back(out[i]);
    }
    return keep;
}

int greedy_cover(const std::vector<Bits>& cands, size_t nMaps) {
    size_t words = (nMaps + 63) / 64;
    Bits covered(words, 0);
    int used = 0, total = 0;
    while (total < (int)nMaps) {
        int bestGain = 0;
        size_t bestIdx = cands.size();
        for (size_t i = 0; i < cands.size(); ++i) {
            int gain = 0;
            for (size_t w = 0; w < words; ++w)
                gain += __builtin_popcountll(cands[i][w] & ~covered[w]);
            if (gain > bestGain) {
                bestGain = gain;
                bestIdx = i;
            }
        }
        if (bestIdx == cands.size()) return -1;  // uncoverable
        for (size_t w = 0; w < words; ++w) covered[w] |= cands[bestIdx][w];
        total = bits_count(covered);
        ++used;
    }
    return used;
}

struct CoverBnB {
    const std::vector<Bits>* cands;
    size_t nMaps, words;
    int best;
    int maxCov;

    void rec(Bits covered, int used) {
        int remaining = (int)nMaps - bits_count(covered);
        if (remaining == 0) {
            best = std::min(best, used);
            return;
        }
        if (used + (remaining + maxCov - 1) / maxCov >= best) return;
        // branch on the lowest-index uncovered map
        size_t pick = nMaps;
        for (size_t s = 0; s < nMaps; ++s)
            if (!((covered[s / 64] >> (s % 64)) & 1)) {
                pick = s;
                break;
            }
        for (size_t i = 0; i < cands->size(); ++i) {
            if (!(((*cands)[i][pick / 64] >> (pick % 64)) & 1)) continue;
            Bits nc = covered;
            for (size_t w = 0; w < words; ++w) nc[w] |= (*cands)[i][w];
            rec(std::move(nc), used + 1);
        }
    }
};

}  // namespace

CoverResult cover_number(const MapFamily& S, const CoverOptions& opt) {
    if (S.k < 1) throw std::invalid_argument("cover_number: k >= 1 required");
    CoverResult res;
    if (S.maps.empty()) {
        res.status = CoverResult::Status::EXACT;
        res.value = 0;
        return res;
    }
    // a psi avoids every box only when k = 1 and psi takes the value 1
    if (S.k == 1) {
        for (const DenseMap& psi : S.maps)
            for (int z = 0; z < S.n; ++z)
                if (psi[z] == 1) {
                    res.status = CoverResult::Status::NOT_COVERABLE;
                    res.uncoverable = psi;
                    return res;
                }
    }
    bool capped = false;
    std::vector<Bits> cands = candidate_masks(S, opt.candidateCap, capped);
    int ub = greedy_cover(cands, S.maps.size());
    if (ub < 0) {
        // only possible if candidate enumeration was capped
        res.status = CoverResult::Status::BRACKET;
        res.value = -1;
        return res;
    }
    // LP relaxation lower bound (ceil), via exact simplex
    int maxCov = 0;
    for (const Bits& c : cands) maxCov = std::max(maxCov, bits_count(c));
    BigInt lb = (BigInt(S.maps.size()) + maxCov - 1) / maxCov;
    if (cands.size() <= 64 && S.maps.size() <= 64) {
        size_t nc = cands.size(), nm = S.maps.size();
        std::vector<std::vector<Rat>> A(nm, std::vector<Rat>(nc + nm, 0));
        std::vector<Rat> b(nm, 1), c(nc + nm, 0);
        for (size_t s = 0; s < nm; ++s) {
            for (size_t i = 0; i < nc; ++i)
                if ((cands[i][s / 64] >> (s % 64)) & 1) A[s][i] = 1;
            A[s][nc + s] = -1;  // surplus
        }
        for (size_t i = 0; i < nc; ++i) c[i] = 1;
        Rat optval = solve_min(A, b, c);
        BigInt num = boost::multiprecision::numerator(optval);
        BigInt den = boost::multiprecision::denominator(optval);
        BigInt lpCeil = (num + den - 1) / den;
        if (lpCeil > lb) lb = lpCeil;
    }
    res.lowerBound = lb;
    if (!capped && S.n <= opt.exactThreshold) {
        CoverBnB bnb;
        bnb.cands = &cands;
        bnb.nMaps = S.maps.size();
        bnb.words = (S.maps.size() + 63) / 64;
        bnb.best = ub;
        bnb.maxCov = maxCov;
        bnb.rec(Bits(bnb.words, 0), 0);
        res.status = CoverResult::Status::EXACT;
        res.value = bnb.best;
    } else {
        res.status = CoverResult::Status::BRACKET;
        res.value = ub;
    }
    return res;
}

}  // namespace indlab
