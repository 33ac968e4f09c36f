#include "indlab/toeplitz.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace indlab {

namespace {

// smallest value strictly greater than `lo` congruent to r mod m
BigInt next_congruent(const BigInt& lo, const BigInt& r, const BigInt& m) {
    BigInt base = mod_floor(r, m);
    if (base > lo) return base;
    BigInt k = (lo - base) / m + 1;
    return base + k * m;
}

// smallest multiple of m strictly greater than lo
BigInt next_multiple(const BigInt& lo, const BigInt& m) { return (lo / m + 1) * m; }

int half_size(int p) { return 1 << p; }  // |V_p| index range: q in [2^p]

}  // namespace

int color_h(int p, int q) {
    bool upper = q > (1 << p);
    bool odd = (q % 2) == 1;
    if (!upper) return odd ? 1 : 2;
    return odd ? 3 : 4;
}

// ---- construction -----------------------------------------------------------

namespace {

// build level p on top of spec (levels < p filled); bump shifts the z/u/n
// choices by whole periods on retry
void build_level(ToeplitzSpec& s, int p, int bump) {
    int count = 1 << (p + 1);  // residues y_{p,1..count}
    std::vector<BigInt> y(count), yp(count);
    BigInt z, u, np;
    if (p == 1) {
        y[0] = 2;
        y[1] = 3;
        z = y[1] + 1 + bump;
        yp[0] = y[0] + z;
        yp[1] = y[1] + z;
        y[2] = 2 * yp[1] + 1;
        y[3] = y[2] + yp[1] + 1;
        u = y[3] + 1 + bump;
        yp[2] = y[2] + u;
        yp[3] = y[3] + u;
        np = yp[3] + yp[1] + 2 + bump;
    } else {
        const BigInt& nprev = s.n[p - 2];
        const std::vector<BigInt>& prevYp = s.yp[p - 2];
        int prevHalf = 1 << (p - 1);  // pairs in each half come from [2^{p-1}] resp. its complement
        // lower half: pairs (2q-1, 2q) congruent to y'_{p-1,q}, q in [2^{p-1}]
        BigInt prev = p;  // require p < y_{p,1}
        for (int q = 1; q <= prevHalf; ++q) {
            BigInt v1 = next_congruent(prev, prevYp[q - 1], nprev);
            BigInt v2 = v1 + nprev;
            y[2 * q - 2] = v1;
            y[2 * q - 1] = v2;
            prev = v2;
        }
        z = next_multiple(y[half_size(p) - 1], nprev) + BigInt(bump) * nprev;
        for (int i = 0; i < half_size(p); ++i) yp[i] = y[i] + z;
        // upper half: start above 2 y'_{p,2^p}, consecutive gaps > y'_{p,2^p}
        const BigInt& guard = yp[half_size(p) - 1];
        BigInt lower = 2 * guard;  // strict: next value must exceed this
        int slot = half_size(p);
        for (int q = prevHalf + 1; q <= 2 * prevHalf; ++q) {
            for (int rep = 0; rep < 2; ++rep) {
                BigInt v = next_congruent(lower + guard * (slot > half_size(p) ? 1 : 0),
                                          prevYp[q - 1], nprev);
                // gap requirement: v - previous > guard for every consecutive pair
                y[slot] = v;
                lower = v;
                ++slot;
            }
        }
        u = next_multiple(y[count - 1], nprev) + BigInt(bump) * nprev;
        for (int i = half_size(p); i < count; ++i) yp[i] = y[i] + u;
        np = next_multiple(yp[count - 1] + yp[half_size(p) - 1] + p + nprev, nprev) +
             BigInt(bump) * nprev;
    }
    if ((int)s.n.size() >= p) {  // rebuilding after retry
        s.n.resize(p - 1);
        s.y.resize(p - 1);
        s.yp.resize(p - 1);
        s.z.resize(p - 1);
        s.u.resize(p - 1);
        s.a.resize(p - 1);
        s.b.resize(p - 1);
    }
    s.n.push_back(np);
    s.y.push_back(y);
    s.yp.push_back(yp);
    s.z.push_back(mod_floor(z, np));
    s.u.push_back(mod_floor(u, np));
    s.a.push_back(y[0]);
    s.b.push_back(y[half_size(p)]);
}

// verify only the properties local to level p (distinctness, (iii), (iv),
// (v'))
bool level_ok(const ToeplitzSpec& s, int p) {
    const BigInt& np = s.n[p - 1];
    std::set<BigInt> all;
    for (const BigInt& v : s.y[p - 1]) all.insert(mod_floor(v, np));
    for (const BigInt& v : s.yp[p - 1]) all.insert(mod_floor(v, np));
    if ((int)all.size() != 1 << (p + 2)) return false;
    std::vector<BigInt> V, W;
    for (int q = 1; q <= (1 << p); ++q) {
        V.push_back(s.y[p - 1][q - 1]);
        V.push_back(s.yp[p - 1][q - 1]);
    }
    for (int q = (1 << p) + 1; q <= (1 << (p + 1)); ++q) {
        W.push_back(s.y[p - 1][q - 1]);
        W.push_back(s.yp[p - 1][q - 1]);
    }
    for (const BigInt& v1 : V)
        for (const BigInt& v2 : V)
            for (const BigInt& v3 : V)
                for (const BigInt& w : W)
                    if (mod_floor(v1 - v2 - v3 + w, np) == 0) return false;
    for (const BigInt& v1 : V)
        for (const BigInt& v2 : V) {
            if (v1 == v2) continue;
            for (const BigInt& w1 : W)
                for (const BigInt& w2 : W)
                    if (mod_floor(v1 - v2 - w1 + w2, np) == 0) return false;
        }
    for (int t = -p; t <= p; ++t) {
        BigInt r = mod_floor(BigInt(t), np);
        for (const BigInt& v : s.yp[p - 1])
            if (mod_floor(v, np) == r) return false;
    }
    return true;
}

}  // namespace

ToeplitzSpec build_spec(int depth, int retryBudget) {
    if (depth < 1) throw std::invalid_argument("build_spec: depth >= 1");
    ToeplitzSpec s;
    s.depth = depth;
    for (int p = 1; p <= depth; ++p) {
        bool done = false;
        for (int bump = 0; bump <= retryBudget; ++bump) {
            build_level(s, p, bump);
            if (level_ok(s, p)) {
                done = true;
                break;
            }
        }
        if (!done) throw std::runtime_error("build_spec: retry budget exhausted at level " +
                                            std::to_string(p));
    }
    PropertyReport rep = verify_spec(s);
    if (!rep.all()) throw std::runtime_error("build_spec: verification failed");
    s.verified = true;
    return s;
}

// ---- verification -----------------------------------------------------------

PropertyReport verify_spec(const ToeplitzSpec& s) {
    PropertyReport rep;
    auto fail = [](PropertyReport::Entry& e, const std::string& msg) {
        if (e.pass) {
            e.pass = false;
            e.counterexample = msg;
        }
    };
    for (int p = 1; p <= s.depth; ++p) {
        const BigInt& np = s.n[p - 1];
        if (p > 1) {
            if (s.n[p - 1] <= s.n[p - 2] || s.n[p - 1] % s.n[p - 2] != 0)
                fail(rep.divisibility, "n_" + std::to_string(p));
        }
        // distinctness of the 2^{p+2} residues
        std::set<BigInt> all;
        for (const BigInt& v : s.y[p - 1]) all.insert(mod_floor(v, np));
        for (const BigInt& v : s.yp[p - 1]) all.insert(mod_floor(v, np));
        if ((int)all.size() != 1 << (p + 2))
            fail(rep.distinct, "level " + std::to_string(p));
        // (i): level p+1 residues collapse onto y'_{p,q} mod n_p
        if (p < s.depth) {
            for (int q = 1; q <= (1 << (p + 1)); ++q) {
                BigInt target = mod_floor(s.yp[p - 1][q - 1], np);
                for (const BigInt& v :
                     {s.y[p][2 * q - 2], s.y[p][2 * q - 1], s.yp[p][2 * q - 2],
                      s.yp[p][2 * q - 1]})
                    if (mod_floor(v, np) != target)
                        fail(rep.i, "p=" + std::to_string(p) + " q=" + std::to_string(q));
            }
        }
        // (ii): stored shifts reproduce y' from y on each half
        for (int q = 1; q <= (1 << (p + 1)); ++q) {
            const BigInt& shift = (q <= (1 << p)) ? s.z[p - 1] : s.u[p - 1];
            if (mod_floor(s.y[p - 1][q - 1] + shift - s.yp[p - 1][q - 1], np) != 0)
                fail(rep.ii, "p=" + std::to_string(p) + " q=" + std::to_string(q));
        }
        // (iii) and (iv) over V_p, W_p
        std::vector<BigInt> V, W;
        for (int q = 1; q <= (1 << p); ++q) {
            V.push_back(s.y[p - 1][q - 1]);
            V.push_back(s.yp[p - 1][q - 1]);
        }
        for (int q = (1 << p) + 1; q <= (1 << (p + 1)); ++q) {
            W.push_back(s.y[p - 1][q - 1]);
            W.push_back(s.yp[p - 1][q - 1]);
        }
        for (const BigInt& v1 : V)
            for (const BigInt& v2 : V)
                for (const BigInt& v3 : V)
                    for (const BigInt& w : W)
                        if (mod_floor(v1 - v2 - v3 + w, np) == 0)
                            fail(rep.iii, "p=" + std::to_string(p) + ": " + v1.str() + "-" +
                                              v2.str() + "=" + v3.str() + "-" + w.str());
        for (const BigInt& v1 : V)
            for (const BigInt& v2 : V) {
                if (v1 == v2) continue;
                for (const BigInt& w1 : W)
                    for (const BigInt& w2 : W)
                        if (mod_floor(v1 - v2 - w1 + w2, np) == 0)
                            fail(rep.iv, "p=" + std::to_string(p) + ": " + v1.str() + "-" +
                                             v2.str() + "=" + w1.str() + "-" + w2.str());
            }
        // (v'): small window avoids the y' residues
        for (int t = -p; t <= p; ++t) {
            BigInt r = mod_floor(BigInt(t), np);
            for (const BigInt& v : s.yp[p - 1])
                if (mod_floor(v, np) == r)
                    fail(rep.vprime, "p=" + std::to_string(p) + " t=" + std::to_string(t));
        }
    }
    return rep;
}

// ---- evaluation -------------------------------------------------------------

std::optional<std::pair<int, int>> locate(const ToeplitzSpec& s, const BigInt& v) {
    std::optional<std::pair<int, int>> found;
    for (int p = 1; p <= s.depth; ++p) {
        BigInt r = mod_floor(v, s.n[p - 1]);
        for (int q = 1; q <= (1 << (p + 1)); ++q) {
            if (mod_floor(s.y[p - 1][q - 1], s.n[p - 1]) == r) {
                if (found)
                    throw std::logic_error("locate: two residues match (spec corruption)");
                found = {p, q};
            }
        }
    }
    return found;
}

SymbolEval eval_x(const ToeplitzSpec& s, const BigInt& v) {
    SymbolEval ev;
    auto loc = locate(s, v);
    if (loc) {
        ev.value = color_h(loc->first, loc->second);
        ev.level = loc->first;
        ev.q = loc->second;
        ev.period = s.n[loc->first - 1];
        return ev;
    }
    // 0; certified when some level's y' residues all miss v
    for (int p = 1; p <= s.depth; ++p) {
        BigInt r = mod_floor(v, s.n[p - 1]);
        bool hit = false;
        for (const BigInt& w : s.yp[p - 1])
            if (mod_floor(w, s.n[p - 1]) == r) {
                hit = true;
                break;
            }
        if (!hit) {
            ev.value = 0;
            ev.level = p;
            ev.period = s.n[p - 1];
            return ev;
        }
    }
    ev.value = 0;
    ev.provisional = true;
    return ev;
}

BigInt witness_for_pattern(const ToeplitzSpec& s, const std::vector<int>& sigma) {
    int p = (int)sigma.size();
    if (p < 1 || p > s.depth) throw std::invalid_argument("witness_for_pattern: bad length");
    bool side12 = sigma[0] == 1 || sigma[0] == 2;
    for (int v : sigma) {
        bool in12 = v == 1 || v == 2, in34 = v == 3 || v == 4;
        if (!(in12 || in34)) throw std::invalid_argument("witness_for_pattern: bad color");
        if (in12 != side12) throw std::invalid_argument("witness_for_pattern: side mixing");
    }
    std::vector<int> q(p);
    q[0] = side12 ? (sigma[0] == 1 ? 1 : 2) : (sigma[0] == 3 ? 3 : 4);
    for (int i = 1; i < p; ++i)
        q[i] = (sigma[i] == 1 || sigma[i] == 3) ? 2 * q[i - 1] - 1 : 2 * q[i - 1];
    for (int i = 0; i < p; ++i)
        if (color_h(i + 1, q[i]) != sigma[i])
            throw std::logic_error("witness_for_pattern: chain color mismatch");
    const std::vector<BigInt>& anchors = side12 ? s.a : s.b;
    BigInt a = mod_floor(anchors[p - 1] - s.y[p - 1][q[p - 1] - 1], s.n[p - 1]);
    for (int i = 0; i < p; ++i) {
        SymbolEval ev = eval_x(s, anchors[i] - a);
        if (ev.value != sigma[i])
            throw std::logic_error("witness_for_pattern: verification failed at level " +
                                   std::to_string(i + 1));
    }
    return a;
}

std::optional<BigInt> period_certificate(const ToeplitzSpec& s, const BigInt& v, int spotCheck) {
    SymbolEval ev = eval_x(s, v);
    if (ev.provisional) return std::nullopt;
    for (int t = -spotCheck; t <= spotCheck; ++t) {
        SymbolEval e2 = eval_x(s, v + ev.period * t);
        if (e2.value != ev.value || e2.provisional)
            throw std::logic_error("period_certificate: periodicity violated");
    }
    return ev.period;
}

// ---- pair audits -------------------------------------------------------------

namespace {

struct Window {
    long long uLo = 0, uHi = 0;
    size_t W = 0, words = 0;
    std::vector<std::uint64_t> B[5];
    std::vector<std::uint64_t> prov;
    bool anyProv = false;
};

Window build_window(const ToeplitzSpec& s, long long uLo, long long uHi) {
    Window w;
    w.uLo = uLo;
    w.uHi = uHi;
    w.W = (size_t)(uHi - uLo + 1);
    w.words = (w.W + 63) / 64;
    for (auto& b : w.B) b.assign(w.words, 0);
    w.prov.assign(w.words, 0);
    // incremental residues (periods fit in 64 bits for the depths we build)
    int depth = s.depth;
    std::vector<long long> np(depth);
    std::vector<std::vector<long long>> ys(depth), yps(depth);
    bool fits = true;
    for (int p = 0; p < depth && fits; ++p) {
        if (s.n[p] > BigInt(std::numeric_limits<long long>::max() / 4)) fits = false;
        else {
            np[p] = (long long)s.n[p];
            for (const BigInt& v : s.y[p]) ys[p].push_back((long long)mod_floor(v, s.n[p]));
            for (const BigInt& v : s.yp[p]) yps[p].push_back((long long)mod_floor(v, s.n[p]));
            std::sort(ys[p].begin(), ys[p].end());
            std::sort(yps[p].begin(), yps[p].end());
        }
    }
    std::vector<long long> r(depth);
    if (fits)
        for (int p = 0; p < depth; ++p) r[p] = (long long)mod_floor(BigInt(uLo), s.n[p]);
    for (size_t i = 0; i < w.W; ++i) {
        int value = -1;
        bool provisional = false;
        if (fits) {
            int matchLevel = 0, matchQ = 0;
            for (int p = 0; p < depth; ++p) {
                auto it = std::lower_bound(ys[p].begin(), ys[p].end(), r[p]);
                if (it != ys[p].end() && *it == r[p]) {
                    // recover q (unsorted index) for the color rule
                    for (int q = 1; q <= (int)s.y[p].size(); ++q)
                        if ((long long)mod_floor(s.y[p][q - 1], s.n[p]) == r[p]) {
                            matchLevel = p + 1;
                            matchQ = q;
                            break;
                        }
                    break;
                }
            }
            if (matchLevel) {
                value = color_h(matchLevel, matchQ);
            } else {
                bool certified = false;
                for (int p = 0; p < depth && !certified; ++p)
                    if (!std::binary_search(yps[p].begin(), yps[p].end(), r[p])) certified = true;
                value = 0;
                provisional = !certified;
            }
            for (int p = 0; p < depth; ++p)
                if (++r[p] == np[p]) r[p] = 0;
        } else {
            SymbolEval ev = eval_x(s, BigInt(uLo) + (long long)i);
            value = ev.value;
            provisional = ev.provisional;
        }
        if (provisional) {
            w.prov[i / 64] |= std::uint64_t(1) << (i % 64);
            w.anyProv = true;
        } else {
            w.B[value][i / 64] |= std::uint64_t(1) << (i % 64);
        }
    }
    return w;
}

// bitset AND with the second operand shifted left by d positions:
// out bit i = a bit i  AND  b bit (i+d)
void and_shift(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
               long long d, std::vector<std::uint64_t>& out) {
    size_t words = a.size();
    size_t wd = (size_t)(d / 64);
    int bd = (int)(d % 64);
    for (size_t i = 0; i < words; ++i) {
        std::uint64_t shifted = 0;
        if (i + wd < words) {
            shifted = b[i + wd] >> bd;
            if (bd && i + wd + 1 < words) shifted |= b[i + wd + 1] << (64 - bd);
        }
        out[i] = a[i] & shifted;
    }
}

struct PrefixBits {
    const std::vector<std::uint64_t>* bits;
    std::vector<std::uint32_t> pc;  // pc[w] = popcount of words [0,w)
    void build(const std::vector<std::uint64_t>& b) {
        bits = &b;
        pc.assign(b.size() + 1, 0);
        for (size_t i = 0; i < b.size(); ++i)
            pc[i + 1] = pc[i] + (std::uint32_t)__builtin_popcountll(b[i]);
    }
    // count of set bits with index in [lo, hi]
    std::uint32_t range(long long lo, long long hi) const {
        if (lo > hi) return 0;
        size_t wl = (size_t)(lo / 64), wh = (size_t)(hi / 64);
        std::uint64_t ml = ~std::uint64_t(0) << (lo % 64);
        std::uint64_t mh = (hi % 64 == 63) ? ~std::uint64_t(0)
                                           : ((std::uint64_t(1) << ((hi % 64) + 1)) - 1);
        if (wl == wh) return (std::uint32_t)__builtin_popcountll((*bits)[wl] & ml & mh);
        std::uint32_t c = (std::uint32_t)__builtin_popcountll((*bits)[wl] & ml);
        c += pc[wh] - pc[wl + 1];
        c += (std::uint32_t)__builtin_popcountll((*bits)[wh] & mh);
        return c;
    }
};

struct DayResult {
    long long independent = 0, inconclusive = 0, nearMiss = 0;
    long long firstIndepS1 = 0;
    bool anyIndep = false;
};

}  // namespace

PairAuditResult pair_independence_audit(const ToeplitzSpec& spec, const PairAuditConfig& cfg) {
    PairAuditResult res;
    res.blockingProperty = cfg.product ? "(iv)" : "(iii)";
    long long uLo = cfg.sLo + cfg.abLo, uHi = cfg.sHi + cfg.abHi;
    Window w = build_window(spec, uLo, uHi);
    // required ordered color pairs per sigma pattern
    std::vector<std::vector<std::pair<int, int>>> patterns;
    if (!cfg.product) {
        for (int a : {cfg.c1, cfg.c2})
            for (int b : {cfg.c1, cfg.c2}) patterns.push_back({{a, b}});
    } else {
        // sigma in {1,2}^2 needs both the {1,2}-side and the {3,4}-side
        for (int a : {0, 1})
            for (int b : {0, 1})
                patterns.push_back({{1 + a, 1 + b}, {3 + a, 3 + b}});
    }
    std::set<std::pair<int, int>> comboSet;
    for (auto& pat : patterns)
        for (auto& c : pat) comboSet.insert(c);
    std::vector<std::pair<int, int>> combos(comboSet.begin(), comboSet.end());

    long long dMax = cfg.sHi - cfg.sLo;
    std::vector<DayResult> per(dMax + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (long long d = 1; d <= dMax; ++d) {
        std::vector<std::vector<std::uint64_t>> andBits(combos.size());
        std::vector<std::vector<std::uint64_t>> maybeBits(combos.size());
        std::vector<PrefixBits> pf(combos.size()), pfm(combos.size());
        for (size_t c = 0; c < combos.size(); ++c) {
            andBits[c].assign(w.words, 0);
            and_shift(w.B[combos[c].first], w.B[combos[c].second], d, andBits[c]);
            pf[c].build(andBits[c]);
            if (w.anyProv) {
                std::vector<std::uint64_t> ma(w.words), mb(w.words);
                for (size_t i = 0; i < w.words; ++i) {
                    ma[i] = w.B[combos[c].first][i] | w.prov[i];
                    mb[i] = w.B[combos[c].second][i] | w.prov[i];
                }
                maybeBits[c].assign(w.words, 0);
                and_shift(ma, mb, d, maybeBits[c]);
                pfm[c].build(maybeBits[c]);
            }
        }
        auto comboIdx = [&](std::pair<int, int> c) {
            return (size_t)(std::lower_bound(combos.begin(), combos.end(), c) - combos.begin());
        };
        DayResult& dr = per[d];
        for (long long s1 = cfg.sLo; s1 + d <= cfg.sHi; ++s1) {
            long long lo = std::max(uLo, s1 + cfg.abLo) - uLo;
            long long hi = std::min(uHi - d, s1 + cfg.abHi) - uLo;
            if (lo > hi) continue;
            int yes = 0, maybe = 0;
            for (auto& pat : patterns) {
                bool allYes = true, allMaybe = true;
                for (auto& c : pat) {
                    size_t ci = comboIdx(c);
                    bool y = pf[ci].range(lo, hi) > 0;
                    bool m = y || (w.anyProv && pfm[ci].range(lo, hi) > 0);
                    allYes = allYes && y;
                    allMaybe = allMaybe && m;
                }
                if (allYes) ++yes;
                else if (allMaybe) ++maybe;
            }
            int total = (int)patterns.size();
            if (yes == total) {
                if (!dr.anyIndep) {
                    dr.anyIndep = true;
                    dr.firstIndepS1 = s1;
                }
                dr.independent++;
            } else if (yes + maybe == total) {
                dr.inconclusive++;
            } else if (yes == total - 1 && maybe == 0) {
                dr.nearMiss++;
            }
        }
    }
    for (long long d = 1; d <= dMax; ++d) {
        res.independentPairs += per[d].independent;
        res.inconclusivePairs += per[d].inconclusive;
        res.nearMissPairs += per[d].nearMiss;
        res.pairsChecked += std::max(0LL, (cfg.sHi - cfg.sLo + 1) - d);
        if (per[d].anyIndep && res.firstIndependent.empty())
            res.firstIndependent = "{" + std::to_string(per[d].firstIndepS1) + "," +
                                   std::to_string(per[d].firstIndepS1 + d) + "}";
    }
    // singleton completeness: every required color must appear in the
    // window slice of some s; checked for s = 0 outward
    {
        std::vector<int> needed;
        if (!cfg.product) needed = {cfg.c1, cfg.c2};
        else needed = {1, 2, 3, 4};
        std::vector<PrefixBits> pb(5);
        for (int c : needed) pb[c].build(w.B[c]);
        for (long long s1 = cfg.sLo; s1 <= cfg.sHi; ++s1) {
            long long lo = std::max(uLo, s1 + cfg.abLo) - uLo;
            long long hi = std::min(uHi, s1 + cfg.abHi) - uLo;
            bool all = lo <= hi;
            for (int c : needed)
                if (all && pb[c].range(lo, hi) == 0) all = false;
            if (all) {
                res.maxIndependenceSize = 1;
                break;
            }
        }
    }
    if (res.independentPairs > 0) res.maxIndependenceSize = 2;
    return res;
}

PairAuditResult pair_independence_audit_serial(const ToeplitzSpec& spec,
                                               const PairAuditConfig& cfg) {
    PairAuditResult res;
    res.blockingProperty = cfg.product ? "(iv)" : "(iii)";
    long long uLo = cfg.sLo + cfg.abLo, uHi = cfg.sHi + cfg.abHi;
    // direct symbol table
    std::vector<int> sym(uHi - uLo + 1);
    std::vector<char> prov(uHi - uLo + 1, 0);
    for (long long v = uLo; v <= uHi; ++v) {
        SymbolEval ev = eval_x(spec, BigInt(v));
        sym[v - uLo] = ev.value;
        prov[v - uLo] = ev.provisional ? 1 : 0;
    }
    std::vector<std::vector<std::pair<int, int>>> patterns;
    if (!cfg.product) {
        for (int a : {cfg.c1, cfg.c2})
            for (int b : {cfg.c1, cfg.c2}) patterns.push_back({{a, b}});
    } else {
        for (int a : {0, 1})
            for (int b : {0, 1})
                patterns.push_back({{1 + a, 1 + b}, {3 + a, 3 + b}});
    }
    auto realize = [&](long long s1, long long s2, int cA, int cB, bool& viaProv) {
        for (long long a = cfg.abLo; a <= cfg.abHi; ++a) {
            long long u1 = s1 + a, u2 = s2 + a;
            if (u1 < uLo || u2 > uHi) continue;
            bool okA = sym[u1 - uLo] == cA && !prov[u1 - uLo];
            bool okB = sym[u2 - uLo] == cB && !prov[u2 - uLo];
            if (okA && okB) return true;
            bool mA = okA || prov[u1 - uLo];
            bool mB = okB || prov[u2 - uLo];
            if (mA && mB) viaProv = true;
        }
        return false;
    };
    for (long long s1 = cfg.sLo; s1 <= cfg.sHi; ++s1)
        for (long long s2 = s1 + 1; s2 <= cfg.sHi; ++s2) {
            res.pairsChecked++;
            int yes = 0, maybe = 0;
            for (auto& pat : patterns) {
                bool allYes = true, anyProvPath = false, allMaybe = true;
                for (auto& c : pat) {
                    bool viaProv = false;
                    bool y = realize(s1, s2, c.first, c.second, viaProv);
                    allYes = allYes && y;
                    allMaybe = allMaybe && (y || viaProv);
                    anyProvPath = anyProvPath || viaProv;
                }
                (void)anyProvPath;
                if (allYes) ++yes;
                else if (allMaybe) ++maybe;
            }
            int total = (int)patterns.size();
            if (yes == total) {
                res.independentPairs++;
                if (res.firstIndependent.empty())
                    res.firstIndependent =
                        "{" + std::to_string(s1) + "," + std::to_string(s2) + "}";
            } else if (yes + maybe == total) {
                res.inconclusivePairs++;
            } else if (yes == total - 1 && maybe == 0) {
                res.nearMissPairs++;
            }
        }
    // singleton completeness
    std::vector<int> needed = cfg.product ? std::vector<int>{1, 2, 3, 4}
                                          : std::vector<int>{cfg.c1, cfg.c2};
    for (long long s1 = cfg.sLo; s1 <= cfg.sHi && res.maxIndependenceSize == 0; ++s1) {
        bool all = true;
        for (int c : needed) {
            bool found = false;
            for (long long a = cfg.abLo; a <= cfg.abHi && !found; ++a) {
                long long u = s1 + a;
                if (u < uLo || u > uHi) continue;
                if (sym[u - uLo] == c && !prov[u - uLo]) found = true;
            }
            if (!found) {
                all = false;
                break;
            }
        }
        if (all) res.maxIndependenceSize = 1;
    }
    if (res.independentPairs > 0) res.maxIndependenceSize = 2;
    return res;
}

// ---- JSON ---------------------------------------------------------------------

std::string spec_to_json(const ToeplitzSpec& s) {
    nlohmann::json j;
    j["depth"] = s.depth;
    auto enc = [](const std::vector<BigInt>& v) {
        std::vector<std::string> out;
        for (const BigInt& x : v) out.push_back(x.str());
        return out;
    };
    j["n"] = enc(s.n);
    j["z"] = enc(s.z);
    j["u"] = enc(s.u);
    j["a"] = enc(s.a);
    j["b"] = enc(s.b);
    std::vector<std::vector<std::string>> yy, yyp;
    for (auto& lvl : s.y) yy.push_back(enc(lvl));
    for (auto& lvl : s.yp) yyp.push_back(enc(lvl));
    j["y"] = yy;
    j["yPrime"] = yyp;
    return j.dump(2);
}

ToeplitzSpec spec_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ToeplitzSpec s;
    s.depth = j.at("depth").get<int>();
    auto dec = [](const nlohmann::json& arr) {
        std::vector<BigInt> out;
        for (const auto& x : arr) out.push_back(BigInt(x.get<std::string>()));
        return out;
    };
    s.n = dec(j.at("n"));
    s.z = dec(j.at("z"));
    s.u = dec(j.at("u"));
    s.a = dec(j.at("a"));
    s.b = dec(j.at("b"));
    for (const auto& lvl : j.at("y")) s.y.push_back(dec(lvl));
    for (const auto& lvl : j.at("yPrime")) s.yp.push_back(dec(lvl));
    // never trust a deserialized flag: re-verify the properties
    s.verified = verify_spec(s).all();
    return s;
}

}  // namespace indlab
