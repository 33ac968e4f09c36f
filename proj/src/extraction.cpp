#include "indlab/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace indlab {

namespace {

// combinations of [0,n) of given size, lexicographic on element lists
std::vector<Mask> combinations(int n, int s) {
    std::vector<Mask> out;
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    if (s > n) return out;
    for (;;) {
        Mask m = 0;
        for (int i : idx) m |= Mask(1) << i;
        out.push_back(m);
        int i = s - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) break;
        idx[i]++;
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (s == 0) out = {Mask(0)};
    return out;
}

std::uint64_t sigma_code(const DenseMap& psi, const std::vector<int>& elems, int k) {
    std::uint64_t code = 0, mult = 1;
    for (int e : elems) {
        code += (std::uint64_t)(psi[e] - 1) * mult;
        mult *= (std::uint64_t)k;
    }
    return code;
}

PatternMap sigma_from_code(std::uint64_t code, const std::vector<int>& elems, Mask J, int n,
                           int k) {
    PatternMap s;
    s.domain = J;
    s.color.assign(n, 0);
    for (int e : elems) {
        s.color[e] = (std::uint8_t)(code % k + 1);
        code /= k;
    }
    return s;
}

// coverage check for one J: which sigma codes obtain a witness; returns
// witness index per code or -1
bool covers_all(const std::vector<DenseMap>& R, const CorePredicate& pred, Mask J, int n,
                int k, std::vector<long>* witnessIdx) {
    std::vector<int> elems = mask_elems(J);
    std::uint64_t total = 1;
    for (size_t i = 0; i < elems.size(); ++i) total *= (std::uint64_t)k;
    if ((std::uint64_t)R.size() < total) return false;  // cannot cover all patterns
    std::vector<long> wit(total, -1);
    std::uint64_t found = 0;
    for (size_t pi = 0; pi < R.size() && found < total; ++pi) {
        const DenseMap& psi = R[pi];
        std::uint64_t code = sigma_code(psi, elems, k);
        if (wit[code] >= 0) continue;
        PatternMap sigma = sigma_from_code(code, elems, J, n, k);
        if (pred(psi, sigma, J)) {
            wit[code] = (long)pi;
            ++found;
        }
    }
    if (witnessIdx) *witnessIdx = std::move(wit);
    return found == total;
}

ExtractionCertificate build_cert(const std::vector<DenseMap>& R, Mask J, int n, int k,
                                 const std::vector<long>& wit) {
    ExtractionCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.J = J;
    std::vector<int> elems = mask_elems(J);
    for (std::uint64_t code = 0; code < wit.size(); ++code) {
        SigmaWitness w;
        PatternMap sigma = sigma_from_code(code, elems, J, n, k);
        w.sigma.assign(sigma.color.begin(), sigma.color.end());
        w.psi = R[(size_t)wit[code]];
        cert.witnesses.push_back(std::move(w));
    }
    return cert;
}

}  // namespace

ExtractionCertificate extendable_core(int n, int k, const CorePredicate& pred, bool maximize,
                                      long long workBudget) {
    std::vector<DenseMap> R = enumerate_equidistributed(n, k);
    long long spent = 0;
    auto tryJ = [&](Mask J, std::vector<long>* wit) {
        spent += (long long)R.size();
        return covers_all(R, pred, J, n, k, wit);
    };
    if (maximize) {
        bool withinBudget = true;
        for (int s = n; s >= 1; --s) {
            auto combos = combinations(n, s);
            if (spent + (long long)combos.size() * (long long)R.size() > workBudget) {
                withinBudget = false;
                break;
            }
            for (Mask J : combos) {
                std::vector<long> wit;
                if (tryJ(J, &wit)) {
                    ExtractionCertificate cert = build_cert(R, J, n, k, wit);
                    cert.verified = verify_certificate(cert, pred);
                    return cert;
                }
            }
        }
        if (withinBudget) {
            // the empty set is trivially extendable
            ExtractionCertificate cert;
            cert.n = n;
            cert.k = k;
            cert.J = 0;
            cert.exact = true;
            cert.verified = true;
            return cert;
        }
    }
    // greedy best-found: grow J element by element
    ExtractionCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.exact = false;
    cert.budgetHit = true;
    Mask J = 0;
    std::vector<long> bestWit;
    for (int e = 0; e < n; ++e) {
        Mask cand = J | (Mask(1) << e);
        std::vector<long> wit;
        if (covers_all(R, pred, cand, n, k, &wit)) {
            J = cand;
            bestWit = wit;
        }
    }
    if (J == 0) {
        cert.verified = true;
        return cert;
    }
    cert = build_cert(R, J, n, k, bestWit);
    cert.exact = false;
    cert.budgetHit = true;
    cert.verified = verify_certificate(cert, pred);
    return cert;
}

bool verify_certificate(const ExtractionCertificate& cert, const CorePredicate& pred) {
    if (cert.J == 0) return true;  // trivially extendable
    std::vector<int> elems = mask_elems(cert.J);
    std::uint64_t want = 1;
    for (size_t i = 0; i < elems.size(); ++i) want *= (std::uint64_t)cert.k;
    if (cert.witnesses.size() != want) return false;
    std::vector<char> seen(want, 0);
    for (const SigmaWitness& w : cert.witnesses) {
        // equidistributed?
        std::vector<int> cls(cert.k, 0);
        if ((int)w.psi.size() != cert.n) return false;
        for (int z = 0; z < cert.n; ++z) {
            if (w.psi[z] < 1 || w.psi[z] > cert.k) return false;
            cls[w.psi[z] - 1]++;
        }
        for (int j = 0; j < cert.k; ++j)
            if (std::abs((long long)cls[j] * cert.k - cert.n) >= cert.k) return false;
        // extends sigma?
        PatternMap sigma;
        sigma.domain = cert.J;
        sigma.color.assign(w.sigma.begin(), w.sigma.end());
        std::uint64_t code = 0, mult = 1;
        for (int e : elems) {
            if (w.sigma[e] < 1 || w.sigma[e] > cert.k) return false;
            if (w.psi[e] != w.sigma[e]) return false;
            code += (std::uint64_t)(w.sigma[e] - 1) * mult;
            mult *= (std::uint64_t)cert.k;
        }
        if (seen[code]) return false;
        seen[code] = 1;
        if (!pred(w.psi, sigma, cert.J)) return false;
    }
    return true;
}

// ---- set adversaries ------------------------------------------------------

ExtractionCertificate half_to_indep_search(const SetAdversary& adv, const Rat& tau,
                                           long long workBudget) {
    if (!(tau > Rat(adv.k - 1, adv.k) && tau <= 1))
        throw std::invalid_argument("half_to_indep_search: tau outside ((k-1)/k, 1]");
    // reject adversaries violating their declared bound
    std::vector<DenseMap> R = enumerate_equidistributed(adv.n, adv.k);
    for (const DenseMap& psi : R) {
        Mask Z = adv.assign(psi);
        if (Rat(popcount(Z)) < tau * adv.n)
            throw std::invalid_argument("half_to_indep_search: adversary violates tau bound");
    }
    CorePredicate pred = [&adv](const DenseMap& psi, const PatternMap&, Mask J) {
        return (J & ~adv.assign(psi)) == 0;
    };
    return extendable_core(adv.n, adv.k, pred, true, workBudget);
}

Mask equal_split_retained(int k, int n, const DenseMap& psi) {
    int perColor = n / k, quarter = n / (k * k);
    std::vector<std::vector<int>> a(k);
    for (int z = 0; z < n; ++z) a[psi[z] - 1].push_back(z);
    // b[j][i] = a_{j, (i+1) n/k^2}, i = 0..k-1
    auto b = [&](int j, int i) { return a[j][(i + 1) * quarter - 1]; };
    std::vector<char> taken(k, 0);
    Mask removed = 0;
    for (int l = 0; l < k; ++l) {
        int pick = -1;
        for (int j = 0; j < k; ++j) {
            if (taken[j]) continue;
            if (pick < 0 || b(j, l) > b(pick, l)) pick = j;  // values distinct; ties impossible
        }
        taken[pick] = 1;
        for (int i = l * quarter; i < (l + 1) * quarter; ++i)
            removed |= Mask(1) << a[pick][i];
    }
    (void)perColor;
    return full_mask(n) & ~removed;
}

SetAdversary equal_split_adversary(int k, int n) {
    if (n % (k * k) != 0) throw std::invalid_argument("equal_split_adversary: need k^2 | n");
    SetAdversary adv;
    adv.n = n;
    adv.k = k;
    adv.tau = Rat(k - 1, k);
    adv.assign = [k, n](const DenseMap& psi) { return equal_split_retained(k, n, psi); };
    return adv;
}

// ---- threshold grid & function search -------------------------------------

ThresholdGrid threshold_grid(int k, const Rat& r, const Rat& R, const Rat& C, bool pInf,
                             double p) {
    if (!(0 < r && r < R && R <= C)) throw std::invalid_argument("threshold_grid: need 0<r<R<=C");
    if (!pInf && !(p > 1)) throw std::invalid_argument("threshold_grid: p in (1,inf]");
    ThresholdGrid g;
    g.k = k;
    g.pInf = pInf;
    g.p = p;
    g.C = C;
    g.r = r;
    // first admissible tau: ((R-r)/(4C))^q / k, always < 1/2
    double q = pInf ? 1.0 : p / (p - 1.0);
    Rat tauScaleInv;  // tau^{-1/p} as a rational (1 when p = inf)
    if (pInf) {
        g.tau = (R - r) / (4 * C * k);
        tauScaleInv = 1;
    } else {
        double base = to_double((R - r) / (4 * C));
        g.tau = rat_from_double(std::pow(base, q) / k);
        tauScaleInv = rat_from_double(std::pow(to_double(g.tau), -1.0 / p));
    }
    // smallest M with tau^{-1/p} C / M < (R - r)/2
    Rat bound = (R - r) / 2;
    int M = 1;
    while (tauScaleInv * C / M >= bound) ++M;
    g.M = M;
    // I = { i in [2M]^k : mean of tau^{-1/p}(-C + (i_j - 1) C/M) >= r }
    std::vector<Rat> level(2 * M);
    for (int i = 1; i <= 2 * M; ++i) level[i - 1] = tauScaleInv * (-C + Rat(i - 1) * C / M);
    std::vector<int> idx(k, 1);
    for (;;) {
        Rat mean = 0;
        for (int j = 0; j < k; ++j) mean += level[idx[j] - 1];
        mean /= k;
        if (mean >= r) {
            std::vector<Rat> t(k);
            for (int j = 0; j < k; ++j) t[j] = level[idx[j] - 1];
            g.entries.push_back(std::move(t));
        }
        int j = 0;
        for (; j < k; ++j) {
            if (idx[j] < 2 * M) {
                idx[j]++;
                break;
            }
            idx[j] = 1;
        }
        if (j == k) break;
    }
    if (g.entries.empty()) throw std::logic_error("threshold_grid: empty T (cannot happen)");
    return g;
}

ExtractionCertificate func_to_indep_search(const FuncAdversary& adv, const ThresholdGrid& grid,
                                           long long workBudget) {
    int n = adv.n, k = adv.k;
    std::vector<DenseMap> R = enumerate_equidistributed(n, k);
    std::vector<std::vector<Rat>> F(R.size());
    const double TOL = 1e-12;
    for (size_t i = 0; i < R.size(); ++i) {
        F[i] = adv.assign(R[i]);
        if ((int)F[i].size() != n) throw std::invalid_argument("func adversary: bad dimension");
        // norm bound ||f||_p <= C and mean bound n^{-1/q} sum f >= R
        if (adv.pInf) {
            Rat sum = 0;
            for (const Rat& v : F[i]) {
                if (abs(v) > adv.C)
                    throw std::invalid_argument("func adversary: norm bound violated");
                sum += v;
            }
            if (sum < adv.R * n)
                throw std::invalid_argument("func adversary: mean bound violated");
        } else {
            double pw = 0, sum = 0;
            for (const Rat& v : F[i]) {
                pw += std::pow(std::abs(to_double(v)), adv.p);
                sum += to_double(v);
            }
            double q = adv.p / (adv.p - 1.0);
            if (std::pow(pw, 1.0 / adv.p) > to_double(adv.C) + TOL)
                throw std::invalid_argument("func adversary: norm bound violated");
            if (sum * std::pow((double)n, -1.0 / q) < to_double(adv.R) - TOL)
                throw std::invalid_argument("func adversary: mean bound violated");
        }
    }
    // scale = n^{-1/p}: exactly 1 for p = inf, double otherwise
    Rat scale = adv.pInf ? Rat(1) : rat_from_double(std::pow((double)n, -1.0 / adv.p));
    long long spent = 0;
    for (int s = n; s >= 0; --s) {
        auto combos = combinations(n, s);
        if (spent + (long long)combos.size() * (long long)grid.entries.size() *
                        (long long)R.size() >
            workBudget)
            break;
        for (Mask J : combos) {
            std::vector<int> elems = mask_elems(J);
            std::uint64_t total = 1;
            bool tooMany = false;
            for (size_t i = 0; i < elems.size(); ++i) {
                total *= (std::uint64_t)k;
                if (total > R.size()) tooMany = true;
            }
            if (tooMany) continue;  // fewer maps than patterns: cannot cover
            for (size_t ti = 0; ti < grid.entries.size(); ++ti) {
                const std::vector<Rat>& t = grid.entries[ti];
                std::vector<long> wit(total, -1);
                std::uint64_t found = 0;
                for (size_t pi = 0; pi < R.size() && found < total; ++pi) {
                    spent++;
                    const DenseMap& psi = R[pi];
                    std::uint64_t code = sigma_code(psi, elems, k);
                    if (wit[code] >= 0) continue;
                    bool ok = true;
                    for (int e : elems)
                        if (F[pi][e] < t[psi[e] - 1] * scale) {
                            ok = false;
                            break;
                        }
                    if (ok) {
                        wit[code] = (long)pi;
                        ++found;
                    }
                }
                if (found == total) {
                    ExtractionCertificate cert = build_cert(R, J, n, k, wit);
                    cert.thresholds = t;
                    CorePredicate pred = [&](const DenseMap& psi, const PatternMap&, Mask JJ) {
                        std::vector<Rat> f = adv.assign(psi);
                        for (int e : mask_elems(JJ))
                            if (f[e] < t[psi[e] - 1] * scale) return false;
                        return true;
                    };
                    cert.verified = verify_certificate(cert, pred);
                    return cert;
                }
            }
        }
    }
    ExtractionCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.exact = spent <= workBudget;
    return cert;
}

PartialIndepResult partial_indep_search(const SetAdversary& adv, int m, const Rat& tau,
                                        long long workBudget) {
    int k = adv.k, n = adv.n;
    if (!(m >= 1 && m <= k)) throw std::invalid_argument("partial_indep_search: m in [k]");
    if (!(tau > Rat(m - 1, k) && tau <= 1))
        throw std::invalid_argument("partial_indep_search: tau outside ((m-1)/k, 1]");
    PartialIndepResult out;
    // first admissible theta with k/(1/tau + theta) > m - 1
    Rat theta = (m == 1) ? Rat(1) : (Rat(k, m - 1) - 1 / tau) / 2;
    Rat hi = 1 / tau - 1 + theta;
    Rat C = std::max(Rat(1), hi);
    Rat Rv = theta * tau;
    out.theta = theta;
    out.C = C;
    out.R = Rv;
    FuncAdversary fadv;
    fadv.n = n;
    fadv.k = k;
    fadv.pInf = true;
    fadv.C = C;
    fadv.R = Rv;
    fadv.assign = [hi, &adv, n](const DenseMap& psi) {
        Mask Z = adv.assign(psi);
        std::vector<Rat> f(n);
        for (int z = 0; z < n; ++z) f[z] = has_bit(Z, z) ? hi : Rat(-1);
        return f;
    };
    ThresholdGrid grid = threshold_grid(k, Rv / 2, Rv, C, true);
    out.cert = func_to_indep_search(fadv, grid, workBudget);
    out.J = out.cert.J;
    for (int j = 0; j < k; ++j)
        if (!out.cert.thresholds.empty() && out.cert.thresholds[j] > -1)
            out.A.push_back(j + 1);
    return out;
}

// ---- optimized k=2 kernel ---------------------------------------------------

namespace {

inline std::uint32_t extract_bits(Mask psi2, Mask J) {
#ifdef __BMI2__
    return (std::uint32_t)__builtin_ia32_pext_di(psi2, J);
#else
    std::uint32_t code = 0;
    int i = 0;
    while (J) {
        int z = __builtin_ctzll(J);
        code |= (std::uint32_t)((psi2 >> z) & 1) << i;
        ++i;
        J &= J - 1;
    }
    return code;
#endif
}

}  // namespace

ExtractionCertificate half_to_indep_search_fast2(const SetAdversary& adv, const Rat& tau) {
    int n = adv.n;
    if (adv.k != 2) throw std::invalid_argument("fast2 kernel: k = 2 only");
    std::vector<DenseMap> R = enumerate_equidistributed(n, 2);
    std::vector<Mask> psi2(R.size()), Z(R.size());
    for (size_t i = 0; i < R.size(); ++i) {
        Mask m = 0;
        for (int z = 0; z < n; ++z)
            if (R[i][z] == 2) m |= Mask(1) << z;
        psi2[i] = m;
        Z[i] = adv.assign(R[i]);
        if (Rat(popcount(Z[i])) < tau * n)
            throw std::invalid_argument("fast2 kernel: adversary violates tau bound");
    }
    for (int s = n; s >= 1; --s) {
        if ((std::uint64_t)R.size() < ((std::uint64_t)1 << s)) continue;
        auto combos = combinations(n, s);
        std::vector<char> good(combos.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
        for (long long ci = 0; ci < (long long)combos.size(); ++ci) {
            Mask J = combos[ci];
            std::uint32_t total = (std::uint32_t)1 << s;
            std::vector<char> seen(total, 0);
            std::uint32_t found = 0;
            for (size_t i = 0; i < R.size(); ++i) {
                if (J & ~Z[i]) continue;
                std::uint32_t code = extract_bits(psi2[i], J);
                if (!seen[code]) {
                    seen[code] = 1;
                    if (++found == total) break;
                }
            }
            good[ci] = (found == total);
        }
        for (size_t ci = 0; ci < combos.size(); ++ci) {
            if (!good[ci]) continue;
            Mask J = combos[ci];
            // rebuild witnesses serially (first psi in enumeration order)
            std::vector<int> elems = mask_elems(J);
            std::uint64_t total = (std::uint64_t)1 << s;
            std::vector<long> wit(total, -1);
            std::uint64_t found = 0;
            for (size_t i = 0; i < R.size() && found < total; ++i) {
                if (J & ~Z[i]) continue;
                std::uint32_t code = extract_bits(psi2[i], J);
                if (wit[code] < 0) {
                    wit[code] = (long)i;
                    ++found;
                }
            }
            ExtractionCertificate cert = build_cert(R, J, n, 2, wit);
            CorePredicate pred = [&](const DenseMap& psi, const PatternMap&, Mask JJ) {
                return (JJ & ~adv.assign(psi)) == 0;
            };
            cert.verified = verify_certificate(cert, pred);
            return cert;
        }
    }
    ExtractionCertificate cert;  // empty J: trivially extendable
    cert.n = n;
    cert.k = 2;
    cert.verified = true;
    return cert;
}

// ---- counting pipeline ------------------------------------------------------

HalfPipelineReport proof_pipeline_half(const SetAdversary& adv, const Rat& tau,
                                       const Rat& delta) {
    int n = adv.n, k = adv.k;
    HalfPipelineReport rep;
    rep.n = n;
    rep.k = k;
    std::vector<DenseMap> R = enumerate_equidistributed(n, k);
    std::vector<Mask> Z(R.size());
    for (size_t i = 0; i < R.size(); ++i) {
        Z[i] = adv.assign(R[i]);
        if (Rat(popcount(Z[i])) < tau * n)
            throw std::invalid_argument("proof_pipeline_half: adversary violates tau bound");
    }
    // w = ceil(delta n)
    Rat dn = delta * n;
    BigInt num = boost::multiprecision::numerator(dn), den = boost::multiprecision::denominator(dn);
    int w = (int)((num + den - 1) / den);
    rep.wSize = w;
    // |Xi| = sum_psi C(|Z_psi|, w)
    for (size_t i = 0; i < R.size(); ++i)
        rep.xiTotal += binomial((unsigned)popcount(Z[i]), (unsigned)w);
    // maximizing W
    BigInt bestCount = -1;
    for (Mask W : combinations(n, w)) {
        BigInt c = 0;
        for (size_t i = 0; i < R.size(); ++i)
            if ((W & ~Z[i]) == 0) ++c;
        if (c > bestCount) {
            bestCount = c;
            rep.bestW = W;
        }
    }
    rep.xiW = bestCount;
    // maximizing phi: group Xi_W by restriction to Z\W
    std::vector<int> outside = mask_elems(full_mask(n) & ~rep.bestW);
    std::vector<size_t> members;
    for (size_t i = 0; i < R.size(); ++i)
        if ((rep.bestW & ~Z[i]) == 0) members.push_back(i);
    std::vector<std::uint64_t> codes(members.size());
    for (size_t mi = 0; mi < members.size(); ++mi)
        codes[mi] = sigma_code(R[members[mi]], outside, k);
    std::uint64_t bestCode = 0;
    BigInt bestPhiCount = -1;
    for (size_t mi = 0; mi < members.size(); ++mi) {
        BigInt c = 0;
        for (size_t mj = 0; mj < members.size(); ++mj)
            if (codes[mj] == codes[mi]) ++c;
        if (c > bestPhiCount) {
            bestPhiCount = c;
            bestCode = codes[mi];
        }
    }
    rep.xiWPhi = bestPhiCount;
    {
        PatternMap phi = sigma_from_code(bestCode, outside, full_mask(n) & ~rep.bestW, n, k);
        rep.bestPhi.assign(phi.color.begin(), phi.color.end());
    }
    // trace family S = restrictions to W (distinct by construction)
    MapFamily S;
    S.n = w;
    S.k = k;
    std::vector<int> welems = mask_elems(rep.bestW);
    for (size_t mi = 0; mi < members.size(); ++mi) {
        if (codes[mi] != bestCode) continue;
        DenseMap restr(w);
        for (int i = 0; i < w; ++i) restr[i] = R[members[mi]][welems[i]];
        S.maps.push_back(restr);
    }
    std::sort(S.maps.begin(), S.maps.end());
    S.maps.erase(std::unique(S.maps.begin(), S.maps.end()), S.maps.end());
    rep.traceSize = (BigInt)S.maps.size();
    Mask shat = largest_shattered(S);
    // report shattered set in original coordinates
    Mask orig = 0;
    for (int i : mask_elems(shat)) orig |= Mask(1) << welems[i];
    rep.shattered = orig;
    rep.chainOk = (rep.traceSize == rep.xiWPhi) &&
                  (rep.xiW * binomial((unsigned)n, (unsigned)w) >= rep.xiTotal) &&
                  (rep.xiWPhi * ipow(k, (unsigned)(n - w)) >= rep.xiW);
    return rep;
}

}  // namespace indlab
