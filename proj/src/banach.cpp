#include "indlab/banach.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace indlab {

namespace {

Rat linf_norm(const std::vector<Rat>& v) {
    Rat m = 0;
    for (const Rat& x : v)
        if (abs(x) > m) m = abs(x);
    return m;
}

Rat l1_norm(const std::vector<Rat>& v) {
    Rat s = 0;
    for (const Rat& x : v) s += abs(x);
    return s;
}

// seeded random rational with small numerator/denominator
Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-100, 100), den(1, 20);
    return Rat(num(rng), den(rng));
}

}  // namespace

bool VectorFamily::in_unit_ball() const {
    for (const auto& v : vectors) {
        if ((int)v.size() != n) return false;
        if (pInf) {
            if (linf_norm(v) > 1) return false;
        } else if (p == 1.0) {
            if (l1_norm(v) > 1) return false;
        } else {
            double s = 0;
            for (const Rat& x : v) s += std::pow(std::abs(to_double(x)), p);
            if (std::pow(s, 1.0 / p) > 1.0 + 1e-12) return false;
        }
    }
    return true;
}

std::vector<Rat> LinearMapData::apply(const std::vector<Rat>& x) const {
    std::vector<Rat> out(rows(), Rat(0));
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j) out[i] += matrix[i][j] * x[j];
    return out;
}

// ---- hull membership ----------------------------------------------------------

HullResult hull_member(const VectorFamily& E, const std::vector<Rat>& target) {
    int n = E.n;
    if ((int)target.size() != n) throw std::invalid_argument("hull_member: dimension mismatch");
    int nv = (int)E.vectors.size();
    // variables: t_1..t_nv, slack s;  sum t + s = 1,  sum t_v v = target
    std::vector<std::vector<Rat>> A(n + 1, std::vector<Rat>(nv + 1, Rat(0)));
    std::vector<Rat> b(n + 1);
    for (int v = 0; v < nv; ++v) A[0][v] = 1;
    A[0][nv] = 1;
    b[0] = 1;
    for (int i = 0; i < n; ++i) {
        for (int v = 0; v < nv; ++v) A[i + 1][v] = E.vectors[v][i];
        b[i + 1] = target[i];
    }
    LPResult lp = solve_feasibility(A, b);
    HullResult out;
    out.feasible = lp.feasible;
    if (lp.feasible) {
        out.coeffs.assign(lp.x.begin(), lp.x.begin() + nv);
        // re-substitute
        Rat total = 0;
        std::vector<Rat> sum(n, Rat(0));
        for (int v = 0; v < nv; ++v) {
            if (out.coeffs[v] < 0) throw std::logic_error("hull_member: negative coefficient");
            total += out.coeffs[v];
            for (int i = 0; i < n; ++i) sum[i] += out.coeffs[v] * E.vectors[v][i];
        }
        if (total > 1 || sum != target)
            throw std::logic_error("hull_member: substitution check failed");
    } else {
        out.farkas = lp.farkas;
        if (!farkas_valid(A, b, out.farkas))
            throw std::logic_error("hull_member: invalid Farkas certificate");
    }
    return out;
}

// ---- sign embedding -------------------------------------------------------------

LinearMapData sign_embedding(int n) {
    if (n < 1) throw std::invalid_argument("sign_embedding: n >= 1");
    LinearMapData Phi;
    int m = 1 << (n - 1);
    for (int maskBits = 0; maskBits < m; ++maskBits) {
        std::vector<Rat> row(n);
        row[0] = 1;
        for (int j = 1; j < n; ++j) row[j] = ((maskBits >> (j - 1)) & 1) ? Rat(-1) : Rat(1);
        Phi.matrix.push_back(std::move(row));
    }
    return Phi;
}

bool sign_embedding_isometry_check(const LinearMapData& Phi, std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    int n = Phi.cols();
    for (int t = 0; t < trials; ++t) {
        std::vector<Rat> x(n);
        for (int j = 0; j < n; ++j) x[j] = random_rat(rng);
        if (linf_norm(Phi.apply(x)) != l1_norm(x)) return false;
    }
    return true;
}

// ---- dual image -------------------------------------------------------------------

DualImageReport dual_image(const LinearMapData& Phi, int q, const Rat& C, std::uint64_t seed) {
    if (q != 1) throw std::invalid_argument("dual_image: only q = 1 is supported");
    int m = Phi.rows(), n = Phi.cols();
    DualImageReport rep;
    // ||Phi||_{1 -> inf} is the largest entry magnitude
    Rat norm = 0;
    for (const auto& row : Phi.matrix)
        for (const Rat& x : row)
            if (abs(x) > norm) norm = abs(x);
    if (norm == 0) throw std::invalid_argument("dual_image: zero map");
    rep.norm = norm;
    rep.Eprime.n = n;
    rep.Eprime.pInf = true;  // dual exponent of q = 1
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> row(n), neg(n);
        for (int j = 0; j < n; ++j) {
            row[j] = Phi.matrix[i][j] / norm;
            neg[j] = -row[j];
        }
        rep.Eprime.vectors.push_back(std::move(row));
        rep.Eprime.vectors.push_back(std::move(neg));
    }
    // duality identity <Phi*(e_i), x> = (Phi x)_i on seeded x
    std::mt19937_64 rng(seed);
    rep.dualityChecked = true;
    for (int t = 0; t < 100; ++t) {
        std::vector<Rat> x(n);
        for (int j = 0; j < n; ++j) x[j] = random_rat(rng);
        std::vector<Rat> img = Phi.apply(x);
        for (int i = 0; i < m; ++i) {
            Rat dot = 0;
            for (int j = 0; j < n; ++j) dot += Phi.matrix[i][j] * x[j];
            if (dot != img[i]) rep.dualityChecked = false;
        }
    }
    // vertex-certified containment of B_{1/C}(l_inf^n) in conv(E' ∪ {0})
    rep.containment = true;
    rep.containmentExact = true;
    std::vector<Rat> vtx(n);
    for (int bits = 0; bits < (1 << n); ++bits) {
        for (int j = 0; j < n; ++j) vtx[j] = ((bits >> j) & 1) ? Rat(-1) / C : Rat(1) / C;
        if (!hull_member(rep.Eprime, vtx).feasible) {
            rep.containment = false;
            std::ostringstream os;
            os << "vertex " << bits;
            rep.failVertex = os.str();
            break;
        }
    }
    return rep;
}

// ---- signed-threshold extraction ----------------------------------------------------

FlmExtractResult flm_extract(const VectorFamily& E, const Rat& delta, std::uint64_t seed,
                             int sampleTrials) {
    int n = E.n;
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("flm_extract: delta in (0,1]");
    if (!E.in_unit_ball()) throw std::invalid_argument("flm_extract: E not inside B_1");
    FlmExtractResult res;
    res.scale = E.pInf ? Rat(1) : rat_from_double(std::pow((double)n, -1.0 / E.p));
    double qExp = E.pInf ? 1.0 : E.p / (E.p - 1.0);
    Rat sigScale = rat_from_double(std::pow((double)n, 1.0 / qExp));  // n^{1/q}

    // v_psi: the hull-support vector maximizing the signed sum; cached
    std::map<DenseMap, std::vector<Rat>> cache;
    auto solve_v = [&](const DenseMap& psi) -> const std::vector<Rat>* {
        auto it = cache.find(psi);
        if (it != cache.end()) return it->second.empty() ? nullptr : &it->second;
        std::vector<Rat> g(n);
        for (int i = 0; i < n; ++i)
            g[i] = (psi[i] == 1 ? delta : -delta) * res.scale;
        HullResult h = hull_member(E, g);
        if (!h.feasible) {
            cache[psi] = {};
            return nullptr;
        }
        int best = -1;
        Rat bestSum;
        for (size_t v = 0; v < h.coeffs.size(); ++v) {
            if (h.coeffs[v] == 0) continue;
            Rat s = 0;
            for (int i = 0; i < n; ++i)
                s += (psi[i] == 1 ? E.vectors[v][i] : -E.vectors[v][i]);
            if (best < 0 || s > bestSum) {
                best = (int)v;
                bestSum = s;
            }
        }
        cache[psi] = E.vectors[best];
        return &cache[psi];
    };

    // precondition: every needed target lies in the hull
    auto psi_str = [](const DenseMap& psi) {
        std::string s;
        for (auto c : psi) s += char('0' + c);
        return s;
    };
    if (n <= 14) {
        DenseMap psi(n, 1);
        for (;;) {
            if (!solve_v(psi)) {
                res.preconditionOk = false;
                res.failedPsi = psi_str(psi);
                return res;
            }
            int i = 0;
            for (; i < n; ++i) {
                if (++psi[i] <= 2) break;
                psi[i] = 1;
            }
            if (i == n) break;
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coin(1, 2);
        for (int t = 0; t < sampleTrials; ++t) {
            DenseMap psi(n);
            for (int i = 0; i < n; ++i) psi[i] = (std::uint8_t)coin(rng);
            if (!solve_v(psi)) {
                res.preconditionOk = false;
                res.failedPsi = psi_str(psi);
                return res;
            }
        }
    }

    FuncAdversary adv;
    adv.n = n;
    adv.k = 2;
    adv.pInf = E.pInf;
    adv.p = E.p;
    adv.C = 1;
    adv.R = delta;
    adv.seed = seed;
    adv.assign = [&, n](const DenseMap& psi) {
        const std::vector<Rat>* v = solve_v(psi);
        if (!v) throw std::logic_error("flm_extract: hull miss after precondition check");
        std::vector<Rat> f(n);
        for (int i = 0; i < n; ++i) f[i] = (psi[i] == 1 ? (*v)[i] : -(*v)[i]);
        return f;
    };
    ThresholdGrid grid = threshold_grid(2, delta / 2, delta, Rat(1), E.pInf, E.p);
    res.cert = func_to_indep_search(adv, grid);
    if (!res.cert.thresholds.empty()) {
        res.t1 = res.cert.thresholds[0];
        res.t2 = -res.cert.thresholds[1];
    }
    for (const auto& wit : res.cert.witnesses) {
        const std::vector<Rat>* v = solve_v(wit.psi);
        res.sigmaWitnesses.push_back({wit.sigma, *v});
    }
    (void)sigScale;
    return res;
}

// ---- the log-size bound audit --------------------------------------------------------

FlmBoundAudit flm_bound_audit(int q, const Rat& C, const LinearMapData& Phi,
                              std::uint64_t seed) {
    if (q != 1) throw std::invalid_argument("flm_bound_audit: only q = 1 is supported");
    FlmBoundAudit audit;
    audit.n = Phi.cols();
    audit.m = Phi.rows();
    audit.C = C;
    // embedding check after normalization: ||Phi x||_inf >= ||x||_1 / C on
    // the l_1 vertices (exact) and seeded directions
    Rat norm = 0;
    for (const auto& row : Phi.matrix)
        for (const Rat& x : row)
            if (abs(x) > norm) norm = abs(x);
    audit.embeddingVerified = norm > 0;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100 + 2 * audit.n && audit.embeddingVerified; ++t) {
        std::vector<Rat> x(audit.n, Rat(0));
        if (t < 2 * audit.n)
            x[t / 2] = (t % 2) ? Rat(-1) : Rat(1);
        else
            for (int j = 0; j < audit.n; ++j) x[j] = random_rat(rng);
        if (linf_norm(Phi.apply(x)) * C < l1_norm(x) * norm) audit.embeddingVerified = false;
    }
    audit.dual = dual_image(Phi, q, C, seed);
    audit.extract = flm_extract(audit.dual.Eprime, 1 / C, seed);
    audit.Jsize = popcount(audit.extract.cert.J);
    audit.EprimeSize = (long long)audit.dual.Eprime.vectors.size();
    audit.witnessesDistinct = true;
    const auto& sw = audit.extract.sigmaWitnesses;
    for (size_t i = 0; i < sw.size(); ++i)
        for (size_t j = i + 1; j < sw.size(); ++j)
            if (sw[i].second == sw[j].second) audit.witnessesDistinct = false;
    audit.chainPass = audit.witnessesDistinct &&
                      BigInt(1) << audit.Jsize <= BigInt(audit.EprimeSize) &&
                      audit.EprimeSize <= 2LL * audit.m;
    return audit;
}

// ---- simplex net intersection ----------------------------------------------------------

SimplexNet simplex_net(int m, const Rat& C) {
    if (m < 1 || C <= 0) throw std::invalid_argument("simplex_net: m >= 1, C > 0");
    SimplexNet net;
    net.m = m;
    net.C = C;
    net.epsilon = Rat(1, 4);
    // smallest D with 2(m-1)/D < 1/(4C)
    int D = 1;
    if (m > 1) {
        Rat bound = 8 * C * (m - 1);
        BigInt num = numerator(bound), den = denominator(bound);
        D = (int)(num / den) + 1;
    }
    net.D = D;
    // grid points: compositions of D into m parts, divided by D
    std::vector<int> a(m, 0);
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == m - 1) {
            a[idx] = rem;
            std::vector<Rat> lambda(m);
            for (int i = 0; i < m; ++i) lambda[i] = Rat(a[i], D);
            net.Lambda.push_back(std::move(lambda));
            return;
        }
        for (int c = 0; c <= rem; ++c) {
            a[idx] = c;
            rec(idx + 1, rem - c);
        }
    };
    rec(0, D);
    return net;
}

NetIntersection simplex_net_intersection(
    int m, const Rat& C,
    const std::function<std::vector<Rat>(const std::vector<Rat>&)>& w) {
    NetIntersection out;
    out.net = simplex_net(m, C);
    int L = (int)out.net.Lambda.size();
    std::vector<std::vector<Rat>> W(L);
    for (int l = 0; l < L; ++l) {
        W[l] = w(out.net.Lambda[l]);
        if ((int)W[l].size() != m)
            throw std::invalid_argument("simplex_net_intersection: bad w dimension");
        if (linf_norm(W[l]) > C)
            throw std::invalid_argument("simplex_net_intersection: ||w||_inf > C at lambda " +
                                        std::to_string(l));
        Rat dot = 0;
        for (int i = 0; i < m; ++i) dot += W[l][i] * out.net.Lambda[l][i];
        if (dot < 1 - out.net.epsilon)
            throw std::invalid_argument("simplex_net_intersection: <w,lambda> < 3/4 at lambda " +
                                        std::to_string(l));
    }
    // variables: convex coefficients c_l, slacks s_i;
    // sum c = 1 and sum_l c_l w_i - s_i = 1/2
    std::vector<std::vector<Rat>> A(m + 1, std::vector<Rat>(L + m, Rat(0)));
    std::vector<Rat> b(m + 1);
    for (int l = 0; l < L; ++l) A[0][l] = 1;
    b[0] = 1;
    for (int i = 0; i < m; ++i) {
        for (int l = 0; l < L; ++l) A[i + 1][l] = W[l][i];
        A[i + 1][L + i] = -1;
        b[i + 1] = Rat(1, 2);
    }
    LPResult lp = solve_feasibility(A, b);
    out.feasible = lp.feasible;
    if (lp.feasible) {
        out.coeffs.assign(lp.x.begin(), lp.x.begin() + L);
        out.point.assign(m, Rat(0));
        for (int l = 0; l < L; ++l)
            for (int i = 0; i < m; ++i) out.point[i] += out.coeffs[l] * W[l][i];
        for (int i = 0; i < m; ++i)
            if (out.point[i] < Rat(1, 2))
                throw std::logic_error("simplex_net_intersection: coordinate below 1/2");
    }
    return out;
}

}  // namespace indlab
