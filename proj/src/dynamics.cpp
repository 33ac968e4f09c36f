#include "indlab/dynamics.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace indlab {

// ---- basic types ------------------------------------------------------------

bool SubshiftSpec::valid() const {
    if (components.empty()) return false;
    std::set<int> alpha(alphabet.begin(), alphabet.end());
    if (alpha.size() != alphabet.size()) return false;
    for (const auto& c : components) {
        if (c.empty()) return false;
        for (int s : c)
            if (!alpha.count(s)) return false;
    }
    return true;
}

std::optional<int> SubshiftSpec::component_containing(const std::vector<int>& symbols) const {
    for (size_t i = 0; i < components.size(); ++i) {
        std::set<int> comp(components[i].begin(), components[i].end());
        bool ok = true;
        for (int s : symbols)
            if (!comp.count(s)) {
                ok = false;
                break;
            }
        if (ok) return (int)i;
    }
    return std::nullopt;
}

bool PatternPoint::in_cylinder(const CylinderSet& C, long long s) const {
    for (auto [pos, sym] : C.constraints)
        if (at(pos + s) != sym) return false;
    return true;
}

bool FiniteMeasure::valid() const {
    if (atoms.empty()) return false;
    Rat sum = 0;
    for (const auto& [x, w] : atoms) {
        if (w <= 0) return false;
        sum += w;
    }
    return sum == 1;
}

Rat measure_of(const FiniteMeasure& nu, const CylinderSet& C) {
    Rat total = 0;
    for (const auto& [x, w] : nu.atoms)
        if (x.in_cylinder(C)) total += w;
    return total;
}

FiniteMeasure translate(const FiniteMeasure& nu, long long s) {
    FiniteMeasure out;
    for (const auto& [x, w] : nu.atoms) {
        PatternPoint y;
        y.defaultSymbol = x.defaultSymbol;
        for (auto [pos, sym] : x.core) y.core[pos - s] = sym;
        out.atoms.push_back({y, w});
    }
    return out;
}

bool WeakStarNbhd::contains(const FiniteMeasure& nu) const {
    for (const auto& [C, bound] : lowerBounds)
        if (!(measure_of(nu, C) > bound)) return false;
    return true;
}

// ---- satisfiability -----------------------------------------------------------

SatResult satisfiable(const SubshiftSpec& X, const std::vector<ShiftedCylinder>& cons) {
    SatResult res;
    std::map<long long, int> merged;
    for (const auto& sc : cons)
        for (auto [pos, sym] : sc.cyl.constraints) {
            long long p = pos + sc.shift;
            auto it = merged.find(p);
            if (it != merged.end() && it->second != sym) {
                std::ostringstream os;
                os << "position " << p << ": " << it->second << " vs " << sym;
                res.clash = os.str();
                return res;
            }
            merged[p] = sym;
        }
    std::vector<int> used;
    for (auto [p, sym] : merged) used.push_back(sym);
    auto comp = X.component_containing(used);
    if (!comp) {
        res.clash = "no component contains all required symbols";
        return res;
    }
    PatternPoint w;
    w.core = merged;
    w.defaultSymbol = X.components[*comp].front();
    res.witness = w;
    return res;
}

DensityResult interval_independence_density(const SubshiftSpec& X,
                                            const std::vector<CylinderSet>& tuple, int n,
                                            long long nodeBudget) {
    if (n < 1 || n > 62) throw std::invalid_argument("interval_independence_density: n in [1,62]");
    int k = (int)tuple.size();
    // fast path: when every cylinder constrains the same single position
    // and one component holds all the symbols, shifted constraints can
    // never clash, so every J (in particular [0,n)) is independent
    {
        bool samePos = true;
        std::optional<long long> pos;
        std::vector<int> syms;
        for (const auto& C : tuple) {
            if (C.constraints.size() > 1) samePos = false;
            for (auto [p, sym] : C.constraints) {
                if (pos && *pos != p) samePos = false;
                pos = p;
                syms.push_back(sym);
            }
        }
        if (samePos && X.component_containing(syms)) {
            DensityResult out;
            out.J = full_mask(n);
            out.phi = n;
            out.density = 1;
            out.exact = true;
            return out;
        }
    }
    auto indep = [&](Mask J) {
        std::vector<int> elems = mask_elems(J);
        int m = (int)elems.size();
        std::vector<int> sigma(m, 0);  // 0..k-1
        for (;;) {
            std::vector<ShiftedCylinder> cons;
            for (int i = 0; i < m; ++i) cons.push_back({(long long)elems[i], tuple[sigma[i]]});
            if (!satisfiable(X, cons).witness) return false;
            int i = 0;
            for (; i < m; ++i) {
                if (++sigma[i] < k) break;
                sigma[i] = 0;
            }
            if (i == m) break;
        }
        return true;
    };
    MaxIndepResult r = max_independent_subset_oracle(n, full_mask(n), indep, nodeBudget);
    DensityResult out;
    out.J = r.J;
    out.phi = popcount(r.J);
    out.density = Rat(out.phi, n);
    out.exact = r.exact;
    return out;
}

// ---- step functions and the layer-cake split -----------------------------------

Rat StepFunction::at(const PatternPoint& x) const {
    for (const auto& [C, v] : pieces)
        if (x.in_cylinder(C)) return v;
    return defaultValue;
}

std::vector<Rat> StepFunction::all_values() const {
    std::vector<Rat> v;
    for (const auto& p : pieces) v.push_back(p.second);
    v.push_back(defaultValue);
    return v;
}

Rat integral(const FiniteMeasure& mu, const StepFunction& f) {
    Rat total = 0;
    for (const auto& [x, w] : mu.atoms) total += w * f.at(x);
    return total;
}

LayerCakeSplit layer_cake_split(const FiniteMeasure& mu1, const FiniteMeasure& mu2,
                                const StepFunction& f1, const StepFunction& f2) {
    if (!(integral(mu1, f1) + integral(mu2, f2) > 0))
        throw std::invalid_argument("layer_cake_split: integrals must sum to > 0");
    // critical thresholds: f1 atom values and negated f2 atom values
    std::vector<Rat> crit;
    for (const auto& [x, w] : mu1.atoms) crit.push_back(f1.at(x));
    for (const auto& [x, w] : mu2.atoms) crit.push_back(-f2.at(x));
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    // candidate t values: each critical value, midpoints, and one below all
    std::vector<Rat> cands;
    cands.push_back(crit.front() - 1);
    for (size_t i = 0; i < crit.size(); ++i) {
        cands.push_back(crit[i]);
        if (i + 1 < crit.size()) cands.push_back((crit[i] + crit[i + 1]) / 2);
    }
    auto superMeasure = [&](const Rat& t) {
        Rat m1 = 0, m2 = 0;
        for (const auto& [x, w] : mu1.atoms)
            if (f1.at(x) > t) m1 += w;
        for (const auto& [x, w] : mu2.atoms)
            if (f2.at(x) > -t) m2 += w;
        return std::make_pair(m1, m2);
    };
    Rat bestT;
    Rat bestSum = -1;
    Rat bestM1, bestM2;
    for (const Rat& t : cands) {
        auto [m1, m2] = superMeasure(t);
        if (m1 + m2 > bestSum) {
            bestSum = m1 + m2;
            bestT = t;
            bestM1 = m1;
            bestM2 = m2;
        }
    }
    if (!(bestSum > 1))
        throw std::logic_error("layer_cake_split: no threshold achieves sum > 1");
    // eps: keep the superlevels {f >= t+eps} equal to the strict ones, over
    // atom values AND piece values (so the min inequality stays exact)
    Rat eps = 1;
    auto tighten = [&](const Rat& v, const Rat& thr) {
        if (v > thr && (v - thr) / 2 < eps) eps = (v - thr) / 2;
    };
    for (const Rat& v : f1.all_values()) tighten(v, bestT);
    for (const Rat& v : f2.all_values()) tighten(v, -bestT);
    LayerCakeSplit out;
    out.t = bestT;
    out.eps = eps;
    out.u1Measure = bestM1;
    out.u2Measure = bestM2;
    // min of f over the superlevel cells
    Rat thr1 = bestT + eps, thr2 = -bestT + eps;
    out.minU1 = thr1;
    out.minU2 = thr2;
    bool first1 = true, first2 = true;
    for (const Rat& v : f1.all_values())
        if (v >= thr1 && (first1 || v < out.minU1)) {
            out.minU1 = v;
            first1 = false;
        }
    for (const Rat& v : f2.all_values())
        if (v >= thr2 && (first2 || v < out.minU2)) {
            out.minU2 = v;
            first2 = false;
        }
    out.measureIneq = out.u1Measure + out.u2Measure > 1;
    out.minIneq = out.minU1 + out.minU2 > 0;
    return out;
}

// ---- sum3 audit -----------------------------------------------------------------

Sum3Result sum3_audit(const Sum3Instance& inst) {
    auto inOpen = [](const Rat& v, int lo, int hi) { return v > lo && v < hi; };
    if (!inOpen(inst.f1x, 1, 2) || !inOpen(inst.f2x, 1, 2) || !inOpen(inst.f3x, 1, 2) ||
        !inOpen(inst.f3y, -2, -1) || !(inst.f3x + inst.f3y > 0))
        throw std::invalid_argument("sum3_audit: values outside the template ranges");
    // per-coordinate data: f values at (x_j, y_j)
    Rat fx[3] = {inst.f1x, inst.f2x, inst.f3x};
    Rat fy[3] = {-inst.f1x, -inst.f2x, inst.f3y};
    Sum3Result res;
    res.sumIntegrals = (inst.f3x + inst.f3y) / 2;  // the j=1,2 terms cancel
    // subsets of {x_j, y_j}: bit 0 = x, bit 1 = y
    for (int a1 = 0; a1 < 4; ++a1)
        for (int a2 = 0; a2 < 4; ++a2)
            for (int a3 = 0; a3 < 4; ++a3) {
                int sel[3] = {a1, a2, a3};
                Rat measures = 0, mins = 0;
                bool anyEmpty = false;
                for (int j = 0; j < 3; ++j) {
                    if (sel[j] == 0) {
                        anyEmpty = true;
                        break;
                    }
                    int cnt = ((sel[j] & 1) ? 1 : 0) + ((sel[j] & 2) ? 1 : 0);
                    measures += Rat(cnt, 2);
                    Rat mn = (sel[j] & 1) ? fx[j] : fy[j];
                    if ((sel[j] & 2) && fy[j] < mn) mn = fy[j];
                    mins += mn;
                }
                if (anyEmpty) continue;  // empty A_j has measure 0: sum <= 2
                if (measures > 2 && mins > 0) {
                    std::ostringstream os;
                    os << "A=(" << a1 << "," << a2 << "," << a3 << ")";
                    res.noTriple = false;
                    res.counterexample = os.str();
                    return res;
                }
            }
    return res;
}

// ---- large-density extraction -----------------------------------------------------

LargeDensityResult large_density_extract(const FiniteMeasure& nu, const DenseMap& psi,
                                         const std::vector<CylinderSet>& tuple,
                                         const std::vector<Rat>& bounds, const Rat& delta) {
    int n = (int)psi.size();
    int k = (int)tuple.size();
    if ((int)bounds.size() != k)
        throw std::invalid_argument("large_density_extract: one bound per tuple entry");
    std::vector<int> classSize(k, 0);
    for (int s = 0; s < n; ++s) {
        int j = psi[s];
        if (j < 1 || j > k) throw std::invalid_argument("large_density_extract: psi out of range");
        classSize[j - 1]++;
    }
    // precondition: nu(s^{-1}A_{psi(s)}) > bound for every s
    for (int s = 0; s < n; ++s) {
        Rat m = 0;
        for (const auto& [x, w] : nu.atoms)
            if (x.in_cylinder(tuple[psi[s] - 1], s)) m += w;
        if (!(m > bounds[psi[s] - 1]))
            throw std::invalid_argument("large_density_extract: precondition fails at s=" +
                                        std::to_string(s));
    }
    // the class-weighted indicator score, maximized over atoms
    LargeDensityResult out;
    Rat bestScore = -1;
    for (const auto& [x, w] : nu.atoms) {
        Rat score = 0;
        Mask F = 0;
        for (int s = 0; s < n; ++s)
            if (x.in_cylinder(tuple[psi[s] - 1], s)) {
                F |= Mask(1) << s;
                score += Rat(1, classSize[psi[s] - 1]);
            }
        if (score > bestScore) {
            bestScore = score;
            out.x = x;
            out.Fpsi = F;
            out.score = score;
        }
    }
    Rat boundSum = 0;
    for (int j = 0; j < k; ++j)
        if (classSize[j] > 0) boundSum += bounds[j];
    if (boundSum >= 1 + delta) {
        if (!(out.score > 1 + delta))
            throw std::logic_error("large_density_extract: averaging bound violated");
        out.boundAsserted = true;
    }
    return out;
}

// ---- convex combination -------------------------------------------------------------

std::vector<FiniteMeasure> convex_witness_combine(const std::vector<ConvexCombineItem>& items,
                                                  const Rat& lambda) {
    if (lambda < 0 || lambda > 1)
        throw std::invalid_argument("convex_witness_combine: lambda in [0,1]");
    std::vector<FiniteMeasure> out;
    for (const auto& item : items) {
        FiniteMeasure m;
        if (lambda > 0)
            for (const auto& [x, w] : item.mu.atoms) m.atoms.push_back({x, lambda * w});
        if (lambda < 1)
            for (const auto& [x, w] : item.nu.atoms)
                m.atoms.push_back({x, (1 - lambda) * w});
        if (!m.valid()) throw std::logic_error("convex_witness_combine: invalid combination");
        if (!item.combined.contains(m))
            throw std::logic_error("convex_witness_combine: re-verification failed");
        out.push_back(m);
    }
    return out;
}

// ---- measure-level independence and the point reduction -----------------------------

NotIEInstance not_ie_instance() {
    NotIEInstance inst;
    inst.X.alphabet = {0, 1, 2};
    inst.X.components = {{0, 1}, {1, 2}};
    inst.V1.constraints = {{0, 2}};
    inst.V2.constraints = {{0, 1}};
    inst.W1.constraints = {{0, 0}};
    inst.W2.constraints = {{0, 2}};
    inst.lambda = Rat(3, 4);
    inst.eps = Rat(1, 8);
    return inst;
}

MeasureIndepAudit measure_indep_audit(const NotIEInstance& inst,
                                      const std::vector<long long>& J) {
    if (!(inst.lambda - inst.eps > Rat(1, 2)))
        throw std::invalid_argument("measure_indep_audit: lambda - eps must exceed 1/2");
    MeasureIndepAudit out;
    int m = (int)J.size();
    std::vector<int> sigma(m, 1);
    const CylinderSet* V[2] = {&inst.V1, &inst.V2};
    const CylinderSet* W[2] = {&inst.W1, &inst.W2};
    for (;;) {
        std::vector<ShiftedCylinder> vCons, wCons;
        for (int i = 0; i < m; ++i) {
            vCons.push_back({J[i], *V[sigma[i] - 1]});
            wCons.push_back({J[i], *W[sigma[i] - 1]});
        }
        SatResult heavy = satisfiable(inst.X, vCons);
        SatResult light = satisfiable(inst.X, wCons);
        if (!heavy.witness || !light.witness) {
            out.exhausted = true;
            out.failedSigma = sigma;
            return out;
        }
        FiniteMeasure w;
        w.atoms = {{*heavy.witness, inst.lambda}, {*light.witness, 1 - inst.lambda}};
        // verify against the neighborhood constraints at every s in J:
        // w(s^{-1}V_j) > lambda - eps and w(s^{-1}W_j) > 1 - lambda - eps
        for (int i = 0; i < m; ++i) {
            auto shiftedMass = [&](const CylinderSet& C) {
                Rat total = 0;
                for (const auto& [x, wt] : w.atoms)
                    if (x.in_cylinder(C, J[i])) total += wt;
                return total;
            };
            if (!(shiftedMass(*V[sigma[i] - 1]) > inst.lambda - inst.eps))
                throw std::logic_error("measure_indep_audit: V constraint re-check failed");
            if (!(shiftedMass(*W[sigma[i] - 1]) > 1 - inst.lambda - inst.eps))
                throw std::logic_error("measure_indep_audit: W constraint re-check failed");
        }
        out.witnesses.push_back({sigma, w});
        int i = 0;
        for (; i < m; ++i) {
            if (++sigma[i] <= 2) break;
            sigma[i] = 1;
        }
        if (i == m) break;
    }
    out.certified = true;
    return out;
}

PointReduction point_reduction(const NotIEInstance& inst, const MeasureIndepAudit& audit,
                               const std::vector<long long>& J) {
    PointReduction out;
    if (!audit.certified) return out;
    const CylinderSet* W[2] = {&inst.W1, &inst.W2};
    for (const auto& [sigma, meas] : audit.witnesses) {
        // the light atom (weight < 1/2) must carry the W constraints
        const PatternPoint* light = nullptr;
        for (const auto& [x, w] : meas.atoms)
            if (w < Rat(1, 2)) light = &x;
        if (!light) return out;
        for (size_t i = 0; i < sigma.size(); ++i)
            if (!light->in_cylinder(*W[sigma[i] - 1], J[i])) return out;
        out.points.push_back({sigma, *light});
    }
    out.verified = true;
    return out;
}

}  // namespace indlab
