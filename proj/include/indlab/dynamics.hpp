#pragma once
// Z-subshift engine for unions of full shifts, with exact finite-support
// measures: cylinder satisfiability, interval independence density,
// measure-averaging extractions, the layer-cake threshold split, and the
// two-atom measure-to-point reduction. All measure arithmetic is exact
// rational; no floating point enters this module.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "indlab/core.hpp"

namespace indlab {

// union of full shifts over each component sub-alphabet
struct SubshiftSpec {
    std::vector<int> alphabet;
    std::vector<std::vector<int>> components;
    bool valid() const;
    // smallest component index whose sub-alphabet contains all of `symbols`
    std::optional<int> component_containing(const std::vector<int>& symbols) const;
};

struct CylinderSet {
    std::vector<std::pair<long long, int>> constraints;  // position -> symbol
};

// finite description of a point: finitely many exceptional coordinates
// over a constant background
struct PatternPoint {
    std::map<long long, int> core;
    int defaultSymbol = 0;
    int at(long long t) const {
        auto it = core.find(t);
        return it == core.end() ? defaultSymbol : it->second;
    }
    // membership in the shifted cylinder s^{-1}C, i.e. (s.x) in C with
    // (s.x)(t) = x(t+s)
    bool in_cylinder(const CylinderSet& C, long long s = 0) const;
};

struct FiniteMeasure {
    std::vector<std::pair<PatternPoint, Rat>> atoms;  // positive weights, sum 1
    bool valid() const;
};

Rat measure_of(const FiniteMeasure& nu, const CylinderSet& C);
FiniteMeasure translate(const FiniteMeasure& nu, long long s);  // (s nu)(C) = nu(s^{-1}C)

// finitely many strict rational lower bounds nu(C) > bound
struct WeakStarNbhd {
    std::vector<std::pair<CylinderSet, Rat>> lowerBounds;
    bool contains(const FiniteMeasure& nu) const;
};

// ---- satisfiability and density -----------------------------------------

struct ShiftedCylinder {
    long long shift = 0;
    CylinderSet cyl;
};

struct SatResult {
    std::optional<PatternPoint> witness;
    std::string clash;  // diagnostic when no witness
};

// exact decision of ⋂_s s^{-1}C_s != empty inside the subshift
SatResult satisfiable(const SubshiftSpec& X, const std::vector<ShiftedCylinder>& cons);

struct DensityResult {
    int phi = 0;
    Rat density;
    Mask J = 0;
    bool exact = true;
};

// largest independent J inside the window [0,n) for the cylinder tuple
DensityResult interval_independence_density(const SubshiftSpec& X,
                                            const std::vector<CylinderSet>& tuple, int n,
                                            long long nodeBudget = 1'000'000);

// ---- step functions and the layer-cake split ------------------------------

// piecewise-constant function: value of the first matching cylinder piece,
// defaultValue elsewhere
struct StepFunction {
    std::vector<std::pair<CylinderSet, Rat>> pieces;
    Rat defaultValue;
    Rat at(const PatternPoint& x) const;
    std::vector<Rat> all_values() const;  // piece values + default
};

Rat integral(const FiniteMeasure& mu, const StepFunction& f);

struct LayerCakeSplit {
    Rat t, eps;            // superlevels U1 = {f1 >= t+eps}, U2 = {f2 >= -t+eps}
    Rat u1Measure, u2Measure;
    Rat minU1, minU2;      // min of f over the superlevel pieces (t+eps / -t+eps if none)
    bool measureIneq = false;  // u1Measure + u2Measure > 1
    bool minIneq = false;      // minU1 + minU2 > 0
};

// find a threshold with mu1{f1 > t} + mu2{f2 > -t} > 1; requires
// integral(mu1,f1) + integral(mu2,f2) > 0
LayerCakeSplit layer_cake_split(const FiniteMeasure& mu1, const FiniteMeasure& mu2,
                                const StepFunction& f1, const StepFunction& f2);

// ---- the three-term counterexample audit ----------------------------------

// data: mu_j = (delta_{x_j} + delta_{y_j})/2, f_j(x_j) = -f_j(y_j) = fjx for
// j = 1,2, and f_3 values (f3x, f3y) with f3x + f3y > 0
struct Sum3Instance {
    Rat f1x, f2x, f3x, f3y;
};

struct Sum3Result {
    bool noTriple = true;
    std::string counterexample;  // set triple when noTriple is false
    Rat sumIntegrals;            // sum_j mu_j(f_j), positive for valid inputs
};

// exhaustive over the 4^3 atom-subset triples: no (A_1,A_2,A_3) has
// sum_j min_{A_j} f_j > 0 and sum_j mu_j(A_j) > 2
Sum3Result sum3_audit(const Sum3Instance& inst);

// ---- density extraction from a measure -------------------------------------

struct LargeDensityResult {
    PatternPoint x;    // maximizing atom
    Mask Fpsi = 0;     // {s in [0,n): s.x in A_{psi(s)}}
    Rat score;         // sum_j |Fpsi ∩ psi^{-1}(j)| / |psi^{-1}(j)|
    bool boundAsserted = false;  // score > 1 + delta was checked
};

// nu must satisfy nu(s^{-1}A_{psi(s)}) > bound_{psi(s)} for every s; when
// the bounds sum (weighted by color frequencies) to >= 1 + delta the
// returned score exceeds 1 + delta
LargeDensityResult large_density_extract(const FiniteMeasure& nu, const DenseMap& psi,
                                         const std::vector<CylinderSet>& tuple,
                                         const std::vector<Rat>& bounds, const Rat& delta);

// ---- convex combination of measure witnesses -------------------------------

struct ConvexCombineItem {
    FiniteMeasure mu, nu;
    WeakStarNbhd combined;  // constraints the combination must satisfy
};

// lambda*mu + (1-lambda)*nu per item, each re-verified against `combined`
std::vector<FiniteMeasure> convex_witness_combine(const std::vector<ConvexCombineItem>& items,
                                                  const Rat& lambda);

// ---- measure-level independence and the point reduction --------------------

// the two-component instance: X = {0,1}^Z ∪ {1,2}^Z with disjoint cylinder
// pairs (V_j, W_j) and weights lambda = 3/4, eps = 1/8
struct NotIEInstance {
    SubshiftSpec X;
    CylinderSet V1, V2, W1, W2;
    Rat lambda, eps;
};

NotIEInstance not_ie_instance();

struct MeasureIndepAudit {
    bool certified = false;  // every sigma got a verified 2-atom witness
    bool exhausted = false;  // generator found no witness for some sigma
    std::vector<int> failedSigma;  // colors over J (1-based), set when exhausted
    std::vector<std::pair<std::vector<int>, FiniteMeasure>> witnesses;
};

// witness search over 2-atom measures (heavy atom lambda on the V side,
// light atom 1-lambda on the W side); sound positive answers only
MeasureIndepAudit measure_indep_audit(const NotIEInstance& inst,
                                      const std::vector<long long>& J);

struct PointReduction {
    bool verified = false;
    std::vector<std::pair<std::vector<int>, PatternPoint>> points;  // sigma -> w_sigma
};

// light atoms of a certified audit witness family, re-verified as an
// independence certificate for (W_1, W_2)
PointReduction point_reduction(const NotIEInstance& inst, const MeasureIndepAudit& audit,
                               const std::vector<long long>& J);

}  // namespace indlab
