// Subshift and measure tests: cylinder satisfiability, interval
// independence density, the layer-cake threshold split, the three-term
// audit, density extraction from measures, convex combination, and the
// measure-to-point reduction on the two-component instance.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "indlab/dynamics.hpp"

using namespace indlab;

namespace {

CylinderSet cyl(long long pos, int sym) {
    CylinderSet c;
    c.constraints = {{pos, sym}};
    return c;
}

PatternPoint constant_point(int sym) {
    PatternPoint p;
    p.defaultSymbol = sym;
    return p;
}

}  // namespace

TEST_CASE("two-component instance is well formed") {
    NotIEInstance inst = not_ie_instance();
    CHECK(inst.X.valid());
    CHECK(inst.X.component_containing({0, 1}) == 0);
    CHECK(inst.X.component_containing({1, 2}) == 1);
    CHECK(inst.X.component_containing({1}) == 0);  // smallest index wins
    CHECK(!inst.X.component_containing({0, 2}).has_value());
    CHECK(inst.lambda - inst.eps > Rat(1, 2));
}

TEST_CASE("cylinder satisfiability inside the union of full shifts") {
    SubshiftSpec X = not_ie_instance().X;
    // x(0)=0 and x(5)=1 live together in component {0,1}
    SatResult r = satisfiable(X, {{0, cyl(0, 0)}, {5, cyl(0, 1)}});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->at(0) == 0);
    CHECK(r.witness->at(5) == 1);
    // x(0)=0 and x(5)=2 appear in no single component
    r = satisfiable(X, {{0, cyl(0, 0)}, {5, cyl(0, 2)}});
    CHECK(!r.witness.has_value());
    CHECK(!r.clash.empty());
    // same position, conflicting symbols
    r = satisfiable(X, {{0, cyl(0, 0)}, {-2, cyl(2, 1)}});
    CHECK(!r.witness.has_value());
    // no constraints: anything works
    CHECK(satisfiable(X, {}).witness.has_value());
    // shift arithmetic: constraint at position pos+shift
    r = satisfiable(X, {{3, cyl(4, 2)}});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->at(7) == 2);
}

TEST_CASE("point membership under shifts") {
    PatternPoint x;
    x.defaultSymbol = 1;
    x.core = {{0, 2}, {4, 0}};
    CHECK(x.in_cylinder(cyl(0, 2), 0));
    CHECK(x.in_cylinder(cyl(0, 0), 4));   // (4.x)(0) = x(4) = 0
    CHECK(x.in_cylinder(cyl(2, 1), 0));
    CHECK(!x.in_cylinder(cyl(0, 2), 1));
}

TEST_CASE("measures: evaluation and translation identity") {
    FiniteMeasure nu;
    PatternPoint a = constant_point(1);
    PatternPoint b;
    b.defaultSymbol = 1;
    b.core = {{3, 2}};
    nu.atoms = {{a, Rat(1, 3)}, {b, Rat(2, 3)}};
    REQUIRE(nu.valid());
    CHECK(measure_of(nu, cyl(3, 2)) == Rat(2, 3));
    CHECK(measure_of(nu, cyl(3, 1)) == Rat(1, 3));
    CHECK(measure_of(nu, cyl(0, 1)) == 1);
    // (s nu)(C) = nu(s^{-1}C): shifting by 3 moves the exceptional symbol to 0
    FiniteMeasure shifted = translate(nu, 3);
    CHECK(measure_of(shifted, cyl(0, 2)) == Rat(2, 3));
    for (long long s : {-2LL, 0LL, 5LL}) {
        FiniteMeasure t = translate(nu, s);
        CylinderSet C = cyl(1, 2);
        CylinderSet Cs = cyl(1 + s, 2);
        CHECK(measure_of(t, C) == measure_of(nu, Cs));
    }
    // weak-star neighborhood membership is strict
    WeakStarNbhd N;
    N.lowerBounds = {{cyl(3, 2), Rat(1, 2)}};
    CHECK(N.contains(nu));
    N.lowerBounds = {{cyl(3, 2), Rat(2, 3)}};
    CHECK(!N.contains(nu));
}

TEST_CASE("interval independence density on the two-component instance") {
    NotIEInstance inst = not_ie_instance();
    // the W pair clashes across components: no two positions are independent
    for (int n : {1, 2, 3, 8, 32}) {
        DensityResult r = interval_independence_density(inst.X, {inst.W1, inst.W2}, n);
        CHECK(r.exact);
        CHECK(r.phi == 1);
        CHECK(r.density == Rat(1, n));
    }
    // the V pair lives inside one component: every window is independent
    for (int n : {1, 4, 32}) {
        DensityResult r = interval_independence_density(inst.X, {inst.V1, inst.V2}, n);
        CHECK(r.exact);
        CHECK(r.phi == n);
        CHECK(r.density == 1);
        CHECK(r.J == full_mask(n));
    }
    // control pair in a single component behaves the same way
    DensityResult c = interval_independence_density(inst.X, {cyl(0, 0), cyl(0, 1)}, 32);
    CHECK(c.phi == 32);
    // density is monotone in the sense phi(n+1) >= phi(n)
    int prev = 0;
    for (int n = 1; n <= 6; ++n) {
        DensityResult r = interval_independence_density(inst.X, {inst.W1, inst.V1}, n);
        CHECK(r.phi >= prev);
        prev = r.phi;
    }
}

TEST_CASE("layer-cake split on a two-point example") {
    PatternPoint a = constant_point(0);
    PatternPoint b = constant_point(1);
    FiniteMeasure mu1, mu2;
    mu1.atoms = {{a, Rat(1)}};
    mu2.atoms = {{b, Rat(1)}};
    StepFunction f1, f2;
    f1.pieces = {{cyl(0, 0), Rat(1)}};
    f1.defaultValue = Rat(-5);
    f2.pieces = {{cyl(0, 1), Rat(-1, 2)}};
    f2.defaultValue = Rat(-5);
    CHECK(integral(mu1, f1) == 1);
    CHECK(integral(mu2, f2) == Rat(-1, 2));
    LayerCakeSplit split = layer_cake_split(mu1, mu2, f1, f2);
    CHECK(split.measureIneq);
    CHECK(split.minIneq);
    CHECK(split.u1Measure + split.u2Measure > 1);
    CHECK(split.minU1 + split.minU2 > 0);
    CHECK(split.eps > 0);
    // nonpositive total integral is rejected
    StepFunction g = f2;
    g.pieces[0].second = Rat(-1);
    CHECK_THROWS(layer_cake_split(mu1, mu2, g, g));
}

TEST_CASE("three-term audit: frozen instance and input validation") {
    Sum3Instance inst{Rat(3, 2), Rat(3, 2), Rat(3, 2), Rat(-7, 5)};
    Sum3Result r = sum3_audit(inst);
    CHECK(r.noTriple);
    CHECK(r.counterexample.empty());
    CHECK(r.sumIntegrals == Rat(1, 20));
    CHECK(r.sumIntegrals > 0);
    CHECK_THROWS(sum3_audit({Rat(1, 2), Rat(3, 2), Rat(3, 2), Rat(-7, 5)}));  // f1x <= 1
    CHECK_THROWS(sum3_audit({Rat(3, 2), Rat(3, 2), Rat(3, 2), Rat(-8, 5)}));  // sum <= 0
    // several instances across the admissible box
    for (int i = 1; i <= 9; ++i) {
        Rat f3x = 1 + Rat(i, 10);
        Rat f3y = -f3x + Rat(1, 100);
        if (!(f3y > -2 && f3y < -1)) continue;
        CHECK(sum3_audit({Rat(3, 2), Rat(3, 2), f3x, f3y}).noTriple);
    }
}

TEST_CASE("density extraction from a measure with verified lower bounds") {
    NotIEInstance inst = not_ie_instance();
    std::vector<CylinderSet> tuple = {inst.V1, inst.V2};  // symbols 2 and 1
    // good atom matches the coloring everywhere; bad atom nowhere
    PatternPoint good;
    good.defaultSymbol = 1;
    good.core = {{0, 2}};  // psi = (1,2): wants x(0)=2, x(1)=1
    PatternPoint bad = constant_point(0);
    DenseMap psi = {1, 2};

    FiniteMeasure dirac;
    dirac.atoms = {{good, Rat(1)}};
    LargeDensityResult r =
        large_density_extract(dirac, psi, tuple, {Rat(3, 4), Rat(3, 4)}, Rat(1, 2));
    CHECK(r.boundAsserted);
    CHECK(r.score == 2);
    CHECK(r.Fpsi == 0b11);
    CHECK(r.x.at(0) == 2);

    FiniteMeasure two;
    two.atoms = {{good, Rat(3, 4)}, {bad, Rat(1, 4)}};
    r = large_density_extract(two, psi, tuple, {Rat(1, 2), Rat(1, 2)}, Rat(0));
    CHECK(r.boundAsserted);
    CHECK(r.score == 2);  // the maximizing atom is the good one
    CHECK(r.x.at(1) == 1);

    // precondition failure is reported, not silently ignored
    FiniteMeasure weak;
    weak.atoms = {{good, Rat(1, 2)}, {bad, Rat(1, 2)}};
    CHECK_THROWS(large_density_extract(weak, psi, tuple, {Rat(3, 4), Rat(3, 4)}, Rat(0)));
}

TEST_CASE("convex combination of witnesses is re-verified") {
    PatternPoint a = constant_point(0);
    PatternPoint b = constant_point(1);
    ConvexCombineItem item;
    item.mu.atoms = {{a, Rat(1)}};
    item.nu.atoms = {{b, Rat(1)}};
    item.combined.lowerBounds = {{cyl(0, 0), Rat(1, 4)}};
    // lambda = 1: result is mu itself
    auto out = convex_witness_combine({item}, Rat(1));
    REQUIRE(out.size() == 1);
    CHECK(measure_of(out[0], cyl(0, 0)) == 1);
    // lambda = 1/2: both atoms, half weight each
    out = convex_witness_combine({item}, Rat(1, 2));
    CHECK(measure_of(out[0], cyl(0, 0)) == Rat(1, 2));
    CHECK(measure_of(out[0], cyl(0, 1)) == Rat(1, 2));
    CHECK(out[0].valid());
    // an unachievable bound makes the re-verification throw
    item.combined.lowerBounds = {{cyl(0, 0), Rat(9, 10)}};
    CHECK_THROWS(convex_witness_combine({item}, Rat(1, 2)));
    CHECK_THROWS(convex_witness_combine({item}, Rat(2)));  // lambda out of range
}

TEST_CASE("measure-level independence audit and the point reduction") {
    NotIEInstance inst = not_ie_instance();
    // a single position: both colors get verified 2-atom witnesses
    MeasureIndepAudit audit = measure_indep_audit(inst, {0});
    CHECK(audit.certified);
    CHECK(!audit.exhausted);
    REQUIRE(audit.witnesses.size() == 2);
    PointReduction red = point_reduction(inst, audit, {0});
    CHECK(red.verified);
    REQUIRE(red.points.size() == 2);
    for (const auto& [sigma, w] : red.points) {
        REQUIRE(sigma.size() == 1);
        CHECK(w.at(0) == (sigma[0] == 1 ? 0 : 2));
    }
    // two positions: the W side mixes components, so some sigma fails
    audit = measure_indep_audit(inst, {0, 7});
    CHECK(!audit.certified);
    CHECK(audit.exhausted);
    REQUIRE(audit.failedSigma.size() == 2);
    // the failing pattern really is unsatisfiable on the light side
    const CylinderSet* W[2] = {&inst.W1, &inst.W2};
    std::vector<ShiftedCylinder> cons = {{0, *W[audit.failedSigma[0] - 1]},
                                         {7, *W[audit.failedSigma[1] - 1]}};
    CHECK(!satisfiable(inst.X, cons).witness.has_value());
    // an uncertified audit yields no point reduction
    CHECK(!point_reduction(inst, audit, {0, 7}).verified);
}
