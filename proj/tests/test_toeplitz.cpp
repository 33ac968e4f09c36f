// Residue-system tests: frozen construction values, property verification
// with tamper detection, symbol evaluation, pattern witnesses, period
// certificates, audit kernel agreement, and JSON round-trips.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "indlab/toeplitz.hpp"

using namespace indlab;

namespace {

const ToeplitzSpec& spec3() {
    static ToeplitzSpec s = build_spec(3);
    return s;
}

std::vector<BigInt> big(std::initializer_list<long long> xs) {
    return std::vector<BigInt>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("frozen construction values, levels 1-3") {
    const ToeplitzSpec& s = spec3();
    REQUIRE(s.depth == 3);
    REQUIRE(s.verified);
    CHECK(s.n[0] == 56);
    CHECK(s.y[0] == big({2, 3, 15, 23}));
    CHECK(s.yp[0] == big({6, 7, 39, 47}));
    CHECK(s.z[0] == 4);
    CHECK(s.u[0] == 24);

    CHECK(s.n[1] == 3528);
    CHECK(s.y[1] == big({6, 62, 63, 119, 599, 935, 1223, 1559}));
    CHECK(s.yp[1] == big({174, 230, 231, 287, 2167, 2503, 2791, 3127}));
    CHECK(s.z[1] == 168);
    CHECK(s.u[1] == 1568);

    CHECK(s.n[2] == 642096);
    CHECK(s.y[2][0] == 174);
    CHECK(s.yp[2][15] == 606415);
    CHECK(s.z[2] == 17640);
    CHECK(s.u[2] == 303408);

    // anchors
    CHECK(s.a[0] == 2);
    CHECK(s.b[0] == 15);
    CHECK(s.a[1] == 6);
    CHECK(s.b[1] == 599);
}

TEST_CASE("level 4 builds quickly with the frozen period") {
    ToeplitzSpec s = build_spec(4);
    REQUIRE(s.depth == 4);
    CHECK(s.verified);
    CHECK(s.n[3] == 394246944);
    // levels below are unchanged by deepening
    CHECK(s.n[2] == 642096);
    CHECK(s.y[0] == spec3().y[0]);
}

TEST_CASE("property verification passes and detects tampering") {
    PropertyReport rep = verify_spec(spec3());
    CHECK(rep.all());

    ToeplitzSpec bad = spec3();
    bad.y[0][1] = bad.y[0][0];  // duplicate residue
    PropertyReport r1 = verify_spec(bad);
    CHECK(!r1.all());
    CHECK(!r1.distinct.pass);
    CHECK(!r1.distinct.counterexample.empty());

    bad = spec3();
    bad.n[1] += 1;  // breaks divisibility
    CHECK(!verify_spec(bad).divisibility.pass);

    bad = spec3();
    bad.z[0] += 1;  // shifts no longer map lower residues to primed ones
    CHECK(!verify_spec(bad).all());
}

TEST_CASE("symbol evaluation at frozen coordinates") {
    const ToeplitzSpec& s = spec3();
    SymbolEval e = eval_x(s, 0);
    CHECK(e.value == 0);
    CHECK(!e.provisional);
    CHECK(e.level == 1);
    CHECK(e.period == 56);

    e = eval_x(s, 2);
    CHECK(e.value == 1);
    CHECK(e.level == 1);
    CHECK(eval_x(s, 3).value == 2);
    CHECK(eval_x(s, 15).value == 3);
    CHECK(eval_x(s, 23).value == 4);

    e = eval_x(s, 6);
    CHECK(e.value == 1);
    CHECK(e.level == 2);
    CHECK(e.period == 3528);

    e = eval_x(s, 174);
    CHECK(e.value == 1);
    CHECK(e.level == 3);

    CHECK(eval_x(s, -53).value == 2);  // -53 = 3 mod 56

    // periodicity: the symbol repeats along its certified period
    for (long long t : {-3, -1, 1, 2, 7}) {
        CHECK(eval_x(s, 2 + t * 56).value == 1);
        CHECK(eval_x(s, 6 + t * 3528).value == 1);
    }
}

TEST_CASE("positions matching only primed residues stay provisional") {
    ToeplitzSpec s1 = build_spec(1);
    SymbolEval e = eval_x(s1, 6);  // 6 is a primed residue at the only level
    CHECK(e.value == 0);
    CHECK(e.provisional);
    // the deeper system resolves the same coordinate
    CHECK(!eval_x(spec3(), 6).provisional);
}

TEST_CASE("locate reports the unique matching residue") {
    const ToeplitzSpec& s = spec3();
    auto loc = locate(s, 2);
    REQUIRE(loc.has_value());
    CHECK(loc->first == 1);
    CHECK(loc->second == 1);
    loc = locate(s, 6);
    REQUIRE(loc.has_value());
    CHECK(loc->first == 2);
    CHECK(loc->second == 1);
    CHECK(!locate(s, 0).has_value());
    CHECK(!locate(s, 1).has_value());
}

TEST_CASE("color rule table") {
    CHECK(color_h(1, 1) == 1);
    CHECK(color_h(1, 2) == 2);
    CHECK(color_h(1, 3) == 3);
    CHECK(color_h(1, 4) == 4);
    CHECK(color_h(2, 3) == 1);
    CHECK(color_h(2, 4) == 2);
    CHECK(color_h(2, 5) == 3);
    CHECK(color_h(2, 8) == 4);
}

TEST_CASE("pattern witnesses at the anchors") {
    const ToeplitzSpec& s = spec3();
    CHECK(witness_for_pattern(s, {1}) == 0);
    CHECK(witness_for_pattern(s, {2}) == 55);
    CHECK(witness_for_pattern(s, {3}) == 0);
    // every sigma over three levels is realizable on both sides
    for (int side = 0; side < 2; ++side) {
        for (int code = 0; code < 8; ++code) {
            std::vector<int> sigma(3);
            for (int i = 0; i < 3; ++i) sigma[i] = (side ? 3 : 1) + ((code >> i) & 1);
            BigInt a = witness_for_pattern(s, sigma);  // throws if unrealizable
            for (int i = 0; i < 3; ++i) {
                const BigInt& anchor = side ? s.b[i] : s.a[i];
                CHECK(eval_x(s, anchor - a).value == sigma[i]);
            }
        }
    }
    CHECK_THROWS(witness_for_pattern(s, {1, 3}));  // sides cannot mix
}

TEST_CASE("period certificates") {
    const ToeplitzSpec& s = spec3();
    auto p = period_certificate(s, 2, 50);
    REQUIRE(p.has_value());
    CHECK(*p == 56);
    p = period_certificate(s, 6, 50);
    REQUIRE(p.has_value());
    CHECK(*p == 3528);
    p = period_certificate(s, 0, 50);
    REQUIRE(p.has_value());
    CHECK(*p == 56);
}

TEST_CASE("audit kernels agree on small windows") {
    ToeplitzSpec s2 = build_spec(2);
    for (int mode = 0; mode < 2; ++mode) {
        PairAuditConfig cfg;
        cfg.sLo = -20;
        cfg.sHi = 20;
        cfg.abLo = -56;
        cfg.abHi = 56;
        cfg.product = mode == 1;
        PairAuditResult par = pair_independence_audit(s2, cfg);
        PairAuditResult ser = pair_independence_audit_serial(s2, cfg);
        CHECK(par.independentPairs == ser.independentPairs);
        CHECK(par.inconclusivePairs == ser.inconclusivePairs);
        CHECK(par.nearMissPairs == ser.nearMissPairs);
        CHECK(par.maxIndependenceSize == ser.maxIndependenceSize);
        CHECK(par.pairsChecked == ser.pairsChecked);
        CHECK(par.independentPairs == 0);
    }
    // mixed plain pair over a determined window on the depth-3 system
    PairAuditConfig cfg;
    cfg.sLo = -56;
    cfg.sHi = 56;
    cfg.abLo = -200;
    cfg.abHi = 200;
    cfg.c1 = 1;
    cfg.c2 = 3;
    PairAuditResult par = pair_independence_audit(spec3(), cfg);
    PairAuditResult ser = pair_independence_audit_serial(spec3(), cfg);
    CHECK(par.independentPairs == 0);
    CHECK(par.independentPairs == ser.independentPairs);
    CHECK(par.inconclusivePairs == ser.inconclusivePairs);
    CHECK(par.maxIndependenceSize == ser.maxIndependenceSize);
    CHECK(par.blockingProperty == "(iii)");
}

TEST_CASE("JSON round trip preserves the spec exactly") {
    const ToeplitzSpec& s = spec3();
    ToeplitzSpec t = spec_from_json(spec_to_json(s));
    CHECK(t.depth == s.depth);
    CHECK(t.n == s.n);
    CHECK(t.y == s.y);
    CHECK(t.yp == s.yp);
    CHECK(t.z == s.z);
    CHECK(t.u == s.u);
    CHECK(t.a == s.a);
    CHECK(t.b == s.b);
    CHECK(t.verified == s.verified);
}
