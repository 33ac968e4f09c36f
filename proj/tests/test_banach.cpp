// Convex-geometry tests: hull membership against a Caratheodory oracle,
// the sign-pattern embedding and its dual image, the signed-threshold
// extraction with its log-size audit, and the simplex net intersection.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "indlab/banach.hpp"

using namespace indlab;
using Vec = std::vector<Rat>;

namespace {

VectorFamily family(int n, std::vector<Vec> vs) {
    VectorFamily E;
    E.n = n;
    E.vectors = std::move(vs);
    E.pInf = true;
    return E;
}

// brute-force hull membership for n <= 3: try all subsets of size <= n+1
// (Caratheodory over conv(E ∪ {0})) solving the exact LP on each subset
bool hull_brute(const VectorFamily& E, const Vec& target) {
    int n = E.n;
    int v = (int)E.vectors.size();
    std::vector<int> pick;
    std::function<bool(int, int)> rec = [&](int at, int start) -> bool {
        if (at == (int)pick.size()) {
            // feasibility: sum t_i e_i = target, t >= 0, sum t <= 1
            std::vector<std::vector<Rat>> A(n + 1, std::vector<Rat>(pick.size() + 1, Rat(0)));
            Vec b(n + 1);
            for (int r = 0; r < n; ++r) {
                for (size_t c = 0; c < pick.size(); ++c) A[r][c] = E.vectors[pick[c]][r];
                b[r] = target[r];
            }
            for (size_t c = 0; c < pick.size(); ++c) A[n][c] = 1;
            A[n][pick.size()] = 1;  // slack for sum <= 1
            b[n] = 1;
            return solve_feasibility(A, b).feasible;
        }
        for (int c = start; c < v; ++c) {
            pick[at] = c;
            if (rec(at + 1, c + 1)) return true;
        }
        return false;
    };
    for (int size = 0; size <= std::min(v, n + 1); ++size) {
        pick.assign(size, 0);
        if (rec(0, 0)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("hull membership: fixed examples with verified certificates") {
    VectorFamily E = family(2, {{Rat(1), Rat(0)},
                                {Rat(-1), Rat(0)},
                                {Rat(0), Rat(1)},
                                {Rat(0), Rat(-1)}});
    HullResult in = hull_member(E, {Rat(3, 10), Rat(3, 10)});
    REQUIRE(in.feasible);
    // substitution: the implementation re-checks, but recompute here too
    Rat x = 0, y = 0, total = 0;
    for (size_t i = 0; i < E.vectors.size(); ++i) {
        x += in.coeffs[i] * E.vectors[i][0];
        y += in.coeffs[i] * E.vectors[i][1];
        total += in.coeffs[i];
        CHECK(in.coeffs[i] >= 0);
    }
    CHECK(x == Rat(3, 10));
    CHECK(y == Rat(3, 10));
    CHECK(total <= 1);

    HullResult outOfHull = hull_member(E, {Rat(1), Rat(1)});
    CHECK(!outOfHull.feasible);
    CHECK(!outOfHull.farkas.empty());
    CHECK(hull_member(E, {Rat(1, 2), Rat(1, 2)}).feasible);  // boundary point
    CHECK(hull_member(E, {Rat(0), Rat(0)}).feasible);        // the origin
}

TEST_CASE("hull membership agrees with the Caratheodory oracle") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + (int)(rng() % 2);
        VectorFamily E;
        E.n = n;
        E.pInf = true;
        int v = 2 + (int)(rng() % 4);
        for (int i = 0; i < v; ++i) {
            Vec e(n);
            for (auto& c : e) c = Rat((long long)(rng() % 5) - 2, 1 + (long long)(rng() % 2));
            E.vectors.push_back(e);
        }
        Vec target(n);
        for (auto& c : target) c = Rat((long long)(rng() % 5) - 2, 2);
        HullResult r = hull_member(E, target);
        CHECK(r.feasible == hull_brute(E, target));
    }
}

TEST_CASE("sign embedding rows and isometry") {
    LinearMapData Phi1 = sign_embedding(1);
    REQUIRE(Phi1.rows() == 1);
    CHECK(Phi1.matrix[0] == Vec{Rat(1)});

    LinearMapData Phi2 = sign_embedding(2);
    REQUIRE(Phi2.rows() == 2);
    REQUIRE(Phi2.cols() == 2);
    CHECK(Phi2.matrix[0] == Vec{Rat(1), Rat(1)});
    CHECK(Phi2.matrix[1] == Vec{Rat(1), Rat(-1)});

    // ||Phi x||_inf = ||x||_1 exactly on a fixed vector
    Vec img = Phi2.apply({Rat(3), Rat(-4)});
    Rat norm = 0;
    for (const Rat& c : img)
        if (abs(c) > norm) norm = Rat(abs(c));
    CHECK(norm == 7);

    for (int n : {1, 2, 3, 4}) {
        LinearMapData Phi = sign_embedding(n);
        CHECK(Phi.rows() == (1 << (n - 1)));
        CHECK(sign_embedding_isometry_check(Phi, 2026 + n));
    }
}

TEST_CASE("dual image of the identity and of the sign embedding") {
    LinearMapData id;
    id.matrix = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    DualImageReport rep = dual_image(id, 1, Rat(2));
    CHECK(rep.norm == 1);
    CHECK(rep.dualityChecked);
    CHECK(rep.containment);
    CHECK(rep.containmentExact);
    REQUIRE(rep.Eprime.vectors.size() == 4);  // ± rows
    // the dual family is exactly {±e_1, ±e_2}
    int unit = 0;
    for (const Vec& v : rep.Eprime.vectors) {
        Rat sum = abs(v[0]) + abs(v[1]);
        if (sum == 1) ++unit;
    }
    CHECK(unit == 4);

    LinearMapData Phi = sign_embedding(2);
    DualImageReport rep2 = dual_image(Phi, 1, Rat(101, 100));
    CHECK(rep2.dualityChecked);
    CHECK(rep2.containment);
    CHECK(rep2.norm == 1);  // the 1 -> inf operator norm is the max entry magnitude
    CHECK_THROWS(dual_image(Phi, 2, Rat(2)));  // only q = 1 is supported
}

TEST_CASE("signed-threshold extraction over the dual unit vectors") {
    for (int n : {2, 3, 4}) {
        std::vector<Vec> vs;
        for (int i = 0; i < n; ++i)
            for (int s : {1, -1}) {
                Vec e(n, Rat(0));
                e[i] = Rat(s);
                vs.push_back(e);
            }
        VectorFamily E = family(n, vs);
        Rat delta = Rat(1, n);
        FlmExtractResult r = flm_extract(E, delta);
        CHECK(r.preconditionOk);
        CHECK(r.cert.verified);
        CHECK(popcount(r.cert.J) >= 1);
        CHECK(r.t1 - r.t2 >= delta);
        CHECK(r.scale == 1);
        // sigma witnesses are pairwise distinct
        for (size_t i = 0; i < r.sigmaWitnesses.size(); ++i)
            for (size_t j = i + 1; j < r.sigmaWitnesses.size(); ++j)
                CHECK(r.sigmaWitnesses[i].second != r.sigmaWitnesses[j].second);
    }
}

TEST_CASE("log-size bound audit") {
    // the sign embedding with a tight constant
    for (int n : {2, 3}) {
        FlmBoundAudit audit = flm_bound_audit(1, Rat(101, 100), sign_embedding(n));
        CHECK(audit.n == n);
        CHECK(audit.embeddingVerified);
        CHECK(audit.dual.containment);
        CHECK(audit.witnessesDistinct);
        CHECK(audit.chainPass);
        CHECK(audit.Jsize >= 1);
        CHECK((1LL << audit.Jsize) <= audit.EprimeSize);
        CHECK(audit.EprimeSize <= 2 * audit.m);
    }
    // the identity embeds l_1^2 into l_inf^2 only with C >= 2
    LinearMapData id;
    id.matrix = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    FlmBoundAudit audit = flm_bound_audit(1, Rat(2), id);
    CHECK(audit.embeddingVerified);
    CHECK(audit.chainPass);
}

TEST_CASE("simplex net: size, mesh, and minimal refinement") {
    SimplexNet net1 = simplex_net(1, Rat(2));
    CHECK(net1.D == 1);
    REQUIRE(net1.Lambda.size() == 1);
    CHECK(net1.Lambda[0][0] == 1);

    SimplexNet net = simplex_net(2, Rat(2));
    CHECK(net.D == 17);  // floor(8C(m-1)) + 1 = 17
    for (const Vec& lam : net.Lambda) {
        Rat sum = 0;
        for (const Rat& c : lam) {
            sum += c;
            CHECK(c >= 0);
            // grid coordinates are multiples of 1/D
            CHECK(boost::multiprecision::denominator(Rat(c * net.D)) == 1);
        }
        CHECK(sum == 1);
    }
    CHECK(net.Lambda.size() == (size_t)(net.D + 1));
    // mesh is strictly below 1/(4C)
    CHECK(Rat(1, net.D) < Rat(1, 8));
}

TEST_CASE("simplex net intersection on constant and coordinate maps") {
    // constant map w = (1,1): its own convex hull contains (1,1)
    auto ones = [](const Vec&) { return Vec{Rat(1), Rat(1)}; };
    NetIntersection r = simplex_net_intersection(2, Rat(1), ones);
    REQUIRE(r.feasible);
    for (const Rat& c : r.point) CHECK(c >= Rat(1, 2));

    // w(lambda) = 2*lambda has <w, lambda> = 2|lambda|^2 >= 2 * 1/m >= 3/4
    auto doubling = [](const Vec& lam) {
        Vec out(lam.size());
        for (size_t i = 0; i < lam.size(); ++i) out[i] = 2 * lam[i];
        return out;
    };
    r = simplex_net_intersection(2, Rat(2), doubling);
    REQUIRE(r.feasible);
    Rat check = 0;
    REQUIRE(r.coeffs.size() == r.net.Lambda.size());
    Vec combo(2, Rat(0));
    for (size_t i = 0; i < r.coeffs.size(); ++i) {
        CHECK(r.coeffs[i] >= 0);
        check += r.coeffs[i];
        Vec wi = doubling(r.net.Lambda[i]);
        for (int j = 0; j < 2; ++j) combo[j] += r.coeffs[i] * wi[j];
    }
    CHECK(check == 1);
    for (int j = 0; j < 2; ++j) {
        CHECK(combo[j] == r.point[j]);
        CHECK(r.point[j] >= Rat(1, 2));
    }

    // hypothesis violations are rejected
    auto tooBig = [](const Vec&) { return Vec{Rat(3), Rat(3)}; };
    CHECK_THROWS(simplex_net_intersection(2, Rat(1), tooBig));
    auto tooSmall = [](const Vec&) { return Vec{Rat(0), Rat(0)}; };
    CHECK_THROWS(simplex_net_intersection(2, Rat(1), tooSmall));
}
