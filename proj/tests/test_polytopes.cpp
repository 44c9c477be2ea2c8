#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tva/assoc_polytopes.hpp"
#include "tva/hpolytope.hpp"
#include "tva/trees.hpp"

#include <map>
#include <random>

using namespace tva;
using namespace tva::assoc;
using namespace tva::geom;

namespace {

// Independent oracle: count binary trees with n leaves (Catalan C_{n-1}).
long catalan_oracle(int n) {
    std::vector<long> c(static_cast<size_t>(n) + 1, 0);
    c[1] = 1;
    for (int m = 2; m <= n; ++m)
        for (int a = 1; a < m; ++a)
            c[static_cast<size_t>(m)] += c[static_cast<size_t>(a)] * c[static_cast<size_t>(m - a)];
    return c[static_cast<size_t>(n)];
}

Rat shoelace_oracle(std::vector<linalg::Vec> pts) {
    // order CCW around the centroid with exact comparisons
    linalg::Vec c(2, Rat(0));
    for (auto& p : pts) {
        c[0] += p[0];
        c[1] += p[1];
    }
    c[0] /= Rat(static_cast<int>(pts.size()));
    c[1] /= Rat(static_cast<int>(pts.size()));
    auto half = [&](const linalg::Vec& p) {
        Rat dx = p[0] - c[0], dy = p[1] - c[1];
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const linalg::Vec& a, const linalg::Vec& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        Rat cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
        return cross > 0;
    });
    Rat area = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[(i + 1) % pts.size()];
        area += p[0] * q[1] - q[0] * p[1];
    }
    return area / 2;
}

PentagonParams spec_params() {
    PentagonParams p;
    p.rho = 1;
    p.alpha2 = Rat(1, 10);
    p.eps2 = Rat(1, 10);
    p.alpha1 = Rat(1, 100);
    p.eps1 = Rat(1, 100);
    p.xi = Rat(1, 100);
    return p;
}

} // namespace

TEST_CASE("vertex and facet counts of K_n") {
    const std::map<int, int> expected_vertices{{3, 2}, {4, 5}, {5, 14}, {6, 42}, {7, 132}, {8, 429}};
    for (auto [n, count] : expected_vertices) {
        auto L = associahedron_faces(n);
        CHECK(L.count_dim(0) == count);
        CHECK(L.count_dim(0) == catalan_oracle(n));
        CHECK(L.count_dim(n - 3) == n * (n - 1) / 2 - 1);
        CHECK(L.count_dim(n - 2) == 1);
    }
    CHECK_THROWS_AS(associahedron_faces(11), TvaError);
}

TEST_CASE("K3 and K4 lattices") {
    auto L3 = associahedron_faces(3);
    CHECK(L3.faces.size() == 3);
    CHECK(L3.count_dim(0) == 2);
    auto L4 = associahedron_faces(4);
    CHECK(L4.count_dim(0) == 5);
    CHECK(L4.count_dim(1) == 5);
    CHECK(L4.count_dim(2) == 1);
    // boundary of the K3 top face: two endpoints with opposite signs
    auto b = face_boundary(PlanarTree::corolla(3));
    REQUIRE(b.size() == 2);
    CHECK(b[0].second * b[1].second == -1);
    // pentagon has 5 signed edges
    CHECK(face_boundary(PlanarTree::corolla(4)).size() == 5);
    CHECK_THROWS_AS(face_boundary(PlanarTree::corolla(2)), TvaError);
}

TEST_CASE("signed boundary squares to zero for n <= 6") {
    for (int n = 3; n <= 6; ++n) {
        auto L = associahedron_faces(n);
        for (size_t i = 0; i < L.faces.size(); ++i) {
            if (L.dims[i] < 2) continue;
            std::map<std::string, int> codim2;
            for (const auto& [g, sg] : face_boundary(L.faces[i]))
                for (const auto& [h, sh] : face_boundary(g)) codim2[h.key()] += sg * sh;
            for (const auto& [k, c] : codim2) {
                INFO("n=" << n << " face " << L.faces[i].key() << " codim2 " << k);
                CHECK(c == 0);
            }
        }
    }
}

TEST_CASE("boundary complex has the Euler characteristic of a sphere") {
    for (int n = 3; n <= 8; ++n) {
        int chi = boundary_euler_characteristic(n);
        int expect = 1 + ((n - 3) % 2 == 0 ? 1 : -1);
        CHECK(chi == expect);
    }
}

TEST_CASE("pentagon vertices at the spec parameters") {
    auto P = pentagon_P(spec_params());
    auto vs = P.vertices();
    REQUIRE(vs.size() == 5);
    std::vector<linalg::Vec> expect = {
        {Rat(1, 10), Rat(1, 100)},   {Rat(1, 10), Rat(9, 100)}, {Rat(91, 100), Rat(9, 10)},
        {Rat(99, 100), Rat(1, 100)}, {Rat(99, 100), Rat(9, 10)},
    };
    std::sort(expect.begin(), expect.end());
    CHECK(vs == expect);
    CHECK(P.facet_rows().size() == 5);
    CHECK(P.full_dimensional());
}

TEST_CASE("degenerate pentagon is reported") {
    auto p = spec_params();
    p.xi = p.rho; // regime violated
    CHECK(!p.regime_ok());
    auto P = pentagon_P(p);
    CHECK(!(P.feasible() && P.full_dimensional()));
    CHECK(spec_params().regime_ok());
}

TEST_CASE("pentagon vertex count is stable over a regime grid") {
    std::vector<Rat> small{Rat(1, 100), Rat(1, 160), Rat(1, 64)};
    std::vector<Rat> mid{Rat(1, 10), Rat(1, 12), Rat(1, 8)};
    for (const auto& xi : small)
        for (const auto& e2 : mid)
            for (const auto& a2 : mid) {
                PentagonParams p;
                p.rho = 1;
                p.xi = xi;
                p.eps1 = Rat(1, 128);
                p.alpha1 = Rat(1, 90);
                p.eps2 = e2;
                p.alpha2 = a2;
                REQUIRE(p.regime_ok());
                CHECK(pentagon_P(p).vertices().size() == 5);
            }
}

TEST_CASE("exact pentagon area") {
    auto P = pentagon_P(spec_params());
    // oracle: rectangle minus the cut corner triangle
    Rat rect = Rat(89, 100) * Rat(89, 100);
    Rat tri = Rat(81, 100) * Rat(81, 100) / 2;
    CHECK(rect - tri == Rat(9281, 20000));
    CHECK(P.volume() == Rat(9281, 20000));
    CHECK(shoelace_oracle(P.vertices()) == Rat(9281, 20000));
}

TEST_CASE("simple exact integrals") {
    HPolytope seg = HPolytope::box({{Rat(0), Rat(1)}});
    CHECK(integrate(seg, Poly(Rat(1))) == Rat(1));
    CHECK(integrate(seg, Poly::var(0)) == Rat(1, 2));
    auto D3 = kn_domain(3, Rat(1));
    CHECK(integrate(D3.order_simplex, Poly(Rat(1))) == Rat(1));
    HPolytope sq = HPolytope::box({{Rat(0), Rat(1)}, {Rat(0), Rat(1)}});
    Poly xy = Poly::var(0) * Poly::var(1);
    CHECK(integrate(sq, xy) == Rat(1, 4));
}

TEST_CASE("integrate is linear and additive under box splits") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 6; ++iter) {
        Rat cx(1 + static_cast<int>(rng() % 7), 8);
        HPolytope box = HPolytope::box({{Rat(0), Rat(1)}, {Rat(0), Rat(1)}});
        HPolytope left = HPolytope::box({{Rat(0), cx}, {Rat(0), Rat(1)}});
        HPolytope right = HPolytope::box({{cx, Rat(1)}, {Rat(0), Rat(1)}});
        Poly f;
        for (int t = 0; t < 4; ++t) {
            Poly mono = Poly(Rat(static_cast<int>(rng() % 11) - 5));
            mono = mono * Poly::var(0, static_cast<unsigned>(rng() % 4));
            mono = mono * Poly::var(1, static_cast<unsigned>(rng() % 4));
            f += mono;
        }
        Poly g = Poly::var(0, 2) + Poly::var(1);
        CHECK(integrate(box, f) == integrate(left, f) + integrate(right, f));
        CHECK(integrate(box, f + g) == integrate(box, f) + integrate(box, g));
    }
}

TEST_CASE("integrate rejects unbounded domains") {
    HPolytope half;
    half.dim = 1;
    half.add({Rat(-1)}, Rat(0)); // x >= 0 only
    CHECK(!half.bounded());
    CHECK_THROWS_AS(integrate(half, Poly(Rat(1))), TvaError);
}

TEST_CASE("kn_domain realizations") {
    for (int n = 3; n <= 6; ++n) {
        auto D = kn_domain(n, Rat(1));
        auto L = associahedron_faces(n);
        auto vs = D.realization.vertices();
        CHECK(static_cast<int>(vs.size()) == L.count_dim(0));
        CHECK(static_cast<int>(D.realization.facet_rows().size()) == L.count_dim(n - 3));
        // realization vertices are exactly the mapped binary trees
        std::vector<linalg::Vec> pts;
        for (const auto& b : binary_refinements(PlanarTree::corolla(n)))
            pts.push_back(realization_point(b, Rat(1)));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        CHECK(pts == vs);
        // strict interior of the order simplex: rho > t2 > ... > 0
        for (const auto& v : vs) {
            CHECK(v[0] < 1);
            for (size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i] > v[i + 1]);
            CHECK(v.back() > 0);
        }
        // every realization row is facet-defining and maps to a block
        CHECK(D.row_blocks.size() == D.realization.A.size());
    }
    CHECK_THROWS_AS(kn_domain(2, Rat(1)), TvaError);
}

TEST_CASE("moduli cell counts") {
    CHECK(moduli_cell_count(3) == 3);
    CHECK(moduli_cell_count(4) == 12);
    CHECK(moduli_cell_count(5) == 60);
    CHECK_THROWS_AS(moduli_cell_count(2), TvaError);
}

TEST_CASE("off export") {
    auto P = pentagon_P(spec_params());
    std::string off = P.off_text();
    CHECK(off.rfind("ROFF\n", 0) == 0);
    CHECK(off.find("5 5") != std::string::npos);
    CHECK(off.find("1/10") != std::string::npos);
}
