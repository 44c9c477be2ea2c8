#include "tva/assoc_polytopes.hpp"

namespace tva::assoc {

using geom::HPolytope;
using linalg::Vec;

bool PentagonParams::regime_ok() const {
    auto pos = [](const Rat& r) { return r > 0; };
    if (!(pos(xi) && pos(alpha1) && pos(alpha2) && pos(eps1) && pos(eps2) && pos(rho)))
        return false;
    // small class strictly below the middle class, middle strictly below rho
    Rat small_max = std::max({xi, eps1, alpha1});
    Rat mid_min = std::min(eps2, alpha2);
    Rat mid_max = std::max(eps2, alpha2);
    return small_max < mid_min && mid_max < rho;
}

HPolytope pentagon_P(const PentagonParams& p) {
    HPolytope P;
    P.dim = 2;
    P.add({Rat(1), Rat(0)}, p.rho - p.alpha1);  //  x <= rho - alpha1
    P.add({Rat(-1), Rat(0)}, -p.eps2);          //  x >= eps2
    P.add({Rat(0), Rat(1)}, p.rho - p.alpha2);  //  y <= rho - alpha2
    P.add({Rat(0), Rat(-1)}, -p.eps1);          //  y >= eps1
    P.add({Rat(-1), Rat(1)}, -p.xi);            //  x - y >= xi
    return P;
}

KnDomain kn_domain(int n, const Rat& rho) {
    if (n < 3) throw TvaError("kn_domain: n must be >= 3");
    if (!(rho > 0)) throw TvaError("kn_domain: rho must be positive");
    KnDomain D;
    D.n = n;
    int d = n - 2; // coordinates t_2..t_{n-1}

    D.order_simplex.dim = d;
    {
        // rho >= t_2 >= ... >= t_{n-1} >= 0 (closure of the open order simplex)
        Vec row(static_cast<size_t>(d), Rat(0));
        row[0] = 1;
        D.order_simplex.add(row, rho);
        for (int i = 0; i + 1 < d; ++i) {
            Vec r(static_cast<size_t>(d), Rat(0));
            r[static_cast<size_t>(i + 1)] = 1;
            r[static_cast<size_t>(i)] = -1;
            D.order_simplex.add(r, Rat(0)); // t_{k+1} - t_k <= 0
        }
        Vec last(static_cast<size_t>(d), Rat(0));
        last[static_cast<size_t>(d - 1)] = -1;
        D.order_simplex.add(last, Rat(0)); // -t_{n-1} <= 0
    }

    // Loday facets: for a contiguous interval [u, v] of {1..n-1}, proper,
    //   sum_{i=u}^{v} x_i >= (v-u+1)(v-u+2)/2.
    // With s_k = x_k + ... + x_{n-1} (so t_k = rho s_k / T, T = n(n-1)/2 + 1,
    // s_1 = n(n-1)/2, s_n = 0) the sum is s_u - s_{v+1}.
    D.realization.dim = d;
    Rat T = Rat(n * (n - 1)) / 2 + 1;
    Rat total = Rat(n * (n - 1)) / 2;
    auto s_coeff = [&](int k, Vec& row, Rat& constant, int sign) {
        // adds sign * s_k expressed via t (s_k = T t_k / rho), handling the
        // constant ends s_1 and s_n
        if (k == 1) constant += Rat(sign) * total;
        else if (k == n) ; // zero
        else row[static_cast<size_t>(k - 2)] += Rat(sign) * T / rho;
    };
    for (int u = 1; u <= n - 1; ++u) {
        for (int v = u; v <= n - 1; ++v) {
            if (u == 1 && v == n - 1) continue;
            long len = v - u + 1;
            Rat c = Rat(len * (len + 1)) / 2;
            Vec row(static_cast<size_t>(d), Rat(0));
            Rat constant = 0;
            s_coeff(u, row, constant, 1);
            s_coeff(v + 1, row, constant, -1);
            // s_u - s_{v+1} >= c  <=>  -(row . t) <= constant - c
            for (auto& x : row) x = -x;
            D.realization.add(row, constant - c);
            D.row_blocks.emplace_back(u - 1, static_cast<int>(len) + 1);
        }
    }
    return D;
}

int boundary_euler_characteristic(int n) {
    FaceLattice L = associahedron_faces(n);
    int chi = 0;
    for (size_t i = 0; i < L.faces.size(); ++i) {
        if (static_cast<int>(i) == L.top()) continue;
        chi += (L.dims[i] % 2 == 0) ? 1 : -1;
    }
    return chi;
}

} // namespace tva::assoc
