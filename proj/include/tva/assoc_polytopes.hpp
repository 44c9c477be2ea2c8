#pragma once

#include "tva/hpolytope.hpp"
#include "tva/trees.hpp"

#include <utility>

namespace tva::assoc {

/// Parameters of the pentagon P. Regime: 0 < xi, eps1, alpha1 << eps2, alpha2 << rho.
struct PentagonParams {
    Rat xi, alpha1, alpha2, eps1, eps2, rho;

    /// true when the strict regime orderings hold (the pentagon is then
    /// combinatorially a pentagon).
    bool regime_ok() const;
};

/// H-representation of P in coordinates (x, y):
///   eps2 <= x <= rho - alpha1,  eps1 <= y <= rho - alpha2,  x - y >= xi.
/// The six boundary integrals determine all five edges; degenerate parameter
/// choices simply yield a degenerate polytope, which callers can detect.
geom::HPolytope pentagon_P(const PentagonParams& p);

struct KnDomain {
    int n = 0;
    geom::HPolytope order_simplex; // rho > t_2 > ... > t_{n-1} > 0 (closed form)
    geom::HPolytope realization;   // Loday realization, strictly inside
    /// For each realization row: the block (l, s) of arguments the facet
    /// groups (contiguous leaves l+1..l+s of the corolla).
    std::vector<std::pair<int, int>> row_blocks;
};

/// Order-simplex ambient domain and a concrete K_n realization inside it.
KnDomain kn_domain(int n, const Rat& rho);

/// Euler characteristic of the boundary complex (all proper faces) of K_n.
int boundary_euler_characteristic(int n);

} // namespace tva::assoc
