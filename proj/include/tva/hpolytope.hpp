#pragma once

#include "tva/linalg.hpp"
#include "tva/polynomial.hpp"
#include "tva/rational.hpp"

#include <string>
#include <vector>

namespace tva::geom {

using linalg::Vec;

/// Convex polytope in exact H-representation: rows a.x <= b.
struct HPolytope {
    int dim = 0;
    std::vector<Vec> A;
    std::vector<Rat> b;

    void add(Vec a, Rat rhs);
    static HPolytope box(const std::vector<std::pair<Rat, Rat>>& bounds);

    bool feasible() const;
    bool bounded() const;
    /// Affine dimension equals dim (computed from vertices; bounded case).
    bool full_dimensional() const;

    /// All vertices, lexicographically sorted, deduplicated.
    std::vector<Vec> vertices() const;

    /// Row indices that support facets (tight vertex set of affine rank dim-1).
    std::vector<int> facet_rows() const;
    std::vector<std::vector<int>> facet_vertex_sets() const; // parallel to facet_rows

    /// Lexicographic triangulation: fan from the lexicographic-min vertex of
    /// every face, recursively. Deterministic. Each simplex is dim+1 vertices.
    std::vector<std::vector<Vec>> triangulate() const;

    /// Exact volume.
    Rat volume() const;

    /// OFF-like text dump with exact rational coordinates (see docs/formats.md).
    std::string off_text() const;
};

/// Exact integral over D of a polynomial. The polytope coordinates are the
/// polynomial variables listed in coord_vars; remaining variables pass
/// through, so the result is a polynomial in those.
Poly integrate_poly(const HPolytope& D, const Poly& f, const std::vector<int>& coord_vars);

/// Convenience: integral of a polynomial whose variables are exactly
/// 0..dim-1; the result must be constant.
Rat integrate(const HPolytope& D, const Poly& f);

/// Monomial integral over the standard simplex {u_i >= 0, sum u_i <= 1}:
/// prod beta_i! / (d + sum beta_i)!.
Rat std_simplex_monomial(const std::vector<unsigned>& beta, int d);

} // namespace tva::geom
