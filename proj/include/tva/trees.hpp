#pragma once

#include "tva/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace tva::assoc {

/// Rooted planar tree with ordered leaves; internal vertices have >= 2
/// children (no valence-2 vertices). Faces of the Stasheff polytope K_n are
/// exactly these trees with n leaves; vertices are the binary trees.
struct PlanarTree {
    std::vector<PlanarTree> kids;

    bool is_leaf() const { return kids.empty(); }
    int leaves() const;
    /// Face dimension: sum over internal vertices of (arity - 2).
    int dim() const;
    bool is_binary() const;
    std::string key() const;

    static PlanarTree leaf() { return {}; }
    static PlanarTree corolla(int n);

    bool operator==(const PlanarTree& o) const { return key() == o.key(); }
};

/// Complete face lattice of K_n; faces indexed 0..size-1, top face = corolla.
struct FaceLattice {
    int n = 0;
    std::vector<PlanarTree> faces;
    std::vector<int> dims;
    std::map<std::string, int> index;
    std::vector<std::vector<int>> facets_of; // ids of codimension-1 subfaces

    int top() const { return index.at(PlanarTree::corolla(n).key()); }
    int count_dim(int d) const;
    std::vector<int> f_vector() const; // f[d] for d = 0..n-2
};

FaceLattice associahedron_faces(int n); // 2 <= n <= 10

/// All single-vertex expansions of a face (the codimension-1 subfaces),
/// without signs.
std::vector<PlanarTree> expansions(const PlanarTree& t);

/// Signed boundary. Signs come from fixed orientations of the faces in the
/// Loday realization, so the signed boundary of a boundary vanishes.
std::vector<std::pair<PlanarTree, int>> face_boundary(const PlanarTree& face);

/// Loday coordinates (x_1..x_{n-1}) of a binary tree, then mapped to the
/// realization coordinates (t_2..t_{n-1}), t_k = rho * (x_k+...+x_{n-1}) / T
/// with T = n(n-1)/2 + 1. The image sits strictly inside the order simplex
/// rho > t_2 > ... > t_{n-1} > 0.
std::vector<Rat> loday_x(const PlanarTree& binary);
std::vector<Rat> realization_point(const PlanarTree& binary, const Rat& rho);

/// All binary trees refining the given face (its vertices).
std::vector<PlanarTree> binary_refinements(const PlanarTree& t);

/// Number of K_n cells in the tessellation of the real moduli space of n+1
/// marked points: n!/2.
Int moduli_cell_count(int n);

} // namespace tva::assoc
