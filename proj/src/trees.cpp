#include "tva/trees.hpp"

#include "tva/linalg.hpp"

#include <algorithm>
#include <functional>

namespace tva::assoc {

int PlanarTree::leaves() const {
    if (is_leaf()) return 1;
    int s = 0;
    for (const auto& k : kids) s += k.leaves();
    return s;
}

int PlanarTree::dim() const {
    if (is_leaf()) return 0;
    int d = static_cast<int>(kids.size()) - 2;
    for (const auto& k : kids) d += k.dim();
    return d;
}

bool PlanarTree::is_binary() const {
    if (is_leaf()) return true;
    if (kids.size() != 2) return false;
    return kids[0].is_binary() && kids[1].is_binary();
}

std::string PlanarTree::key() const {
    if (is_leaf()) return "*";
    std::string s = "(";
    for (const auto& k : kids) s += k.key();
    return s + ")";
}

PlanarTree PlanarTree::corolla(int n) {
    PlanarTree t;
    t.kids.assign(static_cast<size_t>(n), PlanarTree::leaf());
    return t;
}

namespace {

/// All trees with n ordered leaves, every internal vertex of arity >= 2.
std::vector<PlanarTree> all_trees(int n) {
    if (n == 1) return {PlanarTree::leaf()};
    std::vector<PlanarTree> out;
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            if (parts.size() < 2) return;
            std::vector<std::vector<PlanarTree>> choices;
            for (int p : parts) choices.push_back(all_trees(p));
            std::vector<size_t> idx(parts.size(), 0);
            while (true) {
                PlanarTree t;
                for (size_t i = 0; i < parts.size(); ++i) t.kids.push_back(choices[i][idx[i]]);
                out.push_back(std::move(t));
                size_t i = idx.size();
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++idx[i] < choices[i].size()) {
                        done = false;
                        break;
                    }
                    idx[i] = 0;
                }
                if (done) break;
            }
            return;
        }
        for (int p = 1; p <= remaining; ++p) {
            parts.push_back(p);
            rec(remaining - p);
            parts.pop_back();
        }
    };
    rec(n);
    return out;
}

} // namespace

FaceLattice associahedron_faces(int n) {
    if (n < 2 || n > 10) throw TvaError("associahedron_faces: n out of supported range 2..10");
    FaceLattice L;
    L.n = n;
    L.faces = all_trees(n);
    std::sort(L.faces.begin(), L.faces.end(), [](const PlanarTree& a, const PlanarTree& b) {
        int da = a.dim(), db = b.dim();
        if (da != db) return da > db;
        return a.key() < b.key();
    });
    for (size_t i = 0; i < L.faces.size(); ++i) {
        L.dims.push_back(L.faces[i].dim());
        L.index[L.faces[i].key()] = static_cast<int>(i);
    }
    L.facets_of.resize(L.faces.size());
    for (size_t i = 0; i < L.faces.size(); ++i) {
        for (const auto& e : expansions(L.faces[i]))
            L.facets_of[i].push_back(L.index.at(e.key()));
        std::sort(L.facets_of[i].begin(), L.facets_of[i].end());
    }
    return L;
}

int FaceLattice::count_dim(int d) const {
    int c = 0;
    for (int x : dims)
        if (x == d) ++c;
    return c;
}

std::vector<int> FaceLattice::f_vector() const {
    std::vector<int> f(static_cast<size_t>(std::max(n - 1, 1)), 0);
    for (int x : dims) f[static_cast<size_t>(x)]++;
    f.resize(static_cast<size_t>(std::max(n - 1, 1)));
    return f;
}

std::vector<PlanarTree> expansions(const PlanarTree& t) {
    std::vector<PlanarTree> out;
    if (t.is_leaf()) return out;
    int k = static_cast<int>(t.kids.size());
    for (int s = 2; s <= k - 1; ++s) {
        for (int l = 0; l + s <= k; ++l) {
            PlanarTree inner;
            for (int j = l; j < l + s; ++j) inner.kids.push_back(t.kids[static_cast<size_t>(j)]);
            PlanarTree outer;
            for (int j = 0; j < l; ++j) outer.kids.push_back(t.kids[static_cast<size_t>(j)]);
            outer.kids.push_back(std::move(inner));
            for (int j = l + s; j < k; ++j) outer.kids.push_back(t.kids[static_cast<size_t>(j)]);
            out.push_back(std::move(outer));
        }
    }
    for (size_t c = 0; c < t.kids.size(); ++c) {
        for (const auto& e : expansions(t.kids[c])) {
            PlanarTree u = t;
            u.kids[c] = e;
            out.push_back(std::move(u));
        }
    }
    return out;
}

std::vector<Rat> loday_x(const PlanarTree& binary) {
    if (!binary.is_binary()) throw TvaError("loday_x: tree is not binary");
    int n = binary.leaves();
    std::vector<Rat> x(static_cast<size_t>(n - 1), Rat(0));
    // the internal vertex splitting leaf range [lo..hi] after leaf `mid`
    // contributes x_mid = (#left leaves)(#right leaves)
    std::function<void(const PlanarTree&, int)> rec = [&](const PlanarTree& t, int lo) {
        if (t.is_leaf()) return;
        int a = t.kids[0].leaves();
        int b = t.kids[1].leaves();
        int mid = lo + a - 1;
        x[static_cast<size_t>(mid - 1)] = Rat(a) * Rat(b);
        rec(t.kids[0], lo);
        rec(t.kids[1], lo + a);
    };
    rec(binary, 1);
    return x;
}

std::vector<Rat> realization_point(const PlanarTree& binary, const Rat& rho) {
    int n = binary.leaves();
    auto x = loday_x(binary);
    Rat T = Rat(n * (n - 1)) / 2 + 1;
    std::vector<Rat> t;
    for (int k = 2; k <= n - 1; ++k) {
        Rat s = 0;
        for (int i = k; i <= n - 1; ++i) s += x[static_cast<size_t>(i - 1)];
        t.push_back(rho * s / T);
    }
    return t;
}

std::vector<PlanarTree> binary_refinements(const PlanarTree& t) {
    if (t.is_leaf()) return {t};
    std::vector<std::vector<PlanarTree>> kid_refs;
    for (const auto& k : t.kids) kid_refs.push_back(binary_refinements(k));
    int k = static_cast<int>(t.kids.size());
    std::function<std::vector<PlanarTree>(int)> shapes = [&](int m) -> std::vector<PlanarTree> {
        if (m == 1) return {PlanarTree::leaf()};
        std::vector<PlanarTree> res;
        for (int a = 1; a <= m - 1; ++a)
            for (const auto& lt : shapes(a))
                for (const auto& rt : shapes(m - a)) {
                    PlanarTree b;
                    b.kids = {lt, rt};
                    res.push_back(std::move(b));
                }
        return res;
    };
    std::vector<PlanarTree> out;
    std::vector<size_t> idx;
    for (const auto& shape : shapes(k)) {
        idx.assign(static_cast<size_t>(k), 0);
        while (true) {
            int slot = 0;
            std::function<PlanarTree(const PlanarTree&)> sub =
                [&](const PlanarTree& s) -> PlanarTree {
                if (s.is_leaf()) {
                    const auto& choice = kid_refs[static_cast<size_t>(slot)][idx[static_cast<size_t>(slot)]];
                    ++slot;
                    return choice;
                }
                PlanarTree r;
                for (const auto& c : s.kids) r.kids.push_back(sub(c));
                return r;
            };
            out.push_back(sub(shape));
            size_t i = idx.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++idx[i] < kid_refs[i].size()) {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

namespace {

using linalg::Mat;
using linalg::Vec;

Vec centroid(const std::vector<Vec>& pts) {
    Vec c(pts[0].size(), Rat(0));
    for (const auto& p : pts)
        for (size_t i = 0; i < p.size(); ++i) c[i] += p[i];
    for (auto& v : c) v /= Rat(static_cast<int>(pts.size()));
    return c;
}

/// Deterministic orientation frame: lexicographic-min vertex as origin,
/// greedy independent difference vectors in lexicographic vertex order.
Mat face_frame(const std::vector<Vec>& pts, int d) {
    std::vector<Vec> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    size_t amb = sorted[0].size();
    std::vector<Vec> cols;
    for (size_t i = 1; i < sorted.size() && static_cast<int>(cols.size()) < d; ++i) {
        Vec diff(amb);
        for (size_t j = 0; j < amb; ++j) diff[j] = sorted[i][j] - sorted[0][j];
        cols.push_back(diff);
        Mat m(amb, Vec(cols.size()));
        for (size_t r = 0; r < amb; ++r)
            for (size_t c = 0; c < cols.size(); ++c) m[r][c] = cols[c][r];
        if (linalg::rank(m) < static_cast<int>(cols.size())) cols.pop_back();
    }
    if (static_cast<int>(cols.size()) != d) throw TvaError("face_frame: degenerate vertex set");
    Mat out(amb, Vec(static_cast<size_t>(d)));
    for (size_t r = 0; r < amb; ++r)
        for (int c = 0; c < d; ++c) out[r][static_cast<size_t>(c)] = cols[static_cast<size_t>(c)][r];
    return out;
}

std::vector<Vec> face_vertices(const PlanarTree& face) {
    std::vector<Vec> pts;
    for (const auto& b : binary_refinements(face)) pts.push_back(realization_point(b, Rat(1)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

std::vector<std::pair<PlanarTree, int>> face_boundary(const PlanarTree& face) {
    int d = face.dim();
    if (d < 1) throw TvaError("face_boundary: vertex input (dimension 0)");
    auto pts_f = face_vertices(face);
    Mat bf = face_frame(pts_f, d);
    Vec cf = centroid(pts_f);

    std::vector<std::pair<PlanarTree, int>> out;
    for (const auto& g : expansions(face)) {
        auto pts_g = face_vertices(g);
        Vec cg = centroid(pts_g);
        Mat cols(cf.size(), Vec(static_cast<size_t>(d)));
        for (size_t r = 0; r < cf.size(); ++r) cols[r][0] = cg[r] - cf[r];
        if (d > 1) {
            Mat bg = face_frame(pts_g, d - 1);
            for (size_t r = 0; r < cf.size(); ++r)
                for (int c = 0; c < d - 1; ++c)
                    cols[r][static_cast<size_t>(c + 1)] = bg[r][static_cast<size_t>(c)];
        }
        auto m = linalg::express_in_basis(bf, cols);
        if (!m) throw TvaError("face_boundary: facet not in face span");
        Rat dt = linalg::det(*m);
        if (dt == 0) throw TvaError("face_boundary: degenerate orientation determinant");
        out.emplace_back(g, dt > 0 ? 1 : -1);
    }
    return out;
}

Int moduli_cell_count(int n) {
    if (n < 3) throw TvaError("moduli_cell_count: n must be >= 3");
    return factorial(static_cast<unsigned>(n)) / 2;
}

} // namespace tva::assoc
