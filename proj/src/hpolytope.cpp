#include "tva/hpolytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tva::geom {

using linalg::Mat;

void HPolytope::add(Vec a, Rat rhs) {
    if (static_cast<int>(a.size()) != dim) throw TvaError("HPolytope::add: wrong row length");
    A.push_back(std::move(a));
    b.push_back(std::move(rhs));
}

HPolytope HPolytope::box(const std::vector<std::pair<Rat, Rat>>& bounds) {
    HPolytope p;
    p.dim = static_cast<int>(bounds.size());
    for (size_t i = 0; i < bounds.size(); ++i) {
        Vec lo(bounds.size(), Rat(0)), hi(bounds.size(), Rat(0));
        hi[i] = 1;
        p.add(hi, bounds[i].second);
        lo[i] = -1;
        p.add(std::move(lo), -bounds[i].first);
    }
    return p;
}

namespace {

struct Row {
    Vec a;
    Rat b;
};

/// Fourier-Motzkin elimination of variable k.
std::vector<Row> fm_eliminate(const std::vector<Row>& rows, size_t k) {
    std::vector<Row> zero, pos, neg;
    for (const auto& r : rows) {
        if (r.a[k] == 0) zero.push_back(r);
        else if (r.a[k] > 0) pos.push_back(r);
        else neg.push_back(r);
    }
    std::vector<Row> out = zero;
    for (const auto& p : pos)
        for (const auto& n : neg) {
            Row c;
            c.a.resize(p.a.size());
            // p.a[k] > 0, n.a[k] < 0; combine to cancel
            Rat wp = -n.a[k], wn = p.a[k];
            for (size_t i = 0; i < p.a.size(); ++i) c.a[i] = wp * p.a[i] + wn * n.a[i];
            c.b = wp * p.b + wn * n.b;
            out.push_back(std::move(c));
        }
    for (auto& r : out) r.a[k] = 0;
    return out;
}

} // namespace

bool HPolytope::feasible() const {
    std::vector<Row> rows;
    for (size_t i = 0; i < A.size(); ++i) rows.push_back({A[i], b[i]});
    for (int k = 0; k < dim; ++k) rows = fm_eliminate(rows, static_cast<size_t>(k));
    for (const auto& r : rows)
        if (r.b < 0) return false;
    return true;
}

bool HPolytope::bounded() const {
    // recession cone {d : A d <= 0} must be {0}; project onto each axis
    for (int k = 0; k < dim; ++k) {
        std::vector<Row> rows;
        for (const auto& a : A) rows.push_back({a, Rat(0)});
        for (int j = 0; j < dim; ++j)
            if (j != k) rows = fm_eliminate(rows, static_cast<size_t>(j));
        bool up = false, down = false; // d_k forced <= 0 resp. >= 0
        for (const auto& r : rows) {
            if (r.a[static_cast<size_t>(k)] > 0) up = true;
            if (r.a[static_cast<size_t>(k)] < 0) down = true;
        }
        if (!up || !down) return false;
    }
    return true;
}

std::vector<Vec> HPolytope::vertices() const {
    std::vector<Vec> vs;
    size_t m = A.size();
    if (dim == 0) {
        // point polytope; feasible iff all 0 <= b
        for (const auto& rhs : b)
            if (rhs < 0) return {};
        vs.push_back({});
        return vs;
    }
    std::vector<int> comb(static_cast<size_t>(dim));
    std::function<void(size_t, int)> rec = [&](size_t start, int chosen) {
        if (chosen == dim) {
            Mat M(static_cast<size_t>(dim), Vec(static_cast<size_t>(dim)));
            Vec rhs(static_cast<size_t>(dim));
            for (int i = 0; i < dim; ++i) {
                M[static_cast<size_t>(i)] = A[static_cast<size_t>(comb[static_cast<size_t>(i)])];
                rhs[static_cast<size_t>(i)] = b[static_cast<size_t>(comb[static_cast<size_t>(i)])];
            }
            auto x = linalg::solve_square(M, rhs);
            if (!x) return;
            for (size_t r = 0; r < m; ++r) {
                Rat lhs = 0;
                for (int j = 0; j < dim; ++j) lhs += A[r][static_cast<size_t>(j)] * (*x)[static_cast<size_t>(j)];
                if (lhs > b[r]) return;
            }
            vs.push_back(*x);
            return;
        }
        for (size_t i = start; i + (static_cast<size_t>(dim) - static_cast<size_t>(chosen)) <= m; ++i) {
            comb[static_cast<size_t>(chosen)] = static_cast<int>(i);
            rec(i + 1, chosen + 1);
        }
    };
    rec(0, 0);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool HPolytope::full_dimensional() const {
    auto vs = vertices();
    if (vs.empty()) return false;
    Mat m;
    for (size_t i = 1; i < vs.size(); ++i) {
        Vec d(static_cast<size_t>(dim));
        for (int j = 0; j < dim; ++j) d[static_cast<size_t>(j)] = vs[i][static_cast<size_t>(j)] - vs[0][static_cast<size_t>(j)];
        m.push_back(std::move(d));
    }
    return linalg::rank(m) == dim;
}

namespace {

int affine_rank(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    Mat m;
    for (size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[0].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        m.push_back(std::move(d));
    }
    if (m.empty()) return 0;
    return linalg::rank(m);
}

} // namespace

std::vector<int> HPolytope::facet_rows() const {
    std::vector<int> out;
    auto vs = vertices();
    for (size_t r = 0; r < A.size(); ++r) {
        std::vector<Vec> tight;
        for (const auto& v : vs) {
            Rat lhs = 0;
            for (int j = 0; j < dim; ++j) lhs += A[r][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
            if (lhs == b[r]) tight.push_back(v);
        }
        if (affine_rank(tight) == dim - 1) out.push_back(static_cast<int>(r));
    }
    return out;
}

std::vector<std::vector<int>> HPolytope::facet_vertex_sets() const {
    auto vs = vertices();
    std::vector<std::vector<int>> sets;
    for (int r : facet_rows()) {
        std::vector<int> s;
        for (size_t i = 0; i < vs.size(); ++i) {
            Rat lhs = 0;
            for (int j = 0; j < dim; ++j)
                lhs += A[static_cast<size_t>(r)][static_cast<size_t>(j)] * vs[i][static_cast<size_t>(j)];
            if (lhs == b[static_cast<size_t>(r)]) s.push_back(static_cast<int>(i));
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

namespace {

/// Recursive lexicographic triangulation of the face spanned by `pts`
/// (all vertices of the face, dimension d). Rows are the inequalities of the
/// surrounding polytope used to discover subfaces.
void triangulate_face(const std::vector<Vec>& pts, int d, const std::vector<Row>& rows,
                      std::vector<Vec> cone_apexes, std::vector<std::vector<Vec>>& out) {
    if (static_cast<int>(pts.size()) == d + 1) {
        std::vector<Vec> simplex = cone_apexes;
        simplex.insert(simplex.end(), pts.begin(), pts.end());
        out.push_back(std::move(simplex));
        return;
    }
    const Vec& apex = pts[0]; // pts sorted lexicographically
    std::set<std::vector<Vec>> seen;
    for (const auto& row : rows) {
        Rat av = 0;
        for (size_t j = 0; j < apex.size(); ++j) av += row.a[j] * apex[j];
        if (av == row.b) continue; // facet contains apex, skip
        std::vector<Vec> tight;
        for (const auto& v : pts) {
            Rat lhs = 0;
            for (size_t j = 0; j < v.size(); ++j) lhs += row.a[j] * v[j];
            if (lhs == row.b) tight.push_back(v);
        }
        if (affine_rank(tight) != d - 1) continue;
        if (!seen.insert(tight).second) continue; // same subface cut twice
        std::vector<Vec> next_apexes = cone_apexes;
        next_apexes.push_back(apex);
        triangulate_face(tight, d - 1, rows, std::move(next_apexes), out);
    }
}

} // namespace

std::vector<std::vector<Vec>> HPolytope::triangulate() const {
    auto vs = vertices();
    if (vs.empty()) return {};
    if (!bounded()) throw TvaError("HPolytope::triangulate: unbounded domain");
    int d = affine_rank(vs);
    if (d < dim) throw TvaError("HPolytope::triangulate: polytope is not full-dimensional");
    std::vector<Row> rows;
    for (size_t i = 0; i < A.size(); ++i) rows.push_back({A[i], b[i]});
    std::vector<std::vector<Vec>> out;
    if (dim == 0) {
        out.push_back({Vec{}});
        return out;
    }
    triangulate_face(vs, dim, rows, {}, out);
    return out;
}

Rat std_simplex_monomial(const std::vector<unsigned>& beta, int d) {
    unsigned s = 0;
    Rat num(1);
    for (unsigned e : beta) {
        num *= Rat(factorial(e));
        s += e;
    }
    return num / Rat(factorial(static_cast<unsigned>(d) + s));
}

Poly integrate_poly(const HPolytope& D, const Poly& f, const std::vector<int>& coord_vars) {
    if (static_cast<int>(coord_vars.size()) != D.dim)
        throw TvaError("integrate_poly: coord_vars does not match dimension");
    if (D.dim == 0) {
        if (!D.feasible()) return Poly();
        return f;
    }
    if (!D.bounded()) throw TvaError("integrate_poly: unbounded domain");
    // fresh simplex-parameter variables beyond anything used in f
    int base = 0;
    for (const auto& [e, c] : f.terms()) base = std::max<int>(base, static_cast<int>(e.size()));
    for (int v : coord_vars) base = std::max(base, v + 1);

    Poly total;
    for (const auto& simplex : D.triangulate()) {
        const Vec& v0 = simplex[0];
        // x_i = v0_i + sum_j u_j (v_{j+1,i} - v0_i)
        Mat J(static_cast<size_t>(D.dim), Vec(static_cast<size_t>(D.dim)));
        for (int j = 0; j < D.dim; ++j)
            for (int i = 0; i < D.dim; ++i)
                J[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    simplex[static_cast<size_t>(j + 1)][static_cast<size_t>(i)] - v0[static_cast<size_t>(i)];
        Rat jac = linalg::det(J);
        if (jac < 0) jac = -jac;
        if (jac == 0) continue;
        Poly g = f;
        for (int i = 0; i < D.dim; ++i) {
            Poly repl(v0[static_cast<size_t>(i)]);
            for (int j = 0; j < D.dim; ++j)
                repl += J[static_cast<size_t>(i)][static_cast<size_t>(j)] * Poly::var(base + j);
            g = g.subst(coord_vars[static_cast<size_t>(i)], repl);
        }
        // integrate the u variables over the standard simplex
        Poly piece;
        for (const auto& [e, c] : g.terms()) {
            std::vector<unsigned> beta(static_cast<size_t>(D.dim), 0);
            Poly::Expo rest = e;
            for (int j = 0; j < D.dim; ++j) {
                size_t idx = static_cast<size_t>(base + j);
                if (idx < rest.size()) {
                    beta[static_cast<size_t>(j)] = rest[idx];
                    rest[idx] = 0;
                }
            }
            piece.add_term(rest, c * std_simplex_monomial(beta, D.dim));
        }
        total += jac * piece;
    }
    return total;
}

Rat integrate(const HPolytope& D, const Poly& f) {
    std::vector<int> coords;
    for (int i = 0; i < D.dim; ++i) coords.push_back(i);
    Poly r = integrate_poly(D, f, coords);
    if (r.is_zero()) return Rat(0);
    if (r.terms().size() != 1 || !r.terms().begin()->first.empty())
        throw TvaError("integrate: integrand has variables outside the domain");
    return r.terms().begin()->second;
}

Rat HPolytope::volume() const {
    return integrate(*this, Poly(Rat(1)));
}

std::string HPolytope::off_text() const {
    auto vs = vertices();
    auto fsets = facet_vertex_sets();
    std::ostringstream os;
    os << "ROFF\n";
    os << "dim " << dim << "\n";
    os << vs.size() << " " << fsets.size() << "\n";
    for (const auto& v : vs) {
        for (size_t j = 0; j < v.size(); ++j) {
            if (j) os << " ";
            os << rat_str(v[j]);
        }
        os << "\n";
    }
    for (const auto& s : fsets) {
        os << s.size();
        for (int i : s) os << " " << i;
        os << "\n";
    }
    return os.str();
}

} // namespace tva::geom
