#include "tva/symcalc.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tva::weak {

namespace {

using geom::HPolytope;
using linalg::Vec;

struct SplitRequest {
    // the sign of `diff` changes over the domain; split along diff = 0
    Affine param_part;        // parameter-affine part of the difference
    std::vector<Rat> var_part; // variable coefficients
};

/// Sign of an affine expression over the instantiated domain: +1 / -1 when
/// it is (weakly) positive/negative with nonzero interior, 0 when it changes
/// sign. Throws on identically-zero-with-variables and on parameter ties.
int sign_over_domain(const Affine& diff, const Witness& wit, const std::vector<Vec>& verts,
                     bool syntactically_zero) {
    Rat base = diff.eval_const(wit);
    bool has_vars = diff.has_vars();
    if (!has_vars) {
        if (base > 0) return 1;
        if (base < 0) return -1;
        if (syntactically_zero) throw TvaError("normalize: coincident field positions");
        throw TvaError("normalize: position tie at the witness that is not a syntactic identity");
    }
    Rat mn, mx;
    bool first = true;
    for (const auto& v : verts) {
        Rat val = base;
        for (const auto& [idx, k] : diff.vars) val += k * v[static_cast<size_t>(idx)];
        if (first) {
            mn = mx = val;
            first = false;
        } else {
            mn = std::min(mn, val);
            mx = std::max(mx, val);
        }
    }
    if (mn == 0 && mx == 0) throw TvaError("normalize: position difference vanishes on the domain");
    if (mn >= 0) return 1;
    if (mx <= 0) return -1;
    return 0;
}

} // namespace

/// Everything normalize() needs about one term while it is being processed.
struct Calc::CanonTerm {
    Term t;
};

namespace {

std::vector<Vec> witness_vertices(const SymDomain& dom, const Witness& wit) {
    return dom.instantiate(wit).vertices();
}

bool domain_effective(const SymDomain& dom, const Witness& wit, std::vector<Vec>& verts_out) {
    if (dom.nvars == 0) {
        for (const auto& r : dom.rows)
            if (r.rhs.eval(wit) < 0) return false;
        verts_out.clear();
        return true;
    }
    HPolytope P = dom.instantiate(wit);
    auto vs = P.vertices();
    if (vs.empty()) return false;
    if (!P.bounded()) throw TvaError("normalize: unbounded integration domain");
    // full-dimensional check
    linalg::Mat m;
    for (size_t i = 1; i < vs.size(); ++i) {
        Vec d(static_cast<size_t>(dom.nvars));
        for (int j = 0; j < dom.nvars; ++j)
            d[static_cast<size_t>(j)] = vs[i][static_cast<size_t>(j)] - vs[0][static_cast<size_t>(j)];
        m.push_back(std::move(d));
    }
    if (dom.nvars > 0 && (m.empty() || linalg::rank(m) < dom.nvars)) return false;
    verts_out = std::move(vs);
    return true;
}

/// Sorts the word by strictly decreasing position, accumulating Koszul signs.
/// Returns nullopt and fills `split` if an order flip needs a domain split.
std::optional<Word> sort_word(const Word& w, const Fields& fields, const Witness& wit,
                              const std::vector<Vec>& verts, SplitRequest& split, int nvars) {
    Word r = w;
    for (size_t i = 1; i < r.fs.size(); ++i) {
        size_t j = i;
        while (j > 0) {
            Affine diff = r.fs[j - 1].pos - r.fs[j].pos;
            bool syn_zero = diff.is_zero();
            int s = sign_over_domain(diff, wit, verts, syn_zero);
            if (s > 0) break;
            if (s == 0) {
                split.param_part = Affine();
                split.var_part.assign(static_cast<size_t>(nvars), Rat(0));
                // diff = var_part . u + param_part
                Affine pp = diff;
                for (const auto& [idx, k] : diff.vars) split.var_part[static_cast<size_t>(idx)] = k;
                pp.vars.clear();
                split.param_part = pp;
                return std::nullopt;
            }
            // swap j-1, j
            int pa = r.fs[j - 1].parity(fields);
            int pb = r.fs[j].parity(fields);
            if (pa && pb) r.coeff = -r.coeff;
            std::swap(r.fs[j - 1], r.fs[j]);
            --j;
        }
    }
    return r;
}

/// Canonical renaming of integration variables by first appearance in the
/// sorted word, applied to positions and domain rows.
bool rename_vars(Term& t) {
    std::vector<int> order;
    std::vector<int> newidx(static_cast<size_t>(t.dom.nvars), -1);
    for (const auto& f : t.w.fs)
        for (const auto& [v, k] : f.pos.vars) {
            if (k == 0) continue;
            if (newidx[static_cast<size_t>(v)] < 0) {
                newidx[static_cast<size_t>(v)] = static_cast<int>(order.size());
                order.push_back(v);
            }
        }
    if (static_cast<int>(order.size()) != t.dom.nvars) return false; // unused variable
    for (auto& f : t.w.fs) {
        std::map<int, Rat> nv;
        for (const auto& [v, k] : f.pos.vars) nv[newidx[static_cast<size_t>(v)]] = k;
        f.pos.vars = std::move(nv);
    }
    for (auto& row : t.dom.rows) {
        std::vector<Rat> na(static_cast<size_t>(t.dom.nvars), Rat(0));
        for (int v = 0; v < t.dom.nvars; ++v) na[static_cast<size_t>(newidx[static_cast<size_t>(v)])] = row.a[static_cast<size_t>(v)];
        row.a = std::move(na);
    }
    return true;
}

/// Symbolic coordinates of the witness-lexicographic-min vertex attaining the
/// minimum of each coordinate; used to translate the domain to the origin.
std::vector<Affine> symbolic_shift(const Term& t, const Witness& wit, const std::vector<Vec>& verts) {
    std::vector<Affine> delta(static_cast<size_t>(t.dom.nvars));
    for (int r = 0; r < t.dom.nvars; ++r) {
        // witness argmin vertex (ties: lexicographic)
        size_t best = 0;
        for (size_t i = 1; i < verts.size(); ++i) {
            if (verts[i][static_cast<size_t>(r)] < verts[best][static_cast<size_t>(r)] ||
                (verts[i][static_cast<size_t>(r)] == verts[best][static_cast<size_t>(r)] &&
                 verts[i] < verts[best]))
                best = i;
        }
        const Vec& v = verts[best];
        // tight rows at the witness
        std::vector<int> tight;
        for (size_t m = 0; m < t.dom.rows.size(); ++m) {
            Rat lhs = 0;
            for (int j = 0; j < t.dom.nvars; ++j)
                lhs += t.dom.rows[m].a[static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
            if (lhs == t.dom.rows[m].rhs.eval(wit)) tight.push_back(static_cast<int>(m));
        }
        // first nonsingular nvars-subset in sorted order, then solve with
        // parameter-affine right-hand sides
        int d = t.dom.nvars;
        std::vector<int> chosen;
        std::function<bool(size_t)> pick = [&](size_t from) -> bool {
            if (static_cast<int>(chosen.size()) == d) {
                linalg::Mat M(static_cast<size_t>(d), Vec(static_cast<size_t>(d)));
                for (int i = 0; i < d; ++i) M[static_cast<size_t>(i)] = t.dom.rows[static_cast<size_t>(chosen[static_cast<size_t>(i)])].a;
                return linalg::det(M) != 0;
            }
            for (size_t i = from; i < tight.size(); ++i) {
                chosen.push_back(tight[i]);
                if (pick(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (!pick(0)) throw TvaError("normalize: vertex without a spanning tight row set");
        // Gaussian elimination with Affine rhs
        linalg::Mat M(static_cast<size_t>(d), Vec(static_cast<size_t>(d)));
        std::vector<Affine> rhs(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            M[static_cast<size_t>(i)] = t.dom.rows[static_cast<size_t>(chosen[static_cast<size_t>(i)])].a;
            rhs[static_cast<size_t>(i)] = t.dom.rows[static_cast<size_t>(chosen[static_cast<size_t>(i)])].rhs;
        }
        for (int c = 0; c < d; ++c) {
            int piv = c;
            while (piv < d && M[static_cast<size_t>(piv)][static_cast<size_t>(c)] == 0) ++piv;
            std::swap(M[static_cast<size_t>(c)], M[static_cast<size_t>(piv)]);
            std::swap(rhs[static_cast<size_t>(c)], rhs[static_cast<size_t>(piv)]);
            for (int i = 0; i < d; ++i) {
                if (i == c || M[static_cast<size_t>(i)][static_cast<size_t>(c)] == 0) continue;
                Rat f = M[static_cast<size_t>(i)][static_cast<size_t>(c)] / M[static_cast<size_t>(c)][static_cast<size_t>(c)];
                for (int j = 0; j < d; ++j)
                    M[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(c)][static_cast<size_t>(j)];
                rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(c)];
            }
        }
        delta[static_cast<size_t>(r)] = (Rat(1) / M[static_cast<size_t>(r)][static_cast<size_t>(r)]) * rhs[static_cast<size_t>(r)];
    }
    return delta;
}

void apply_shift(Term& t, const std::vector<Affine>& delta) {
    for (auto& f : t.w.fs) {
        Affine np = f.pos;
        for (int r = 0; r < t.dom.nvars; ++r) {
            auto it = np.vars.find(r);
            if (it == np.vars.end() || it->second == 0) continue;
            np += it->second * delta[static_cast<size_t>(r)];
        }
        f.pos = np;
    }
    for (auto& row : t.dom.rows) {
        for (int r = 0; r < t.dom.nvars; ++r)
            if (row.a[static_cast<size_t>(r)] != 0) row.rhs -= row.a[static_cast<size_t>(r)] * delta[static_cast<size_t>(r)];
    }
}

/// Scale the single variable of a 1D term so the first variable-dependent
/// position has coefficient +1.
void rescale_1d(Term& t) {
    Rat c;
    bool found = false;
    for (const auto& f : t.w.fs) {
        auto it = f.pos.vars.find(0);
        if (it != f.pos.vars.end() && it->second != 0) {
            c = it->second;
            found = true;
            break;
        }
    }
    if (!found || c == 1) return;
    // u = u' / c
    for (auto& f : t.w.fs) {
        auto it = f.pos.vars.find(0);
        if (it != f.pos.vars.end()) it->second /= c;
    }
    for (auto& row : t.dom.rows) {
        row.a[0] /= c;
        if (c < 0) {
            row.a[0] = -row.a[0];
            row.rhs = -row.rhs;
        }
    }
    Rat absc = c > 0 ? c : Rat(-c);
    t.w.coeff /= absc;
}

/// Primitive-integer row normalization, dedupe, and redundant row removal.
bool canonical_rows(Term& t, const Witness& wit) {
    for (auto& row : t.dom.rows) {
        // scale to primitive integer coefficients
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& x : row.a) {
            if (x == 0) continue;
            den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(x));
        }
        if (den_lcm == 0) den_lcm = 1;
        std::vector<Int> scaled;
        for (const auto& x : row.a) scaled.push_back(rat_num(x) * (den_lcm / rat_den(x)));
        for (const auto& z : scaled) num_gcd = boost::multiprecision::gcd(num_gcd, z < 0 ? Int(-z) : z);
        if (num_gcd == 0) continue; // constant row
        Rat factor = Rat(den_lcm) / Rat(num_gcd);
        for (auto& x : row.a) x *= factor;
        row.rhs = factor * row.rhs;
    }
    // constant rows: check satisfiable, drop
    std::vector<SymRow> rows;
    for (auto& row : t.dom.rows) {
        bool allzero = true;
        for (const auto& x : row.a)
            if (x != 0) allzero = false;
        if (allzero) {
            if (row.rhs.eval(wit) < 0) return false; // infeasible
            continue;
        }
        rows.push_back(row);
    }
    // parallel rows: keep the witness-tightest per direction
    std::map<std::vector<Rat>, SymRow> best;
    for (auto& row : rows) {
        auto it = best.find(row.a);
        if (it == best.end()) {
            best.emplace(row.a, row);
        } else {
            Rat cur = it->second.rhs.eval(wit);
            Rat neu = row.rhs.eval(wit);
            if (neu < cur) it->second = row;
            else if (neu == cur && !(row.rhs == it->second.rhs))
                throw TvaError("normalize: parallel rows tie at the witness");
        }
    }
    rows.clear();
    for (auto& [a, row] : best) rows.push_back(row);
    t.dom.rows = rows;
    if (t.dom.nvars == 0) return true;
    // facet filter
    HPolytope P = t.dom.instantiate(wit);
    auto facets = P.facet_rows();
    std::vector<SymRow> keep;
    for (int idx : facets) keep.push_back(t.dom.rows[static_cast<size_t>(idx)]);
    std::sort(keep.begin(), keep.end(), [](const SymRow& a, const SymRow& b) { return a.cmp(b) < 0; });
    t.dom.rows = std::move(keep);
    return true;
}

int term_cmp(const Term& a, const Term& b) {
    int c = a.dom.cmp(b.dom);
    if (c) return c;
    if (a.w.fs.size() != b.w.fs.size()) return a.w.fs.size() < b.w.fs.size() ? -1 : 1;
    for (size_t i = 0; i < a.w.fs.size(); ++i) {
        c = a.w.fs[i].cmp(b.w.fs[i]);
        if (c) return c;
    }
    return 0;
}

} // namespace

std::vector<Term> Calc::canonical_pieces(const Term& input, bool refine_shift) const {
    std::vector<Term> out;
    std::vector<Term> stack{input};
    const Witness& wit = regime.wit;
    while (!stack.empty()) {
        Term t = stack.back();
        stack.pop_back();
        if (t.w.coeff == 0) continue;
        std::vector<Vec> verts;
        if (!domain_effective(t.dom, wit, verts)) continue;
        SplitRequest split;
        auto sorted = sort_word(t.w, fields, wit, verts, split, t.dom.nvars);
        if (!sorted) {
            // split the domain along the sign change and retry both halves
            Term lohalf = t, hihalf = t;
            SymRow pos_row, neg_row;
            pos_row.a.resize(static_cast<size_t>(t.dom.nvars));
            neg_row.a.resize(static_cast<size_t>(t.dom.nvars));
            for (int i = 0; i < t.dom.nvars; ++i) {
                pos_row.a[static_cast<size_t>(i)] = -split.var_part[static_cast<size_t>(i)];
                neg_row.a[static_cast<size_t>(i)] = split.var_part[static_cast<size_t>(i)];
            }
            pos_row.rhs = split.param_part;   // diff >= 0
            neg_row.rhs = -split.param_part;  // diff <= 0
            hihalf.dom.rows.push_back(pos_row);
            lohalf.dom.rows.push_back(neg_row);
            stack.push_back(std::move(hihalf));
            stack.push_back(std::move(lohalf));
            continue;
        }
        t.w = *sorted;
        if (!rename_vars(t)) throw TvaError("normalize: integration variable unused by the word");
        // vertices must be recomputed in the renamed coordinates
        if (t.dom.nvars > 0) {
            if (refine_shift && t.dom.nvars == 1) rescale_1d(t);
            verts = witness_vertices(t.dom, wit);
            auto delta = symbolic_shift(t, wit, verts);
            apply_shift(t, delta);
        }
        if (!canonical_rows(t, wit)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct RelKey {
    // relative signature of a 1D term: factors with positions written
    // relative to the anchor's absolute offset
    std::string repr;
};

std::string relative_key(const Term& t, const Fields& fields, Affine& anchor_out) {
    // anchor: first factor whose position depends on the variable
    Affine anchor;
    bool found = false;
    for (const auto& f : t.w.fs) {
        auto it = f.pos.vars.find(0);
        if (it != f.pos.vars.end() && it->second != 0) {
            anchor = f.pos;
            anchor.vars.clear();
            found = true;
            break;
        }
    }
    if (!found) throw TvaError("normalize: 1D term without variable-dependent position");
    anchor_out = anchor;
    std::string key;
    for (const auto& f : t.w.fs) {
        Affine rel = f.pos - anchor;
        key += std::to_string(f.sym) + (f.bdec ? "b" : "") + (f.qdec ? "q" : "") + "d" +
               std::to_string(f.der) + "@" + rel.str() + ";";
    }
    (void)fields;
    return key;
}

} // namespace

Combination Calc::normalize(const Val& v) const {
    const Witness& wit = regime.wit;
    std::vector<Term> canon;
    for (const auto& t : v.terms) {
        auto pieces = canonical_pieces(t, true);
        canon.insert(canon.end(), pieces.begin(), pieces.end());
    }
    // merge identical terms
    auto merge = [&](std::vector<Term>& ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return term_cmp(a, b) < 0; });
        std::vector<Term> m;
        for (auto& t : ts) {
            if (!m.empty() && term_cmp(m.back(), t) == 0) m.back().w.coeff += t.w.coeff;
            else m.push_back(t);
        }
        ts.clear();
        for (auto& t : m)
            if (t.w.coeff != 0) ts.push_back(t);
    };
    merge(canon);

    // refinement of 1D terms sharing the same relative integrand
    std::map<std::string, std::vector<size_t>> classes;
    for (size_t i = 0; i < canon.size(); ++i) {
        if (canon[i].dom.nvars != 1) continue;
        Affine anchor;
        classes[relative_key(canon[i], fields, anchor)].push_back(i);
    }
    std::vector<char> consumed(canon.size(), 0);
    std::vector<Term> refined;
    for (auto& [key, idxs] : classes) {
        if (idxs.size() < 2) continue;
        // collect absolute endpoints
        struct Piece {
            Affine lo, hi;
            Rat coeff;
            const Term* t;
            Affine anchor;
        };
        std::vector<Piece> pieces;
        std::vector<Affine> endpoints;
        for (size_t i : idxs) {
            const Term& t = canon[i];
            Affine anchor;
            relative_key(t, fields, anchor);
            // canonical domain is [0, M]
            Affine M;
            bool found = false;
            for (const auto& row : t.dom.rows) {
                if (row.a[0] > 0) {
                    M = (Rat(1) / row.a[0]) * row.rhs;
                    found = true;
                }
            }
            if (!found) throw TvaError("normalize: malformed 1D canonical domain");
            Piece p{anchor, anchor + M, t.w.coeff, &t, anchor};
            pieces.push_back(p);
            endpoints.push_back(pieces.back().lo);
            endpoints.push_back(pieces.back().hi);
            consumed[i] = 1;
        }
        std::sort(endpoints.begin(), endpoints.end(),
                  [&](const Affine& a, const Affine& b) { return a.eval(wit) < b.eval(wit); });
        // syntactic dedupe; witness ties across distinct expressions are ambiguous
        std::vector<Affine> uniq;
        for (const auto& e : endpoints) {
            if (!uniq.empty() && uniq.back() == e) continue;
            if (!uniq.empty() && uniq.back().eval(wit) == e.eval(wit))
                throw TvaError("normalize: refinement endpoints tie at the witness");
            uniq.push_back(e);
        }
        for (const auto& p : pieces) {
            Rat lo_w = p.lo.eval(wit), hi_w = p.hi.eval(wit);
            for (size_t k = 0; k + 1 < uniq.size(); ++k) {
                Rat a = uniq[k].eval(wit), b = uniq[k + 1].eval(wit);
                if (a < lo_w || b > hi_w) continue;
                // emit the piece over [uniq[k], uniq[k+1]] re-anchored at uniq[k]
                Term nt = *p.t;
                Affine shift = uniq[k] - p.anchor;
                for (auto& f : nt.w.fs) {
                    auto it = f.pos.vars.find(0);
                    if (it != f.pos.vars.end() && it->second != 0) f.pos += it->second * shift;
                }
                Affine len = uniq[k + 1] - uniq[k];
                nt.dom.rows.clear();
                SymRow up, down;
                up.a = {Rat(1)};
                up.rhs = len;
                down.a = {Rat(-1)};
                down.rhs = Affine(Rat(0));
                nt.dom.rows = {down, up}; // canonical row order
                refined.push_back(std::move(nt));
            }
        }
    }
    std::vector<Term> result;
    for (size_t i = 0; i < canon.size(); ++i)
        if (!consumed[i]) result.push_back(canon[i]);
    result.insert(result.end(), refined.begin(), refined.end());
    merge(result);
    Combination out;
    out.terms = std::move(result);
    return out;
}

} // namespace tva::weak
