#include "tva/symcalc.hpp"

#include <algorithm>
#include <map>

namespace tva::weak {

namespace {

using geom::HPolytope;
using linalg::Vec;

/// Q acting on one factor: list of (replacement factor, sign relative to the
/// incoming prefix sign, is_derivative_term).
struct QPiece {
    Factor f;
    int sign; // +1 or -1
    bool deriv;
};

std::vector<QPiece> q_on_factor(const Factor& f) {
    std::vector<QPiece> out;
    if (f.bdec && !f.qdec) {
        // Q[b, d^k A] = d^{k+1} A - [b, d^k QA]
        Factor d = f;
        d.bdec = false;
        d.der += 1;
        out.push_back({d, +1, true});
        Factor bq = f;
        bq.qdec = true;
        out.push_back({bq, -1, false});
    } else if (f.bdec && f.qdec) {
        // Q[b, d^k QA] = d^{k+1} QA
        Factor d = f;
        d.bdec = false;
        d.der += 1;
        out.push_back({d, +1, true});
    } else if (!f.bdec && !f.qdec) {
        Factor q = f;
        q.qdec = true;
        out.push_back({q, +1, false});
    }
    // plain Q-image: Q d^k QA = 0
    return out;
}

struct GroupKey {
    SymDomain dom;
    Word base; // coefficient 1, the derivative flag removed

    bool operator<(const GroupKey& o) const {
        int c = dom.cmp(o.dom);
        if (c) return c < 0;
        if (base.fs.size() != o.base.fs.size()) return base.fs.size() < o.base.fs.size();
        for (size_t i = 0; i < base.fs.size(); ++i) {
            c = base.fs[i].cmp(o.base.fs[i]);
            if (c) return c < 0;
        }
        return false;
    }
};

} // namespace

Combination Calc::stokes_convert(std::vector<Term> dterms) const {
    const Witness& wit = regime.wit;
    // canonicalize each derivative term, then group by (domain, base word)
    std::vector<Term> canon;
    for (const auto& t : dterms) {
        auto pieces = canonical_pieces(t, false);
        canon.insert(canon.end(), pieces.begin(), pieces.end());
    }
    std::map<GroupKey, std::map<size_t, Rat>> groups; // key -> {factor index -> coeff}
    std::vector<Term> leftovers;
    for (auto& t : canon) {
        // locate the unique derivative factor
        int dcount = 0;
        size_t dpos = 0;
        for (size_t i = 0; i < t.w.fs.size(); ++i)
            if (t.w.fs[i].der > 0) {
                ++dcount;
                dpos = i;
            }
        if (dcount != 1 || t.w.fs[dpos].der != 1 || t.dom.nvars == 0) {
            leftovers.push_back(t);
            continue;
        }
        GroupKey key;
        key.dom = t.dom;
        key.base = t.w;
        key.base.coeff = 1;
        key.base.fs[dpos].der = 0;
        groups[key][dpos] += t.w.coeff;
    }

    Combination out;
    for (auto& t : leftovers) out.terms.push_back(std::move(t));

    for (auto& [key, targets] : groups) {
        int nv = key.dom.nvars;
        size_t nf = key.base.fs.size();
        // solve sum_r a_{i,r} lambda_r = c_i over all factors i
        linalg::Mat M(nf, Vec(static_cast<size_t>(nv), Rat(0)));
        Vec rhs(nf, Rat(0));
        for (size_t i = 0; i < nf; ++i) {
            for (const auto& [v, k] : key.base.fs[i].pos.vars) M[i][static_cast<size_t>(v)] = k;
            auto it = targets.find(i);
            if (it != targets.end()) rhs[i] = it->second;
        }
        // Gaussian elimination for any particular solution
        std::vector<Rat> lambda(static_cast<size_t>(nv), Rat(0));
        {
            linalg::Mat A = M;
            Vec b = rhs;
            size_t row = 0;
            std::vector<int> pivot_of_col(static_cast<size_t>(nv), -1);
            for (int col = 0; col < nv && row < nf; ++col) {
                size_t piv = row;
                while (piv < nf && A[piv][static_cast<size_t>(col)] == 0) ++piv;
                if (piv == nf) continue;
                std::swap(A[row], A[piv]);
                std::swap(b[row], b[piv]);
                for (size_t i = 0; i < nf; ++i) {
                    if (i == row || A[i][static_cast<size_t>(col)] == 0) continue;
                    Rat f = A[i][static_cast<size_t>(col)] / A[row][static_cast<size_t>(col)];
                    for (int j = 0; j < nv; ++j) A[i][static_cast<size_t>(j)] -= f * A[row][static_cast<size_t>(j)];
                    b[i] -= f * b[row];
                }
                pivot_of_col[static_cast<size_t>(col)] = static_cast<int>(row);
                ++row;
            }
            bool consistent = true;
            for (size_t i = row; i < nf; ++i)
                if (b[i] != 0) consistent = false;
            if (!consistent) {
                // cannot express the group as a divergence; keep raw
                for (const auto& [dpos, c] : targets) {
                    Term t;
                    t.dom = key.dom;
                    t.w = key.base;
                    t.w.coeff = c;
                    t.w.fs[dpos].der = 1;
                    out.terms.push_back(std::move(t));
                }
                continue;
            }
            for (int col = 0; col < nv; ++col) {
                int pr = pivot_of_col[static_cast<size_t>(col)];
                if (pr >= 0) lambda[static_cast<size_t>(col)] = b[static_cast<size_t>(pr)] / A[static_cast<size_t>(pr)][static_cast<size_t>(col)];
            }
        }
        // Stokes: sum_r lambda_r * Int_D d(base)/du_r = boundary integrals
        HPolytope P = key.dom.instantiate(wit);
        auto facets = P.facet_rows();
        for (int r = 0; r < nv; ++r) {
            if (lambda[static_cast<size_t>(r)] == 0) continue;
            for (int fr : facets) {
                const SymRow& row = key.dom.rows[static_cast<size_t>(fr)];
                if (row.a[static_cast<size_t>(r)] == 0) continue;
                // pivot coordinate with the largest |coefficient|
                int kpiv = -1;
                Rat best;
                for (int kk = 0; kk < nv; ++kk) {
                    Rat mag = row.a[static_cast<size_t>(kk)] < 0 ? Rat(-row.a[static_cast<size_t>(kk)]) : row.a[static_cast<size_t>(kk)];
                    if (mag == 0) continue;
                    if (kpiv < 0 || mag > best) {
                        kpiv = kk;
                        best = mag;
                    }
                }
                Rat apiv = row.a[static_cast<size_t>(kpiv)];
                Rat absapiv = apiv < 0 ? Rat(-apiv) : apiv;
                // u_kpiv = (rhs - sum_{i != kpiv} a_i u_i) / a_kpiv
                Affine repl = (Rat(1) / apiv) * row.rhs;
                for (int i = 0; i < nv; ++i) {
                    if (i == kpiv || row.a[static_cast<size_t>(i)] == 0) continue;
                    repl += (-row.a[static_cast<size_t>(i)] / apiv) * Affine::var(i);
                }
                Term bt;
                bt.w = key.base;
                bt.w.coeff = lambda[static_cast<size_t>(r)] * row.a[static_cast<size_t>(r)] / absapiv;
                for (auto& f : bt.w.fs) f.pos = f.pos.subst_var(kpiv, repl);
                // project the remaining rows
                bt.dom.nvars = nv - 1;
                auto old_to_new = [&](int v) { return v < kpiv ? v : v - 1; };
                for (size_t m = 0; m < key.dom.rows.size(); ++m) {
                    if (static_cast<int>(m) == fr) continue;
                    const SymRow& rm = key.dom.rows[m];
                    SymRow nr;
                    nr.a.assign(static_cast<size_t>(nv - 1), Rat(0));
                    Affine nrhs = rm.rhs;
                    Rat piv_coeff = rm.a[static_cast<size_t>(kpiv)];
                    for (int i = 0; i < nv; ++i) {
                        if (i == kpiv) continue;
                        Rat coeff = rm.a[static_cast<size_t>(i)];
                        if (piv_coeff != 0) coeff += piv_coeff * (-row.a[static_cast<size_t>(i)] / apiv);
                        nr.a[static_cast<size_t>(old_to_new(i))] = coeff;
                    }
                    if (piv_coeff != 0) nrhs -= (piv_coeff / apiv) * row.rhs;
                    nr.rhs = std::move(nrhs);
                    bt.dom.rows.push_back(std::move(nr));
                }
                // re-index variables in positions
                for (auto& f : bt.w.fs) {
                    std::map<int, Rat> nvars_map;
                    for (const auto& [v, k] : f.pos.vars) {
                        if (v == kpiv) throw TvaError("stokes: pivot variable not eliminated");
                        nvars_map[old_to_new(v)] = k;
                    }
                    f.pos.vars = std::move(nvars_map);
                }
                out.terms.push_back(std::move(bt));
            }
        }
    }
    return out;
}

Combination Calc::q(const Val& v) const {
    std::vector<Term> bulk;
    std::vector<Term> dterms;
    for (const auto& t : v.terms) {
        int prefix = 0;
        for (size_t i = 0; i < t.w.fs.size(); ++i) {
            for (const auto& piece : q_on_factor(t.w.fs[i])) {
                Term nt = t;
                nt.w.fs[i] = piece.f;
                Rat s = piece.sign;
                if (prefix & 1) s = -s;
                nt.w.coeff *= s;
                (piece.deriv ? dterms : bulk).push_back(std::move(nt));
            }
            prefix ^= t.w.fs[i].parity(fields);
        }
    }
    Combination out = stokes_convert(std::move(dterms));
    for (auto& t : bulk) out.terms.push_back(std::move(t));
    return out;
}

} // namespace tva::weak
