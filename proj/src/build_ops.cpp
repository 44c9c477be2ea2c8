#include "tva/symcalc.hpp"

namespace tva::weak {

namespace {

/// Shift every integration-variable index in a term by `off`.
Term offset_vars(const Term& t, int off) {
    if (off == 0) return t;
    Term r = t;
    for (auto& f : r.w.fs) {
        std::map<int, Rat> nv;
        for (const auto& [v, k] : f.pos.vars) nv[v + off] = k;
        f.pos.vars = std::move(nv);
    }
    return r;
}

/// Substitute P_T -> P_T + delta in every position of the word.
void shift_positions(Term& t, const Affine& delta) {
    Affine repl = Affine::param(P_T) + delta;
    for (auto& f : t.w.fs) f.pos = f.pos.subst_param(P_T, repl);
}

} // namespace

Combination Calc::field(int sym) const {
    Factor f;
    f.sym = sym;
    f.pos = Affine::param(P_T);
    Term t;
    t.w.fs.push_back(std::move(f));
    Combination c;
    c.terms.push_back(std::move(t));
    return c;
}

Combination Calc::add(const Val& a, const Val& b) const {
    Combination r = a;
    r += b;
    return r;
}

Combination Calc::scale(const Rat& s, const Val& v) const {
    if (s == 0) return {};
    Combination r = v;
    for (auto& t : r.terms) t.w.coeff *= s;
    return r;
}

Combination Calc::at(const Val& v, const Par& offset) const {
    if (offset.has_vars()) throw TvaError("Calc::at: offset must be variable-free");
    Combination r = v;
    for (auto& t : r.terms) shift_positions(t, offset);
    return r;
}

Combination Calc::mul(const Val& a, const Val& b) const {
    Combination r;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Term t;
            t.dom.nvars = ta.dom.nvars + tb.dom.nvars;
            t.dom.rows = ta.dom.rows;
            for (auto& row : t.dom.rows) row.a.resize(static_cast<size_t>(t.dom.nvars), Rat(0));
            Term tb2 = offset_vars(tb, ta.dom.nvars);
            for (const auto& row : tb.dom.rows) {
                SymRow nr;
                nr.a.assign(static_cast<size_t>(t.dom.nvars), Rat(0));
                for (size_t i = 0; i < row.a.size(); ++i)
                    nr.a[static_cast<size_t>(ta.dom.nvars) + i] = row.a[i];
                nr.rhs = row.rhs;
                t.dom.rows.push_back(std::move(nr));
            }
            t.w.coeff = ta.w.coeff * tb2.w.coeff;
            t.w.fs = ta.w.fs;
            t.w.fs.insert(t.w.fs.end(), tb2.w.fs.begin(), tb2.w.fs.end());
            r.terms.push_back(std::move(t));
        }
    return r;
}

Combination Calc::bdec(const Val& v) const {
    Combination r;
    for (const auto& t : v.terms) {
        int prefix = 0;
        for (size_t i = 0; i < t.w.fs.size(); ++i) {
            const Factor& f = t.w.fs[i];
            if (!f.bdec) {
                Term nt = t;
                nt.w.fs[i].bdec = true;
                if (prefix & 1) nt.w.coeff = -nt.w.coeff;
                r.terms.push_back(std::move(nt));
            }
            prefix ^= f.parity(fields);
        }
    }
    return r;
}

Combination Calc::intov(const Val& v, const Par& lo, const Par& hi) const {
    if (lo.has_vars() || hi.has_vars()) throw TvaError("Calc::intov: bounds must be variable-free");
    Rat wlo = lo.eval(regime.wit);
    Rat whi = hi.eval(regime.wit);
    if (wlo == whi) {
        if (!(lo == hi))
            // zero-length interval only by witness coincidence: ambiguous
            throw TvaError("Calc::intov: bounds coincide at the witness but differ symbolically");
        return {};
    }
    Rat orient(1);
    Affine l = lo, h = hi;
    if (wlo > whi) {
        std::swap(l, h);
        orient = -1;
    }
    Combination r;
    for (const auto& t : v.terms) {
        Term nt = t;
        int u = nt.dom.nvars;
        nt.dom.nvars += 1;
        for (auto& row : nt.dom.rows) row.a.resize(static_cast<size_t>(nt.dom.nvars), Rat(0));
        shift_positions(nt, Affine::var(u));
        SymRow up, down;
        up.a.assign(static_cast<size_t>(nt.dom.nvars), Rat(0));
        up.a[static_cast<size_t>(u)] = 1;
        up.rhs = h;
        down.a.assign(static_cast<size_t>(nt.dom.nvars), Rat(0));
        down.a[static_cast<size_t>(u)] = -1;
        down.rhs = -l;
        nt.dom.rows.push_back(std::move(up));
        nt.dom.rows.push_back(std::move(down));
        nt.w.coeff *= orient;
        r.terms.push_back(std::move(nt));
    }
    return r;
}

Combination Calc::pent(const Val& x, const Val& y, const PentPars& pp) const {
    Combination r;
    for (const auto& tx : x.terms)
        for (const auto& ty : y.terms) {
            Term t;
            int nx = tx.dom.nvars, ny = ty.dom.nvars;
            t.dom.nvars = nx + ny + 2;
            int vx = nx + ny, vy = nx + ny + 1;
            auto widen = [&](const SymRow& row, int off) {
                SymRow nr;
                nr.a.assign(static_cast<size_t>(t.dom.nvars), Rat(0));
                for (size_t i = 0; i < row.a.size(); ++i) nr.a[static_cast<size_t>(off) + i] = row.a[i];
                nr.rhs = row.rhs;
                return nr;
            };
            for (const auto& row : tx.dom.rows) t.dom.rows.push_back(widen(row, 0));
            for (const auto& row : ty.dom.rows) t.dom.rows.push_back(widen(row, nx));
            auto prow = [&](Rat cx, Rat cy, Affine rhs) {
                SymRow nr;
                nr.a.assign(static_cast<size_t>(t.dom.nvars), Rat(0));
                nr.a[static_cast<size_t>(vx)] = std::move(cx);
                nr.a[static_cast<size_t>(vy)] = std::move(cy);
                nr.rhs = std::move(rhs);
                t.dom.rows.push_back(std::move(nr));
            };
            prow(Rat(1), Rat(0), pp.rho - pp.alpha1); // x <= rho - alpha1
            prow(Rat(-1), Rat(0), -pp.eps2);          // x >= eps2
            prow(Rat(0), Rat(1), pp.rho - pp.alpha2); // y <= rho - alpha2
            prow(Rat(0), Rat(-1), -pp.eps1);          // y >= eps1
            prow(Rat(-1), Rat(1), -pp.xi);            // x - y >= xi
            Term txs = tx;
            shift_positions(txs, Affine::var(vx));
            Term tys = offset_vars(ty, nx);
            shift_positions(tys, Affine::var(vy));
            t.w.coeff = txs.w.coeff * tys.w.coeff;
            t.w.fs = txs.w.fs;
            t.w.fs.insert(t.w.fs.end(), tys.w.fs.begin(), tys.w.fs.end());
            r.terms.push_back(std::move(t));
        }
    return r;
}

Combination Calc::knint(const std::vector<Val>& middles, const Par& rho) const {
    int n = static_cast<int>(middles.size()) + 2;
    if (n < 3) throw TvaError("Calc::knint: need at least one middle factor");
    int d = n - 2;
    // cartesian product over the middles' term lists
    std::vector<size_t> idx(middles.size(), 0);
    Combination r;
    while (true) {
        Term t;
        t.dom.nvars = d;
        bool ok = true;
        for (size_t i = 0; i < middles.size(); ++i) {
            if (middles[i].terms.empty()) {
                ok = false;
                break;
            }
            Term part = offset_vars(middles[i].terms[idx[i]], t.dom.nvars);
            shift_positions(part, Affine::var(static_cast<int>(i)));
            int add_vars = part.dom.nvars;
            int old = t.dom.nvars;
            t.dom.nvars += add_vars;
            for (auto& row : t.dom.rows) row.a.resize(static_cast<size_t>(t.dom.nvars), Rat(0));
            for (const auto& row : part.dom.rows) {
                SymRow nr;
                nr.a.assign(static_cast<size_t>(t.dom.nvars), Rat(0));
                for (size_t j = 0; j < row.a.size(); ++j)
                    nr.a[static_cast<size_t>(old) + j - 0] = row.a[j];
                nr.rhs = row.rhs;
                t.dom.rows.push_back(std::move(nr));
            }
            t.w.coeff *= part.w.coeff;
            t.w.fs.insert(t.w.fs.end(), part.w.fs.begin(), part.w.fs.end());
        }
        if (!ok) break;
        // K_n realization rows over the coordinates t'_2..t'_{n-1} (vars 0..d-1):
        // for every proper contiguous interval [u,v] of {1..n-1}:
        //   s_u - s_{v+1} >= len(len+1)/2 * rho/T,  T = n(n-1)/2 + 1
        // with s_1 = (T-1) rho / T and s_n = 0, s_k = T t_k / rho otherwise;
        // rescaled by rho/T so every row is parameter-affine.
        Rat T = Rat(n * (n - 1)) / 2 + 1;
        for (int u = 1; u <= n - 1; ++u)
            for (int v = u; v <= n - 1; ++v) {
                if (u == 1 && v == n - 1) continue;
                long len = v - u + 1;
                SymRow row;
                row.a.assign(static_cast<size_t>(t.dom.nvars), Rat(0));
                Affine rhs = (-Rat(len * (len + 1)) / 2 / T) * rho;
                // -(t_u - t_{v+1}) <= -len(len+1)/2 * rho/T
                if (u == 1) rhs += ((T - 1) / T) * rho; // constant s_1 part moves right
                else row.a[static_cast<size_t>(u - 2)] = -1;
                if (v + 1 < n) row.a[static_cast<size_t>(v + 1 - 2)] = 1;
                t.dom.rows.push_back(std::move(row));
                t.dom.rows.back().rhs = std::move(rhs);
            }
        r.terms.push_back(std::move(t));
        // advance cartesian index
        size_t i = idx.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < middles[i].terms.size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (done) break;
    }
    return r;
}

int Calc::parity(const Val& v) const {
    if (v.terms.empty()) return 0;
    int p = v.terms[0].w.parity(fields);
    for (const auto& t : v.terms)
        if (t.w.parity(fields) != p) throw TvaError("Calc::parity: inhomogeneous combination");
    return p;
}

} // namespace tva::weak
