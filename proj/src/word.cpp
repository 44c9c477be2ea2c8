#include "tva/symcalc.hpp"

#include <sstream>

namespace tva::weak {

int Factor::cmp(const Factor& o) const {
    if (sym != o.sym) return sym < o.sym ? -1 : 1;
    if (bdec != o.bdec) return bdec < o.bdec ? -1 : 1;
    if (qdec != o.qdec) return qdec < o.qdec ? -1 : 1;
    if (der != o.der) return der < o.der ? -1 : 1;
    return pos.cmp(o.pos);
}

std::string Factor::str(const Fields& f) const {
    std::string base = f.name(sym);
    if (qdec) base = "Q" + base;
    if (bdec) base = "[b," + base + "]";
    for (int i = 0; i < der; ++i) base = "d(" + base + ")";
    return base + "(" + pos.str() + ")";
}

int SymRow::cmp(const SymRow& o) const {
    if (a.size() != o.a.size()) return a.size() < o.a.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != o.a[i]) return a[i] < o.a[i] ? -1 : 1;
    return rhs.cmp(o.rhs);
}

geom::HPolytope SymDomain::instantiate(const Witness& w) const {
    geom::HPolytope P;
    P.dim = nvars;
    for (const auto& r : rows) {
        if (r.rhs.has_vars()) throw TvaError("SymDomain: row offset contains variables");
        P.add(r.a, r.rhs.eval(w));
    }
    return P;
}

std::string SymDomain::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ", ";
        bool first = true;
        for (size_t j = 0; j < rows[i].a.size(); ++j) {
            const Rat& k = rows[i].a[j];
            if (k == 0) continue;
            if (!first) os << (k > 0 ? " + " : " - ");
            else if (k < 0) os << "-";
            Rat m = k > 0 ? k : Rat(-k);
            if (m != 1) os << rat_str(m) << "*";
            os << "u" << j;
            first = false;
        }
        if (first) os << "0";
        os << " <= " << rows[i].rhs.str();
    }
    os << "}";
    return os.str();
}

int SymDomain::cmp(const SymDomain& o) const {
    if (nvars != o.nvars) return nvars < o.nvars ? -1 : 1;
    if (rows.size() != o.rows.size()) return rows.size() < o.rows.size() ? -1 : 1;
    for (size_t i = 0; i < rows.size(); ++i) {
        int c = rows[i].cmp(o.rows[i]);
        if (c) return c;
    }
    return 0;
}

std::string Combination::str(const Fields& f) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < terms.size(); ++i) {
        const Term& t = terms[i];
        if (i) os << "\n";
        os << (t.w.coeff < 0 ? "- " : "+ ") << rat_str(t.w.coeff < 0 ? Rat(-t.w.coeff) : t.w.coeff);
        os << " * ";
        if (t.dom.nvars > 0) os << "int[" << t.dom.nvars << "]" << t.dom.str() << " ";
        for (const auto& fac : t.w.fs) os << fac.str(f) << " ";
    }
    return os.str();
}

Regime Regime::standard() {
    Regime r;
    r.wit[P_T] = 2;
    r.wit[P_RHO] = 1;
    r.wit[P_ALPHA1] = Rat(1, 97);
    r.wit[P_ALPHA2] = Rat(1, 9);
    r.wit[P_EPS1] = Rat(1, 101);
    r.wit[P_EPS2] = Rat(1, 11);
    r.wit[P_XI] = Rat(1, 128);
    return r;
}

Regime Regime::alternative(int which) {
    Regime r;
    if (which == 1) {
        r.wit[P_T] = 3;
        r.wit[P_RHO] = 1;
        r.wit[P_ALPHA1] = Rat(1, 90);
        r.wit[P_ALPHA2] = Rat(1, 8);
        r.wit[P_EPS1] = Rat(1, 110);
        r.wit[P_EPS2] = Rat(1, 12);
        r.wit[P_XI] = Rat(1, 130);
    } else {
        r.wit[P_T] = 5;
        r.wit[P_RHO] = 2;
        r.wit[P_ALPHA1] = Rat(1, 50);
        r.wit[P_ALPHA2] = Rat(1, 5);
        r.wit[P_EPS1] = Rat(1, 61);
        r.wit[P_EPS2] = Rat(1, 7);
        r.wit[P_XI] = Rat(1, 71);
    }
    return r;
}

bool Regime::satisfies_scales() const {
    Rat small = std::max({wit[P_XI], wit[P_EPS1], wit[P_ALPHA1]});
    Rat mid_lo = std::min(wit[P_EPS2], wit[P_ALPHA2]);
    Rat mid_hi = std::max(wit[P_EPS2], wit[P_ALPHA2]);
    return small > 0 && small < mid_lo && mid_hi < wit[P_RHO] && wit[P_RHO] < wit[P_T];
}

} // namespace tva::weak
