#pragma once

#include "tva/affine.hpp"
#include "tva/hpolytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tva::weak {

/// Field symbols of a verification run; parity 0 or 1 each. Decorations are
/// carried on factors, not here.
struct Fields {
    std::vector<std::string> names;
    std::vector<int> parities;

    int add(const std::string& name, int parity) {
        names.push_back(name);
        parities.push_back(parity & 1);
        return static_cast<int>(names.size()) - 1;
    }
    int parity(int sym) const { return parities.at(static_cast<size_t>(sym)); }
    const std::string& name(int sym) const { return names.at(static_cast<size_t>(sym)); }
};

/// One field occurrence: base symbol with decorations at an affine position.
/// Canonical decoration order is d applications of the translation derivative
/// applied to [b_{-1}, [Q, A]] (flags independently present or not).
struct Factor {
    int sym = 0;
    bool bdec = false;
    bool qdec = false;
    int der = 0;
    Affine pos;

    int parity(const Fields& f) const { return (f.parity(sym) + (bdec ? 1 : 0) + (qdec ? 1 : 0)) & 1; }
    int cmp(const Factor& o) const;
    std::string str(const Fields& f) const;
};

struct Word {
    Rat coeff{1};
    std::vector<Factor> fs;

    int parity(const Fields& f) const {
        int p = 0;
        for (const auto& x : fs) p ^= x.parity(f);
        return p;
    }
};

/// One inequality sum_i a_i u_i <= rhs(params) of an integration domain.
struct SymRow {
    std::vector<Rat> a;
    Affine rhs;

    int cmp(const SymRow& o) const;
};

/// Parametric integration domain: polytope over integration variables with
/// parameter-affine offsets.
struct SymDomain {
    int nvars = 0;
    std::vector<SymRow> rows;

    geom::HPolytope instantiate(const Witness& w) const;
    std::string str() const;
    int cmp(const SymDomain& o) const;
};

struct Term {
    SymDomain dom;
    Word w;
};

/// Formal linear combination of polytope integrals of operator words. The
/// free position variable is the parameter t.
struct Combination {
    std::vector<Term> terms;

    bool empty() const { return terms.empty(); }
    Combination& operator+=(const Combination& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        return *this;
    }
    std::string str(const Fields& f) const;
};

/// Pentagon parameter pack, generic over the parameter representation so the
/// symbolic and model backends share the operator templates.
template <class ParT>
struct PentParsT {
    ParT xi, alpha1, alpha2, eps1, eps2, rho;
};

using PentPars = PentParsT<Affine>;

/// Scale-class ordering plus the canonical witness used for every ordering
/// decision. All witness values are pairwise distinct so no spurious ties
/// occur.
struct Regime {
    Witness wit;

    static Regime standard();
    static Regime alternative(int which); // witness-independence checks
    bool satisfies_scales() const;
};

/// The symbolic backend of the calculus: primitives for building the paper's
/// nonlocal operators, the Q action with Stokes conversion of exact terms,
/// and normalization to a canonical form.
class Calc {
public:
    Fields fields;
    Regime regime;

    using Val = Combination;
    using Par = Affine;

    explicit Calc(Regime r = Regime::standard()) : regime(r) {}

    int add_field(const std::string& name, int parity) { return fields.add(name, parity); }

    // --- parameter expressions -------------------------------------------
    Par par(int which) const { return Affine::param(which); }
    Par lit(const Rat& r) const { return Affine(r); }

    // --- operator combinators --------------------------------------------
    Val field(int sym) const;
    Val zero() const { return {}; }
    Val add(const Val& a, const Val& b) const;
    Val scale(const Rat& s, const Val& v) const;
    /// Operator displaced by a parameter offset: at(X, d)(t) = X(t + d).
    Val at(const Val& v, const Par& offset) const;
    /// Word concatenation (the product of operators in displayed order).
    Val mul(const Val& a, const Val& b) const;
    /// [b_{-1}, X]: graded Leibniz expansion over each word.
    Val bdec(const Val& v) const;
    /// Integral over one fresh variable: intov(X, lo, hi)(t) = ∫ X(t+u) du.
    /// Inverted bounds at the witness flip the sign; an empty interval gives 0.
    Val intov(const Val& v, const Par& lo, const Par& hi) const;
    /// Pentagon integral: pent(X, Y)(t) = ∫_P X(x+t) Y(y+t) dx dy with the
    /// positively oriented Lebesgue measure.
    Val pent(const Val& x, const Val& y, const PentPars& pp) const;
    /// K_n realization integral for mu'_n: the middle factors at t'_i + t.
    /// Positive Lebesgue measure; the orientation prefactor is the caller's.
    Val knint(const std::vector<Val>& middles, const Par& rho) const;

    /// Graded commutator with Q: Leibniz with Koszul signs, the rewrite
    /// Q[b,A] = dA - [b,QA] on decorated factors, and conversion of the exact
    /// derivative terms into boundary integrals (Newton-Leibniz / Stokes).
    /// Unconvertible derivative terms are kept (they then show in residuals).
    Val q(const Val& v) const;

    int parity(const Val& v) const; // asserts homogeneity; 0 for empty

    // --- canonical form ----------------------------------------------------
    /// Position-sorted, variable-canonical, shift-normalized, refined and
    /// merged form. Errors on ambiguous position ties.
    Combination normalize(const Val& v) const;
    bool is_zero(const Val& v) const { return normalize(v).empty(); }

    std::string show(const Val& v) const { return v.str(fields); }

    // internal helpers shared by q() and normalize()
    struct CanonTerm; // defined in the implementation
private:
    std::vector<Term> canonical_pieces(const Term& t, bool refine_shift) const;
    Combination stokes_convert(std::vector<Term> dterms) const;
    friend struct CalcDetail;
};

} // namespace tva::weak
