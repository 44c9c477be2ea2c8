#pragma once

#include "tva/polynomial.hpp"
#include "tva/symcalc.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace tva::models {

/// Element f(x) + g(x)dx of the commutative de Rham model; x is polynomial
/// variable 0, further variables are integration parameters passing through.
struct DrElem {
    Poly f, g;

    bool is_zero() const { return f.is_zero() && g.is_zero(); }
    bool operator==(const DrElem&) const = default;

    DrElem operator+(const DrElem& o) const { return {f + o.f, g + o.g}; }
    DrElem operator-(const DrElem& o) const { return {f - o.f, g - o.g}; }
    friend DrElem operator*(const Rat& s, const DrElem& e) { return {s * e.f, s * e.g}; }
    /// Supercommutative product with dx ∧ dx = 0.
    DrElem operator*(const DrElem& o) const { return {f * o.f, f * o.g + g * o.f}; }

    std::string str() const;
};

/// The structure operators of the model: q = d, beta = contraction with d/dx
/// (the b_{-1} action), ell = {q, beta} = d/dx, and translation x -> x + p.
DrElem dr_q(const DrElem& e);
DrElem dr_beta(const DrElem& e);
DrElem dr_ell(const DrElem& e);
DrElem dr_translate(const DrElem& e, const Poly& p);

/// Parity of a homogeneous element: 0 for f-part only, 1 for g-part only.
int dr_parity(const DrElem& e);

/// Linear functional <v*, . v>; the identities hold for every choice.
struct Correlator {
    std::string name;
    std::function<Rat(const DrElem&)> apply;
};
std::vector<Correlator> correlators();

/// Exact-evaluation backend for the shared operator templates. Values are
/// sums of deferred terms; every integral is computed exactly by polytope
/// triangulation the moment its variable scope closes.
class DrCalc {
public:
    using Par = Rat;
    struct Val {
        // evaluates at a position polynomial, allocating fresh variables
        std::vector<std::function<DrElem(const Poly&, int&)>> fns;
        };

    std::array<Rat, weak::NPARAMS> params{};

    Par par(int which) const { return params[static_cast<size_t>(which)]; }
    Par lit(const Rat& r) const { return r; }

    Val lift(const DrElem& e) const;
    Val zero() const { return {}; }
    Val add(const Val& a, const Val& b) const;
    Val scale(const Rat& s, const Val& v) const;
    Val at(const Val& v, const Par& d) const;
    Val mul(const Val& a, const Val& b) const;
    Val bdec(const Val& v) const;
    Val intov(const Val& v, const Par& lo, const Par& hi) const;
    Val pent(const Val& x, const Val& y, const weak::PentParsT<Par>& pp) const;
    Val q(const Val& v) const;

    DrElem value(const Val& v, const Rat& t) const;
};

/// Exact model parameters for an evaluation run (all entries rational).
struct ModelParams {
    Rat t{2}, rho{1}, alpha1, alpha2, eps1, eps2, xi;

    static ModelParams acceptance(); // rho=1, a2=e2=1/10, a1=e1=xi=1/100, t=2
    std::array<Rat, weak::NPARAMS> as_witness() const;
};

/// Exact evaluation of a named operation on parity-homogeneous inputs.
/// Names: pair, m, n', n, mtilde, p', p.
DrElem eval_op(const std::string& opname, const std::vector<DrElem>& inputs,
               const ModelParams& mp);
std::vector<std::string> eval_op_names();

/// LHS - RHS of a named identity, evaluated exactly; identities:
/// prop3.1, lemma3.1, prop3.2, lemma3.2, prop3.3, pentagon-stokes.
DrElem model_residual(const std::string& identity, const std::vector<DrElem>& inputs,
                      const ModelParams& mp);
std::vector<std::string> model_identity_names();

/// Lian-Zuckerman operations in the commutative model: the pair is the
/// product, m and n vanish because the operator products are regular.
DrElem lz_model(const std::string& opname, const std::vector<DrElem>& inputs);

/// Deterministic parity-homogeneous random element of degree <= maxdeg.
DrElem random_element(uint64_t seed, int maxdeg, int parity);

} // namespace tva::models
