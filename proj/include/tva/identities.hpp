#pragma once

#include "tva/rational.hpp"
#include "tva/symcalc.hpp"

#include <functional>
#include <vector>

namespace tva::weak {

/// The displayed operator calculus, written once against a backend. Backends:
/// Calc (symbolic words and domains) and the exact de Rham model. A backend
/// provides
///   types Val, Par;
///   Val zero(); add; scale(Rat, Val); at(Val, Par); mul(Val, Val);
///   bdec(Val); intov(Val, Par, Par); pent(Val, Val, PentParsT<Par>); q(Val);
///   Par par(int which); Par lit(Rat);
/// Parities are tracked here, next to the values.
template <class B>
struct Ops {
    using Val = typename B::Val;
    using Par = typename B::Par;

    B& b;

    struct TV {
        Val v;
        int par = 0;
    };

    static Rat sgn(int e) { return (e & 1) ? Rat(-1) : Rat(1); }

    TV add(const TV& x, const TV& y) const { return {b.add(x.v, y.v), x.par}; }
    TV sub(const TV& x, const TV& y) const { return {b.add(x.v, b.scale(Rat(-1), y.v)), x.par}; }
    TV scale(const Rat& s, const TV& x) const { return {b.scale(s, x.v), x.par}; }
    TV at(const TV& x, const Par& d) const { return {b.at(x.v, d), x.par}; }
    TV mul(const TV& x, const TV& y) const { return {b.mul(x.v, y.v), (x.par + y.par) & 1}; }
    TV bdec(const TV& x) const { return {b.bdec(x.v), (x.par + 1) & 1}; }
    TV intov(const TV& x, const Par& lo, const Par& hi) const { return {b.intov(x.v, lo, hi), x.par}; }
    TV q(const TV& x) const { return {b.q(x.v), (x.par + 1) & 1}; }

    Par par(int which) const { return b.par(which); }
    Par lit(const Rat& r) const { return b.lit(r); }

    // ---- the paper's operations -------------------------------------------

    /// (X,Y)_eps(t) = X(t+eps) Y(t)
    TV pair_(const TV& x, const TV& y, const Par& eps) const { return mul(at(x, eps), y); }

    /// m_eps(X,Y)(t) = Int_{-eps}^{0} [b, (X,Y)_eps(t+u)] du
    TV m_(const TV& x, const TV& y, const Par& eps) const {
        return intov(bdec(pair_(x, y, eps)), Par(-eps), lit(Rat(0)));
    }

    /// n'_{rho,a1,a2}(X,Y,Z)(t) = (-1)^{|X|} X(t+rho) Int_{a2}^{rho-a1}[b,Y](t+u) du Z(t)
    TV nprime_(const TV& x, const TV& y, const TV& z, const Par& rho, const Par& a1,
               const Par& a2) const {
        TV middle = intov(bdec(y), a2, Par(rho - a1));
        return scale(sgn(x.par), mul(at(x, rho), mul(middle, z)));
    }

    /// n = n' + (m_{a1}(X,Y), Z)_rho
    TV n_(const TV& x, const TV& y, const TV& z, const Par& rho, const Par& a1,
          const Par& a2) const {
        return add(nprime_(x, y, z, rho, a1, a2), pair_(m_(x, y, a1), z, rho));
    }

    /// mtilde_{rho,e1,e2}(X,Y,Z)(t) = Int_{-rho}^{0} [b, n'_{rho,e1,e2}(X,Y,Z)(t+u)] du
    TV mtilde_(const TV& x, const TV& y, const TV& z, const Par& rho, const Par& e1,
               const Par& e2) const {
        return intov(bdec(nprime_(x, y, z, rho, e1, e2)), Par(-rho), lit(Rat(0)));
    }

    /// p'_P(A1..A4)(t): pentagon integral with the clockwise orientation the
    /// displayed boundary terms use, i.e. -(-1)^{|A2|} times the positive-
    /// measure integral. This equals mu'_4, whose prefactor
    /// (-1)^{(n-3)(n-2)/2} supplies the same orientation sign.
    TV pprime_(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
               const PentParsT<Par>& pp) const {
        TV middle{b.pent(bdec(a2).v, bdec(a3).v, pp), (a2.par + a3.par) & 1};
        TV raw = mul(at(a1, pp.rho), mul(middle, a4));
        return scale(-sgn(a2.par), raw);
    }

    /// p = p' + n_{rho,alpha2,eps1}(m_{alpha1}(A1,A2),A3,A4)
    ///       + (mtilde_{alpha2,alpha1,xi}(A1,A2,A3), A4)_rho
    TV p_(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
          const PentParsT<Par>& pp) const {
        TV o1 = n_(m_(a1, a2, pp.alpha1), a3, a4, pp.rho, pp.alpha2, pp.eps1);
        TV o2 = pair_(mtilde_(a1, a2, a3, pp.alpha2, pp.alpha1, pp.xi), a4, pp.rho);
        return add(pprime_(a1, a2, a3, a4, pp), add(o1, o2));
    }

    // ---- Q-variation patterns ---------------------------------------------

    /// Q(op) + sum_i (+-1)(-1)^{|x_1|+..+|x_{i-1}|} op(..., Qx_i, ...).
    /// plus = true gives the all-plus pattern (m, n); false the minus pattern
    /// (mtilde, p', p).
    TV qpattern(const std::function<TV(const std::vector<TV>&)>& op, std::vector<TV> args,
                bool plus) const {
        TV total = q(op(args));
        int prefix = 0;
        for (size_t i = 0; i < args.size(); ++i) {
            std::vector<TV> mod = args;
            mod[i] = q(args[i]);
            Rat s = sgn(prefix);
            if (!plus) s = -s;
            total = add(total, scale(s, op(mod)));
            prefix += args[i].par;
        }
        return total;
    }

    // ---- identity residuals (zero when the identity holds) -----------------

    /// Prop 3.1: Q(X,Y)_rho - (QX,Y)_rho - (-1)^{|X|}(X,QY)_rho
    TV prop31(const TV& x, const TV& y, const Par& rho) const {
        TV lhs = q(pair_(x, y, rho));
        TV r1 = pair_(q(x), y, rho);
        TV r2 = scale(sgn(x.par), pair_(x, q(y), rho));
        return sub(lhs, add(r1, r2));
    }

    /// Lemma 3.1: (X,Y)_eps - (-1)^{|X||Y|}(Y,X)_{-eps} - [Qm + m(QX,Y) + (-1)^{|X|}m(X,QY)]
    TV lemma31(const TV& x, const TV& y, const Par& eps) const {
        TV lhs = sub(pair_(x, y, eps), scale(sgn(x.par * y.par), pair_(y, x, Par(-eps))));
        auto mop = [&](const std::vector<TV>& a) { return m_(a[0], a[1], eps); };
        TV rhs = qpattern(mop, {x, y}, true);
        return sub(lhs, rhs);
    }

    /// Prop 3.2: ((X,Y)_{a1},Z)_rho - (X,(Y,Z)_{a2})_rho - [Qn + n(QX,..) + ...]
    TV prop32(const TV& x, const TV& y, const TV& z, const Par& rho, const Par& a1,
              const Par& a2) const {
        TV lhs = sub(pair_(pair_(x, y, a1), z, rho), pair_(x, pair_(y, z, a2), rho));
        auto nop = [&](const std::vector<TV>& a) { return n_(a[0], a[1], a[2], rho, a1, a2); };
        TV rhs = qpattern(nop, {x, y, z}, true);
        return sub(lhs, rhs);
    }

    /// Lemma 3.2:
    ///   n'_{rho,e1,e2}(X,Y,Z) + (-1)^{|X||Y|+|X||Z|+|Y||Z|} n'_{-rho,-e2,-e1}(Z,Y,X)
    ///   - (-1)^{|X||Y|} m_rho((Y,X)_{-e1}, Z) + m_rho(X,(Y,Z)_{e2})
    ///   - [Q mt - mt(QX,..) - (-1)^{|X|} mt(X,QY,..) - (-1)^{|X|+|Y|} mt(..,QZ)]
    TV lemma32(const TV& x, const TV& y, const TV& z, const Par& rho, const Par& e1,
               const Par& e2) const {
        TV lhs = add(nprime_(x, y, z, rho, e1, e2),
                     scale(sgn(x.par * y.par + x.par * z.par + y.par * z.par),
                           nprime_(z, y, x, Par(-rho), Par(-e2), Par(-e1))));
        TV r1 = scale(sgn(x.par * y.par), m_(pair_(y, x, Par(-e1)), z, rho));
        TV r2 = m_(x, pair_(y, z, e2), rho);
        auto mt = [&](const std::vector<TV>& a) { return mtilde_(a[0], a[1], a[2], rho, e1, e2); };
        TV rhs = add(sub(r1, r2), qpattern(mt, {x, y, z}, false));
        return sub(lhs, rhs);
    }

    /// The six displayed boundary terms of the pentagon Stokes computation,
    /// with their displayed signs: T1 - T2 + T3 - T4 + T5 + T6.
    TV pentagon_boundary_terms(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
                               const PentParsT<Par>& pp, std::vector<TV>* individual = nullptr) const {
        const Par& rho = pp.rho;
        auto keep = [&](TV t) {
            if (individual) individual->push_back(t);
            return t;
        };
        // T1 = (-1)^{|A1|+|A2|} A1(rho+t) A2(eps2+t) Int_{e1}^{e2-xi}[b,A3](y+t)dy A4(t)
        TV t1 = keep(scale(sgn(a1.par + a2.par),
                           mul(at(a1, rho),
                               mul(at(a2, pp.eps2),
                                   mul(intov(bdec(a3), pp.eps1, Par(pp.eps2 - pp.xi)), a4)))));
        // T2 = (-1)^{|A1|+|A2|} A1(rho+t) A2(rho-alpha1+t) Int_{e1}^{rho-alpha2}[b,A3](y+t)dy A4(t)
        TV t2 = keep(scale(sgn(a1.par + a2.par),
                           mul(at(a1, rho),
                               mul(at(a2, Par(rho - pp.alpha1)),
                                   mul(intov(bdec(a3), pp.eps1, Par(rho - pp.alpha2)), a4)))));
        // T3 = (-1)^{|A1|} A1(rho+t) Int_{rho-alpha2+xi}^{rho-alpha1}[b,A2](x+t)dx A3(rho-alpha2+t) A4(t)
        TV t3 = keep(scale(sgn(a1.par),
                           mul(at(a1, rho),
                               mul(intov(bdec(a2), Par(rho - pp.alpha2 + pp.xi), Par(rho - pp.alpha1)),
                                   mul(at(a3, Par(rho - pp.alpha2)), a4)))));
        // T4 = (-1)^{|A1|} A1(rho+t) Int_{eps2}^{rho-alpha1}[b,A2](x+t)dx A3(eps1+t) A4(t)
        TV t4 = keep(scale(sgn(a1.par),
                           mul(at(a1, rho),
                               mul(intov(bdec(a2), pp.eps2, Par(rho - pp.alpha1)),
                                   mul(at(a3, pp.eps1), a4)))));
        // T5 = (-1)^{|A1|+|A2|} A1(rho+t) Int_{eps2-xi}^{rho-alpha2} A2(y+xi+t)[b,A3](y+t)dy A4(t)
        TV t5 = keep(scale(sgn(a1.par + a2.par),
                           mul(at(a1, rho),
                               mul(intov(mul(at(a2, pp.xi), bdec(a3)), Par(pp.eps2 - pp.xi),
                                         Par(rho - pp.alpha2)),
                                   a4))));
        // T6 = (-1)^{|A1|} A1(rho+t) Int_{eps2}^{rho-alpha2+xi}[b,A2](x+t)A3(x-xi+t)dx A4(t)
        TV t6 = keep(scale(sgn(a1.par),
                           mul(at(a1, rho),
                               mul(intov(mul(bdec(a2), at(a3, Par(-pp.xi))), pp.eps2,
                                         Par(rho - pp.alpha2 + pp.xi)),
                                   a4))));
        TV total = sub(t1, t2);
        total = add(total, t3);
        total = sub(total, t4);
        total = add(total, t5);
        total = add(total, t6);
        return total;
    }

    /// Pentagon Stokes identity: [minus-pattern of p'] - (T1 - T2 + T3 - T4 + T5 + T6)
    TV pentagon_stokes(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
                       const PentParsT<Par>& pp) const {
        auto pop = [&](const std::vector<TV>& a) { return pprime_(a[0], a[1], a[2], a[3], pp); };
        TV lhs = qpattern(pop, {a1, a2, a3, a4}, false);
        return sub(lhs, pentagon_boundary_terms(a1, a2, a3, a4, pp));
    }

    /// Prop 3.3 right-hand side: the five n-compositions.
    TV prop33_rhs(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
                  const PentParsT<Par>& pp) const {
        TV r1 = scale(sgn(a1.par),
                      pair_(a1, n_(a2, a3, a4, pp.eps2, pp.xi, pp.eps1), pp.rho));
        TV r2 = n_(a1, a2, pair_(a3, a4, pp.eps1), pp.rho, pp.alpha1, pp.eps2);
        TV r3 = n_(a1, pair_(a2, a3, pp.xi), a4, pp.rho, pp.alpha2, pp.eps2);
        TV r4 = n_(pair_(a1, a2, pp.alpha1), a3, a4, pp.rho, pp.alpha2, pp.eps1);
        TV r5 = pair_(n_(a1, a2, a3, pp.alpha2, pp.alpha1, pp.xi), a4, pp.rho);
        TV total = sub(r1, r2);
        total = add(total, r3);
        total = sub(total, r4);
        total = add(total, r5);
        return total;
    }

    /// Prop 3.3: [minus-pattern of p] - prop33_rhs
    TV prop33(const TV& a1, const TV& a2, const TV& a3, const TV& a4,
              const PentParsT<Par>& pp) const {
        auto pop = [&](const std::vector<TV>& a) { return p_(a[0], a[1], a[2], a[3], pp); };
        TV lhs = qpattern(pop, {a1, a2, a3, a4}, false);
        return sub(lhs, prop33_rhs(a1, a2, a3, a4, pp));
    }
};

} // namespace tva::weak
