#include "tva/derham.hpp"

#include "tva/hpolytope.hpp"
#include "tva/identities.hpp"

#include <sstream>

namespace tva::models {

using geom::HPolytope;

std::string DrElem::str() const {
    std::string s = f.str({"x"});
    std::string gs = g.str({"x"});
    if (gs != "0") s += " + (" + gs + ")dx";
    return s;
}

DrElem dr_q(const DrElem& e) { return {Poly(), e.f.derivative(0)}; }
DrElem dr_beta(const DrElem& e) { return {e.g, Poly()}; }
DrElem dr_ell(const DrElem& e) { return {e.f.derivative(0), e.g.derivative(0)}; }
DrElem dr_translate(const DrElem& e, const Poly& p) {
    Poly repl = Poly::var(0) + p;
    return {e.f.subst(0, repl), e.g.subst(0, repl)};
}

int dr_parity(const DrElem& e) {
    if (e.g.is_zero()) return 0;
    if (e.f.is_zero()) return 1;
    throw TvaError("dr_parity: element is not parity-homogeneous");
}

std::vector<Correlator> correlators() {
    std::vector<Correlator> cs;
    cs.push_back({"coeff-sum", [](const DrElem& e) { return e.f.coeff_sum() + e.g.coeff_sum(); }});
    cs.push_back({"eval-point", [](const DrElem& e) {
                      return e.f.eval({Rat(2)}) + Rat(3) * e.g.eval({Rat(5, 7)});
                  }});
    cs.push_back({"degree-weighted", [](const DrElem& e) {
                      Rat s = 0;
                      for (const auto& [ex, c] : e.f.terms())
                          s += c * Rat(1 + (ex.empty() ? 0 : static_cast<int>(ex[0])));
                      for (const auto& [ex, c] : e.g.terms())
                          s += c * Rat(7 * (1 + (ex.empty() ? 0 : static_cast<int>(ex[0]))));
                      return s;
                  }});
    return cs;
}

DrCalc::Val DrCalc::lift(const DrElem& e) const {
    Val v;
    v.fns.push_back([e](const Poly& pos, int&) { return dr_translate(e, pos); });
    return v;
}

DrCalc::Val DrCalc::add(const Val& a, const Val& b) const {
    Val r = a;
    r.fns.insert(r.fns.end(), b.fns.begin(), b.fns.end());
    return r;
}

DrCalc::Val DrCalc::scale(const Rat& s, const Val& v) const {
    if (s == 0) return {};
    Val r;
    for (const auto& fn : v.fns)
        r.fns.push_back([s, fn](const Poly& pos, int& nv) { return s * fn(pos, nv); });
    return r;
}

DrCalc::Val DrCalc::at(const Val& v, const Par& d) const {
    Val r;
    for (const auto& fn : v.fns)
        r.fns.push_back([d, fn](const Poly& pos, int& nv) { return fn(pos + Poly(d), nv); });
    return r;
}

DrCalc::Val DrCalc::mul(const Val& a, const Val& b) const {
    Val r;
    for (const auto& fa : a.fns)
        for (const auto& fb : b.fns)
            r.fns.push_back(
                [fa, fb](const Poly& pos, int& nv) { return fa(pos, nv) * fb(pos, nv); });
    return r;
}

DrCalc::Val DrCalc::bdec(const Val& v) const {
    Val r;
    for (const auto& fn : v.fns)
        r.fns.push_back([fn](const Poly& pos, int& nv) { return dr_beta(fn(pos, nv)); });
    return r;
}

namespace {

DrElem integrate_elem(const DrElem& e, const HPolytope& D, const std::vector<int>& coords) {
    return {geom::integrate_poly(D, e.f, coords), geom::integrate_poly(D, e.g, coords)};
}

} // namespace

DrCalc::Val DrCalc::intov(const Val& v, const Par& lo, const Par& hi) const {
    if (lo == hi) return {};
    Rat sign = 1;
    Rat l = lo, h = hi;
    if (l > h) {
        std::swap(l, h);
        sign = -1;
    }
    Val r;
    for (const auto& fn : v.fns)
        r.fns.push_back([fn, l, h, sign](const Poly& pos, int& nv) {
            int u = nv++;
            DrElem inner = fn(pos + Poly::var(u), nv);
            HPolytope seg = HPolytope::box({{l, h}});
            return sign * integrate_elem(inner, seg, {u});
        });
    return r;
}

DrCalc::Val DrCalc::pent(const Val& x, const Val& y, const weak::PentParsT<Par>& pp) const {
    Val r;
    for (const auto& fx : x.fns)
        for (const auto& fy : y.fns)
            r.fns.push_back([fx, fy, pp](const Poly& pos, int& nv) {
                int vx = nv++;
                int vy = nv++;
                DrElem ex = fx(pos + Poly::var(vx), nv);
                DrElem ey = fy(pos + Poly::var(vy), nv);
                HPolytope P;
                P.dim = 2;
                P.add({Rat(1), Rat(0)}, pp.rho - pp.alpha1);
                P.add({Rat(-1), Rat(0)}, -pp.eps2);
                P.add({Rat(0), Rat(1)}, pp.rho - pp.alpha2);
                P.add({Rat(0), Rat(-1)}, -pp.eps1);
                P.add({Rat(-1), Rat(1)}, -pp.xi);
                if (!P.feasible()) return DrElem{};
                return integrate_elem(ex * ey, P, {vx, vy});
            });
    return r;
}

DrCalc::Val DrCalc::q(const Val& v) const {
    Val r;
    for (const auto& fn : v.fns)
        r.fns.push_back([fn](const Poly& pos, int& nv) { return dr_q(fn(pos, nv)); });
    return r;
}

DrElem DrCalc::value(const Val& v, const Rat& t) const {
    DrElem total;
    for (const auto& fn : v.fns) {
        int nv = 1;
        total = total + fn(Poly(t), nv);
    }
    return total;
}

ModelParams ModelParams::acceptance() {
    ModelParams mp;
    mp.t = 2;
    mp.rho = 1;
    mp.alpha2 = Rat(1, 10);
    mp.eps2 = Rat(1, 10);
    mp.alpha1 = Rat(1, 100);
    mp.eps1 = Rat(1, 100);
    mp.xi = Rat(1, 100);
    return mp;
}

std::array<Rat, weak::NPARAMS> ModelParams::as_witness() const {
    std::array<Rat, weak::NPARAMS> w{};
    w[weak::P_T] = t;
    w[weak::P_RHO] = rho;
    w[weak::P_ALPHA1] = alpha1;
    w[weak::P_ALPHA2] = alpha2;
    w[weak::P_EPS1] = eps1;
    w[weak::P_EPS2] = eps2;
    w[weak::P_XI] = xi;
    return w;
}

namespace {

using O = weak::Ops<DrCalc>;
using TV = O::TV;

struct ModelRun {
    DrCalc calc;
    O ops;

    explicit ModelRun(const ModelParams& mp) : ops{calc} { calc.params = mp.as_witness(); }

    TV arg(const DrElem& e) const { return TV{calc.lift(e), dr_parity(e)}; }
    weak::PentParsT<Rat> pent_pars() const {
        weak::PentParsT<Rat> pp;
        pp.xi = calc.par(weak::P_XI);
        pp.alpha1 = calc.par(weak::P_ALPHA1);
        pp.alpha2 = calc.par(weak::P_ALPHA2);
        pp.eps1 = calc.par(weak::P_EPS1);
        pp.eps2 = calc.par(weak::P_EPS2);
        pp.rho = calc.par(weak::P_RHO);
        return pp;
    }
};

void need_args(const std::string& name, const std::vector<DrElem>& in, size_t n) {
    if (in.size() != n)
        throw TvaError(name + ": expected " + std::to_string(n) + " inputs, got " +
                       std::to_string(in.size()));
}

} // namespace

std::vector<std::string> eval_op_names() { return {"pair", "m", "n'", "n", "mtilde", "p'", "p"}; }

DrElem eval_op(const std::string& opname, const std::vector<DrElem>& inputs, const ModelParams& mp) {
    ModelRun r(mp);
    O& o = r.ops;
    auto& c = r.calc;
    using weak::P_ALPHA1;
    using weak::P_ALPHA2;
    using weak::P_EPS1;
    using weak::P_EPS2;
    using weak::P_RHO;
    TV out;
    if (opname == "pair") {
        need_args(opname, inputs, 2);
        out = o.pair_(r.arg(inputs[0]), r.arg(inputs[1]), c.par(P_EPS2));
    } else if (opname == "m") {
        need_args(opname, inputs, 2);
        out = o.m_(r.arg(inputs[0]), r.arg(inputs[1]), c.par(P_EPS2));
    } else if (opname == "n'") {
        need_args(opname, inputs, 3);
        out = o.nprime_(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), c.par(P_RHO),
                        c.par(P_ALPHA1), c.par(P_ALPHA2));
    } else if (opname == "n") {
        need_args(opname, inputs, 3);
        out = o.n_(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), c.par(P_RHO),
                   c.par(P_ALPHA1), c.par(P_ALPHA2));
    } else if (opname == "mtilde") {
        need_args(opname, inputs, 3);
        out = o.mtilde_(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), c.par(P_RHO),
                        c.par(P_EPS1), c.par(P_EPS2));
    } else if (opname == "p'") {
        need_args(opname, inputs, 4);
        out = o.pprime_(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), r.arg(inputs[3]),
                        r.pent_pars());
    } else if (opname == "p") {
        need_args(opname, inputs, 4);
        out = o.p_(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), r.arg(inputs[3]),
                   r.pent_pars());
    } else {
        throw TvaError("eval_op: unknown operation '" + opname + "'");
    }
    return r.calc.value(out.v, mp.t);
}

std::vector<std::string> model_identity_names() {
    return {"prop3.1", "lemma3.1", "prop3.2", "lemma3.2", "prop3.3", "pentagon-stokes"};
}

DrElem model_residual(const std::string& identity, const std::vector<DrElem>& inputs,
                      const ModelParams& mp) {
    ModelRun r(mp);
    O& o = r.ops;
    auto& c = r.calc;
    using weak::P_ALPHA1;
    using weak::P_ALPHA2;
    using weak::P_EPS1;
    using weak::P_EPS2;
    using weak::P_RHO;
    TV resid;
    if (identity == "prop3.1") {
        need_args(identity, inputs, 2);
        resid = o.prop31(r.arg(inputs[0]), r.arg(inputs[1]), c.par(P_RHO));
    } else if (identity == "lemma3.1") {
        need_args(identity, inputs, 2);
        resid = o.lemma31(r.arg(inputs[0]), r.arg(inputs[1]), c.par(P_EPS2));
    } else if (identity == "prop3.2") {
        need_args(identity, inputs, 3);
        resid = o.prop32(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), c.par(P_RHO),
                         c.par(P_ALPHA1), c.par(P_ALPHA2));
    } else if (identity == "lemma3.2") {
        need_args(identity, inputs, 3);
        resid = o.lemma32(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), c.par(P_RHO),
                          c.par(P_EPS1), c.par(P_EPS2));
    } else if (identity == "prop3.3") {
        need_args(identity, inputs, 4);
        resid = o.prop33(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]), r.arg(inputs[3]),
                         r.pent_pars());
    } else if (identity == "pentagon-stokes") {
        need_args(identity, inputs, 4);
        resid = o.pentagon_stokes(r.arg(inputs[0]), r.arg(inputs[1]), r.arg(inputs[2]),
                                  r.arg(inputs[3]), r.pent_pars());
    } else {
        throw TvaError("model_residual: unknown identity '" + identity + "'");
    }
    return r.calc.value(resid.v, mp.t);
}

namespace {

/// Coefficient of z^k in a polynomial regarded as a series in variable zv.
Poly z_coefficient(const Poly& p, int zv, int k) {
    Poly out;
    if (k < 0) return out; // polynomials have no negative powers
    for (const auto& [e, c] : p.terms()) {
        unsigned zk = static_cast<size_t>(zv) < e.size() ? e[static_cast<size_t>(zv)] : 0;
        if (static_cast<int>(zk) != k) continue;
        Poly::Expo rest = e;
        if (static_cast<size_t>(zv) < rest.size()) rest[static_cast<size_t>(zv)] = 0;
        out.add_term(rest, c);
    }
    return out;
}

DrElem z_coeff(const DrElem& e, int zv, int k) {
    return {z_coefficient(e.f, zv, k), z_coefficient(e.g, zv, k)};
}

} // namespace

DrElem lz_model(const std::string& opname, const std::vector<DrElem>& inputs) {
    const int zv = 1, wv = 2;
    if (opname == "pair") {
        need_args(opname, inputs, 2);
        // (A,B) = Res_z z^{-1} A(z)B, the z^0 coefficient of A(z)B
        DrElem az = dr_translate(inputs[0], Poly::var(zv));
        return z_coeff(az * inputs[1], zv, 0);
    }
    if (opname == "m") {
        need_args(opname, inputs, 2);
        // Res_{z-w}(z-w)^i applied to the polynomial series A(z-w)B always
        // lands on a negative power, so every summand vanishes
        DrElem azw = dr_translate(inputs[0], Poly::var(zv));
        DrElem prod = azw * inputs[1];
        DrElem total;
        int dmax = static_cast<int>(std::max(prod.f.degree_in(zv), prod.g.degree_in(zv)));
        for (int i = 0; i <= dmax; ++i)
            total = total + Rat((i % 2) ? -1 : 1) / Rat(i + 1) * z_coeff(prod, zv, -i - 1);
        return total;
    }
    if (opname == "n") {
        need_args(opname, inputs, 3);
        DrElem first = dr_translate(dr_beta(inputs[0]), Poly::var(zv)) *
                       dr_translate(inputs[1], Poly::var(wv)) * inputs[2];
        DrElem second = dr_translate(dr_beta(inputs[1]), Poly::var(wv)) *
                        dr_translate(inputs[0], Poly::var(zv)) * inputs[2];
        int p1p2 = dr_parity(inputs[0]) * dr_parity(inputs[1]);
        DrElem total;
        int dmax = 2 + static_cast<int>(std::max({first.f.degree(), first.g.degree(),
                                                  second.f.degree(), second.g.degree()}));
        for (int i = 0; i <= dmax; ++i) {
            DrElem c1 = z_coeff(z_coeff(first, zv, -i - 1), wv, i);
            DrElem c2 = z_coeff(z_coeff(second, wv, -i - 1), zv, i);
            total = total + Rat(1) / Rat(i + 1) * (c1 + Rat((p1p2 % 2) ? -1 : 1) * c2);
        }
        return total;
    }
    throw TvaError("lz_model: unknown operation '" + opname + "'");
}

DrElem random_element(uint64_t seed, int maxdeg, int parity) {
    uint64_t s = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<int>((s >> 33) % 7) - 3;
    };
    Poly p;
    for (int d = 0; d <= maxdeg; ++d) p += Rat(next()) * Poly::var(0, static_cast<unsigned>(d));
    if (p.is_zero()) p = Poly(Rat(1));
    if (parity == 0) return {p, Poly()};
    return {Poly(), p};
}

} // namespace tva::models
