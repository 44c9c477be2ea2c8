#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tva/identities.hpp"
#include "tva/symcalc.hpp"
#include "tva/verify.hpp"

using namespace tva;
using namespace tva::weak;

namespace {

using O = Ops<Calc>;
using TV = O::TV;

struct Rig {
    Calc calc;
    O ops;
    Rig() : calc(Regime::standard()), ops{calc} {}
    TV mk(const std::string& name, int parity) {
        int s = calc.add_field(name, parity);
        return TV{calc.field(s), parity};
    }
};

} // namespace

TEST_CASE("regime witnesses satisfy the scale ordering") {
    CHECK(Regime::standard().satisfies_scales());
    CHECK(Regime::alternative(1).satisfies_scales());
    CHECK(Regime::alternative(2).satisfies_scales());
}

TEST_CASE("pair constructor and normalize sorting") {
    Rig r;
    TV A = r.mk("A", 1), B = r.mk("B", 1);
    // B(t) A(t+eps2) must normalize to (-1)^{|A||B|} A(t+eps2) B(t)
    Combination swapped = r.calc.mul(B.v, r.calc.at(A.v, Affine::param(P_EPS2)));
    Combination sorted = r.calc.normalize(swapped);
    REQUIRE(sorted.terms.size() == 1);
    CHECK(sorted.terms[0].w.coeff == Rat(-1));
    CHECK(sorted.terms[0].w.fs[0].sym == 0); // A first (higher position)
    // normalize is idempotent
    Combination again = r.calc.normalize(sorted);
    CHECK(again.str(r.calc.fields) == sorted.str(r.calc.fields));
}

TEST_CASE("coincident positions are an error") {
    Rig r;
    TV A = r.mk("A", 0), B = r.mk("B", 0);
    Combination c = r.calc.mul(A.v, B.v); // both at position t
    CHECK_THROWS_AS(r.calc.normalize(c), TvaError);
}

TEST_CASE("degenerate interval gives the zero combination") {
    Rig r;
    TV A = r.mk("A", 0), B = r.mk("B", 0);
    // empty interval with syntactically equal bounds
    Combination z = r.calc.intov(r.calc.mul(A.v, r.calc.at(B.v, Affine::param(P_XI))),
                                 Affine::param(P_EPS1), Affine::param(P_EPS1));
    CHECK(z.terms.empty());
    // inverted bounds flip the sign
    Combination fwd =
        r.calc.intov(r.calc.at(A.v, Affine::param(P_EPS2)), Affine(Rat(0)), Affine::param(P_EPS1));
    Combination bwd =
        r.calc.intov(r.calc.at(A.v, Affine::param(P_EPS2)), Affine::param(P_EPS1), Affine(Rat(0)));
    Combination sum = r.calc.add(fwd, bwd);
    CHECK(r.calc.normalize(sum).empty());
}

TEST_CASE("length and position metadata of the constructors") {
    Rig r;
    TV A = r.mk("A", 0), B = r.mk("B", 1);
    Combination pair = r.ops.pair_(A, B, Affine::param(P_EPS2)).v;
    REQUIRE(pair.terms.size() == 1);
    const auto& fs = pair.terms[0].w.fs;
    Affine len = fs[0].pos - fs[1].pos;
    CHECK(len == Affine::param(P_EPS2));
    CHECK(fs[1].pos == Affine::param(P_T));
    // m_eps fills [t-eps, t+eps]: min position over the domain is t-eps
    Combination m = r.ops.m_(A, B, Affine::param(P_EPS2)).v;
    REQUIRE(!m.terms.empty());
    Rat min_pos;
    bool first = true;
    const Witness& w = r.calc.regime.wit;
    for (const auto& t : m.terms) {
        auto P = t.dom.instantiate(w);
        for (const auto& v : P.vertices())
            for (const auto& f : t.w.fs) {
                Rat val = f.pos.eval_const(w);
                for (const auto& [idx, k] : f.pos.vars) val += k * v[static_cast<size_t>(idx)];
                if (first || val < min_pos) {
                    min_pos = val;
                    first = false;
                }
            }
    }
    CHECK(min_pos == w[P_T] - w[P_EPS2]);
}

TEST_CASE("constructor words are position-ordered at the witness") {
    Rig r;
    TV A = r.mk("A", 1), B = r.mk("B", 0), C = r.mk("C", 1);
    auto check_sorted = [&](const Combination& c) {
        Combination n = r.calc.normalize(c);
        const Witness& w = r.calc.regime.wit;
        for (const auto& t : n.terms) {
            auto P = t.dom.instantiate(w);
            auto vs = P.vertices();
            for (size_t i = 0; i + 1 < t.w.fs.size(); ++i) {
                Affine diff = t.w.fs[i].pos - t.w.fs[i + 1].pos;
                if (t.dom.nvars == 0) {
                    CHECK(diff.eval(w) > 0);
                } else {
                    for (const auto& v : vs) {
                        Rat val = diff.eval_const(w);
                        for (const auto& [idx, k] : diff.vars) val += k * v[static_cast<size_t>(idx)];
                        CHECK(val >= 0);
                    }
                }
            }
        }
    };
    check_sorted(r.ops.pair_(A, B, Affine::param(P_EPS2)).v);
    check_sorted(r.ops.m_(A, B, Affine::param(P_EPS2)).v);
    check_sorted(
        r.ops.nprime_(A, B, C, Affine::param(P_RHO), Affine::param(P_ALPHA1), Affine::param(P_ALPHA2)).v);
    check_sorted(
        r.ops.mtilde_(A, B, C, Affine::param(P_RHO), Affine::param(P_EPS1), Affine::param(P_EPS2)).v);
}

TEST_CASE("Q acts as a derivation on the pair") {
    Rig r;
    TV A = r.mk("A", 1), B = r.mk("B", 0);
    Combination lhs = r.calc.q(r.ops.pair_(A, B, Affine::param(P_EPS2)).v);
    Combination rhs = r.ops.pair_(r.ops.q(A), B, Affine::param(P_EPS2)).v;
    Combination rhs2 = r.ops.pair_(A, r.ops.q(B), Affine::param(P_EPS2)).v;
    rhs += r.calc.scale(Rat(-1), rhs2); // (-1)^{|A|} = -1
    Combination diff = r.calc.add(lhs, r.calc.scale(Rat(-1), rhs));
    CHECK(r.calc.normalize(diff).empty());
}

TEST_CASE("Newton-Leibniz conversion of an exact integrand") {
    Rig r;
    TV A = r.mk("A", 0), B = r.mk("B", 1);
    Combination qm = r.calc.q(r.ops.m_(A, B, Affine::param(P_EPS2)).v);
    Combination bulk1 = r.ops.m_(r.ops.q(A), B, Affine::param(P_EPS2)).v;
    Combination bulk2 = r.ops.m_(A, r.ops.q(B), Affine::param(P_EPS2)).v;
    Combination total = qm;
    total += bulk1;
    total += bulk2; // (-1)^{|A|} = +1
    Combination expect = r.ops.pair_(A, B, Affine::param(P_EPS2)).v;
    Combination swapped = r.ops.pair_(B, A, -Affine::param(P_EPS2)).v; // sign (-1)^{|A||B|} = +1
    expect += r.calc.scale(Rat(-1), swapped);
    Combination diff = r.calc.add(total, r.calc.scale(Rat(-1), expect));
    CHECK(r.calc.normalize(diff).empty());
}

TEST_CASE("Q squares to zero on every constructor") {
    Rig r;
    TV A = r.mk("A", 1), B = r.mk("B", 0), C = r.mk("C", 1), D = r.mk("D", 0);
    PentParsT<Affine> pp;
    pp.xi = Affine::param(P_XI);
    pp.alpha1 = Affine::param(P_ALPHA1);
    pp.alpha2 = Affine::param(P_ALPHA2);
    pp.eps1 = Affine::param(P_EPS1);
    pp.eps2 = Affine::param(P_EPS2);
    pp.rho = Affine::param(P_RHO);
    std::vector<Combination> cases = {
        r.ops.pair_(A, B, Affine::param(P_EPS2)).v,
        r.ops.m_(A, B, Affine::param(P_ALPHA1)).v,
        r.ops.nprime_(A, B, C, Affine::param(P_RHO), Affine::param(P_ALPHA1), Affine::param(P_ALPHA2)).v,
        r.ops.n_(A, B, C, Affine::param(P_RHO), Affine::param(P_ALPHA1), Affine::param(P_ALPHA2)).v,
        r.ops.mtilde_(A, B, C, Affine::param(P_RHO), Affine::param(P_EPS1), Affine::param(P_EPS2)).v,
        r.ops.pprime_(A, B, C, D, pp).v,
        r.ops.p_(A, B, C, D, pp).v,
    };
    for (const auto& c : cases) {
        Combination qq = r.calc.q(r.calc.q(c));
        Combination n = r.calc.normalize(qq);
        INFO(r.calc.show(n));
        CHECK(n.empty());
    }
}

TEST_CASE("normalize(q(c)) is stable under pre-normalization") {
    Rig r;
    TV A = r.mk("A", 1), B = r.mk("B", 1), C = r.mk("C", 0);
    Combination c =
        r.ops.nprime_(A, B, C, Affine::param(P_RHO), Affine::param(P_ALPHA1), Affine::param(P_ALPHA2)).v;
    Combination q1 = r.calc.normalize(r.calc.q(c));
    Combination q2 = r.calc.normalize(r.calc.q(r.calc.normalize(c)));
    CHECK(q1.str(r.calc.fields) == q2.str(r.calc.fields));
}

TEST_CASE("verify the displayed identities") {
    Regime reg = Regime::standard();
    for (const auto& name : {"prop3.1", "lemma3.1", "prop3.2", "lemma3.2"}) {
        auto res = verify_identity(name, reg);
        INFO(res.identity << "\n" << res.detail << res.residual);
        CHECK(res.pass);
    }
}

TEST_CASE("pentagon Stokes matches the six displayed terms") {
    auto res = verify_identity("pentagon-stokes", Regime::standard());
    INFO(res.detail << res.residual);
    CHECK(res.pass);
}

TEST_CASE("pentagon relation and its scripted derivation") {
    auto res = verify_identity("prop3.3", Regime::standard());
    INFO(res.detail << res.residual);
    CHECK(res.pass);
    auto der = verify_identity("prop3.3-derivation", Regime::standard());
    INFO(der.detail << der.residual);
    CHECK(der.pass);
}

TEST_CASE("verification is witness-independent") {
    for (int w = 0; w <= 2; ++w) {
        Regime reg = w == 0 ? Regime::standard() : Regime::alternative(w);
        for (const auto& name : {"prop3.1", "lemma3.1", "prop3.2", "lemma3.2"}) {
            auto res = verify_identity(name, reg);
            INFO("witness " << w << " " << name << "\n" << res.detail << res.residual);
            CHECK(res.pass);
        }
    }
}

TEST_CASE("unknown identity errors") {
    CHECK_THROWS_AS(verify_identity("prop9.9", Regime::standard()), TvaError);
}

TEST_CASE("boundary expansion reports") {
    auto r3 = boundary_expand(3, Regime::standard());
    INFO(r3.summary());
    CHECK(r3.well_formed);
    CHECK(r3.facets.size() == 2);
    for (const auto& f : r3.facets) CHECK(f.matched);

    auto r4 = boundary_expand(4, Regime::standard());
    INFO(r4.summary());
    CHECK(r4.well_formed);
    CHECK(r4.facets.size() == 5);
    int total_terms = 0;
    for (const auto& f : r4.facets) {
        CHECK(f.matched);
        total_terms += f.term_count;
    }
    CHECK(total_terms == 6); // the diagonal facet carries two terms

    auto r5 = boundary_expand(5, Regime::standard());
    INFO(r5.summary());
    CHECK(r5.well_formed);
    CHECK(r5.facets.size() == 9);
    CHECK_THROWS_AS(boundary_expand(7, Regime::standard()), TvaError);
}
