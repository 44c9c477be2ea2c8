#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tva/polynomial.hpp"
#include "tva/rational.hpp"

using namespace tva;

TEST_CASE("rational parse and format") {
    CHECK(rat_parse("3/4").value() == Rat(3, 4));
    CHECK(rat_parse("-6/8").value() == Rat(-3, 4));
    CHECK(rat_parse("5").value() == Rat(5));
    CHECK(rat_str(Rat(-3, 4)) == "-3/4");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK(!rat_parse("1/0").has_value());
    CHECK(!rat_parse("a/2").has_value());
    CHECK(!rat_parse("").has_value());
    CHECK(!rat_parse("1.5").has_value());
}

TEST_CASE("rational canonical form") {
    Rat r = Rat(6) / Rat(-8);
    CHECK(rat_den(r) > 0);
    CHECK(rat_num(r) == -3);
    CHECK(rat_den(r) == 4);
}

TEST_CASE("polynomial arithmetic") {
    Poly x = Poly::var(0);
    Poly y = Poly::var(1);
    Poly p = x * x + Rat(2) * (x * y) + y * y;
    Poly q = (x + y) * (x + y);
    CHECK(p == q);
    CHECK(p.degree() == 2);
    CHECK((p - q).is_zero());
}

TEST_CASE("polynomial substitution and derivative") {
    Poly x = Poly::var(0);
    Poly y = Poly::var(1);
    Poly p = x * x * y;
    CHECK(p.derivative(0) == Rat(2) * (x * y));
    CHECK(p.derivative(1) == x * x);
    Poly s = p.subst(0, y + Poly(Rat(1)));
    Poly expect = (y + Poly(Rat(1))) * (y + Poly(Rat(1))) * y;
    CHECK(s == expect);
    CHECK(p.eval({Rat(2), Rat(3)}) == Rat(12));
}
