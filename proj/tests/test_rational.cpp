#include "aevt/elementary.hpp"
#include "aevt/rational.hpp"

#include "doctest.h"

#include <cmath>

using namespace aevt;

TEST_SUITE("rational") {
    TEST_CASE("canonical form and parsing") {
        CHECK(Rational(6, -4) == Rational(-3, 2));
        CHECK(Rational(6, -4).den() == 2);
        CHECK(Rational::parse("0.125") == Rational(1, 8));
        CHECK(Rational::parse("010/03") == Rational(10, 3));
        CHECK(Rational::parse("0.0625e1") == Rational(5, 8));
        CHECK(Rational::parse("-1e-3") == Rational(-1, 1000));
        CHECK(Rational::parse("22/7") == Rational(22, 7));
        CHECK_THROWS(Rational::parse("1/0"));
        CHECK_THROWS(Rational::parse("abc"));
    }

    TEST_CASE("int64 overflow promotes to big values") {
        Rational big(std::int64_t{1} << 61);
        Rational sq = big * big;
        CHECK(sq.to_mpq() == mpq_class(mpz_class("5316911983139663491615228241121378304")));
        CHECK(sq / big == big);
        Rational tiny = Rational(1) / sq;
        CHECK(tiny * sq == Rational(1));
        CHECK((sq - sq).is_zero());
    }

    TEST_CASE("floor, ceil and dyadic rounding") {
        CHECK(Rational(-7, 2).floor() == -4);
        CHECK(Rational(-7, 2).ceil() == -3);
        CHECK(round_dyadic(Rational(1, 3), 4) == Rational(5, 16));
        CHECK(round_down(Rational(1, 3), 4) <= Rational(1, 3));
        CHECK(round_up(Rational(1, 3), 4) >= Rational(1, 3));
        CHECK(from_double(0.375) == Rational(3, 8));
    }

    TEST_CASE("exp enclosure brackets the double exponential") {
        for (double x : {-20.0, -3.5, -1.0, -1e-6, 0.0, 0.25, 1.0, 2.0, 7.75}) {
            Enclosure e = exp_enclosure(from_double(x), 80);
            CHECK(e.lo <= e.hi);
            CHECK(e.lo.to_double() <= std::exp(x) * (1 + 1e-15));
            CHECK(e.hi.to_double() >= std::exp(x) * (1 - 1e-15));
            CHECK((e.width() / e.hi).to_double() < 1e-20);
        }
        CHECK(exp_enclosure(Rational(0)).lo == Rational(1));
    }

    TEST_CASE("sqrt enclosure") {
        Enclosure s = sqrt_enclosure(Rational(2), 60);
        CHECK(s.lo * s.lo <= Rational(2));
        CHECK(s.hi * s.hi >= Rational(2));
        CHECK(s.width() <= pow(Rational(1, 2), 60));
        CHECK(sqrt_enclosure(Rational(9, 4)).lo == Rational(3, 2));
    }
}
