#include "aevt/problems.hpp"

#include "doctest.h"

using namespace aevt;

namespace {

LipschitzSpaceDesc unit_space() { return {BoxSpace::interval(0, 1), 1, 1, 1}; }

Rational inv(std::uint64_t k) { return Rational(1) / Rational(k); }

} // namespace

TEST_SUITE("evt") {
    TEST_CASE("infima of the basic functionals") {
        auto s = unit_space();
        for (std::uint64_t k : {1, 2, 4}) {
            auto pe = approx_inf(make_functional("point_eval", s, point({Rational(1, 2)})), s, k, kDefaultPointCap);
            CHECK(abs(pe.value + 1) <= inv(k));
            auto in = approx_inf(make_functional("integral", s), s, k, kDefaultPointCap);
            CHECK(abs(in.value + 1) <= inv(k));
        }
        auto l2 = approx_inf(make_functional("l2_to_identity", s), s, 1, kDefaultPointCap);
        CHECK(l2.value >= 0);
        CHECK(l2.value <= 1);
    }

    TEST_CASE("suprema") {
        auto s = unit_space();
        for (std::uint64_t k : {1, 2, 4}) {
            auto pe = approx_sup(make_functional("point_eval", s, point({0})), s, k, kDefaultPointCap);
            CHECK(abs(pe.value - 1) <= inv(k));
            auto in = approx_sup(make_functional("integral", s), s, k, kDefaultPointCap);
            CHECK(abs(in.value - 1) <= inv(k));
        }
        auto sq = approx_sup(make_functional("neg_square_integral", s), s, 2, kDefaultPointCap);
        CHECK(abs(sq.value) <= Rational(1, 2));
        auto inf = approx_inf(negate(make_functional("integral", s)), s, 2, kDefaultPointCap);
        auto sup = approx_sup(make_functional("integral", s), s, 2, kDefaultPointCap);
        CHECK(sup.value == -inf.value);
    }

    TEST_CASE("certificate against a finer net, inexact probes") {
        auto s = unit_space();
        // J[f] = int f + 1/3 presented through approximations that are off by 1/(2n)
        Functional J;
        J.eval = [](const PWLFunction& f) {
            Rational v = integral_1d(f, BoxSpace::interval(0, 1)) + Rational(1, 3);
            return CReal::from_fn([v](std::uint64_t n) { return v + Rational(1) / Rational(2 * n); });
        };
        J.modulus = Modulus::identity();
        for (std::uint64_t k : {1, 2}) {
            auto r = approx_inf(J, s, k, kDefaultPointCap);
            CHECK(r.net_precision == Rational(3) / Rational(4 * k));
            FunctionNet fine = enumerate_net(s, 2 * k, kDefaultPointCap);
            for (std::size_t i = 0; i < fine.size(); ++i) {
                Rational Jf = integral_1d(fine.member(i), s.domain) + Rational(1, 3);
                REQUIRE(r.value - inv(k) <= Jf);
            }
        }
    }

    TEST_CASE("deterministic reduction across worker counts") {
        auto s = unit_space();
        auto J = make_functional("point_eval", s, point({Rational(1, 2)}));
        auto a = approx_inf(J, s, 2, kDefaultPointCap, 1);
        auto b = approx_inf(J, s, 2, kDefaultPointCap, 3);
        CHECK(a.value == b.value);
        CHECK(a.member_index == b.member_index);
        CHECK(a.net_size == b.net_size);
        // ties resolve to the first member in enumeration order
        auto c = approx_inf(make_functional("point_eval", s, point({0})), s, 2, kDefaultPointCap, 2);
        FunctionNet net = enumerate_net(s, c.net_precision, kDefaultPointCap);
        for (std::size_t i = 0; i < c.member_index; ++i) CHECK(net.member(i)(point({0})) > c.value);
    }

    TEST_CASE("cap is enforced before enumeration") {
        CHECK_THROWS_AS(approx_inf(make_functional("integral", unit_space()), unit_space(), 8, 1000), CapExceeded);
    }

    TEST_CASE("approx_sup_over_set") {
        BoxSpace U = BoxSpace::interval(0, 1);
        for (std::uint64_t k : {1, 3, 10}) {
            CHECK(approx_sup_over_set([](const Point&) { return Rational(2, 7); }, U, Modulus::unbounded(1), k) ==
                  Rational(2, 7));
            Rational r = approx_sup_over_set(
                [](const Point& u) { return -(u(0) - Rational(1, 3)) * (u(0) - Rational(1, 3)); }, U,
                Modulus::lipschitz(2), k);
            CHECK(abs(r) <= inv(k));
            CHECK(abs(approx_sup_over_set([](const Point& u) { return u(0); }, BoxSpace::interval(-1, 1),
                                          Modulus::identity(), k) -
                      1) <= inv(k));
        }
    }

    TEST_CASE("sup_modulus") {
        Modulus h = sup_modulus(Modulus::identity());
        CHECK(h(Rational(3, 5)) == Rational(1, 5));
        Modulus h4 = sup_modulus(Modulus::lipschitz(4));
        CHECK(h4(Rational(1, 2)) == Rational(1, 24));
        // h(x) = sup_u g(x,u) with g(x,u) = -(x-u)^2 + u/2 on [0,1]^2, dense-grid sup as oracle
        auto g = [](const Rational& x, const Rational& u) { return -(x - u) * (x - u) + u / 2; };
        auto h_oracle = [&](const Rational& x) {
            Rational best;
            for (int j = 0; j <= 400; ++j) {
                Rational v = g(x, Rational(j, 400));
                if (j == 0 || v > best) best = v;
            }
            return best;
        };
        Modulus omega = Modulus::lipschitz(Rational(9, 2));
        for (std::uint64_t k : {2, 5, 10}) {
            Rational d = sup_modulus(omega)(inv(k));
            for (int i = 0; i <= 10; ++i) {
                Rational x = Rational(i, 10), y = min(Rational(1), x + d);
                CHECK(abs(h_oracle(x) - h_oracle(y)) <= Rational(3) / Rational(k));
            }
        }
    }
}
