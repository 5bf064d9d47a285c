#include "aevt/errors.hpp"
#include "aevt/mollify.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace aevt;

namespace {

Rational abs0(const Point& x) { return abs(x(0)); }

// integral of |t| phi(t) over integral of phi, phi(t) = exp(-1/(1 - t^2)^2), by composite Simpson
double abs_moment_oracle() {
    const int n = 200000;
    auto phi = [](double t) {
        double s = 1 - t * t;
        return s <= 0 ? 0.0 : std::exp(-1 / (s * s));
    };
    double num = 0, den = 0;
    for (int i = 0; i <= n; ++i) {
        double t = -1 + 2.0 * i / n;
        double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        num += w * std::abs(t) * phi(t);
        den += w * phi(t);
    }
    return num / den;
}

} // namespace

TEST_SUITE("mollify") {
    TEST_CASE("sigma") {
        CHECK(sigma(0) == 0);
        CHECK(sigma(-1) == 0);
        CHECK(sigma(Rational(1, 20)) == 0);
        CHECK(sigma(1).to_double() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(sigma(Rational(1, 2)).to_double() == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
    }

    TEST_CASE("kernel weights") {
        for (unsigned dim : {1u, 2u}) {
            MollifierKernel K = make_kernel(dim, 3, 21);
            Rational s(0);
            for (const auto& w : K.weights) {
                CHECK(w.sign() >= 0);
                s += w;
            }
            CHECK(s == 1);
            CHECK(K.nodes.size() == K.weights.size());
            for (std::size_t i = 0; i < K.nodes.size(); ++i) {
                std::size_t j = K.nodes.size() - 1 - i;
                CHECK(K.nodes[j] == Point(-K.nodes[i]));
                CHECK(K.weights[j] == K.weights[i]);
            }
            CHECK(K.quad_tol.sign() > 0);
        }
        CHECK_THROWS_AS(make_kernel(1, 1, 20), std::invalid_argument);
        CHECK(bump(point({1}), make_kernel(1, 1, 11)) == 0);
    }

    TEST_CASE("approximation and Lipschitz bounds") {
        BoxSpace D = BoxSpace::interval(-2, 2);
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> pick(-150, 150);
        for (std::uint64_t k : {2, 8, 16}) {
            Mollified fk = mollify(abs0, 1, 2, D, k, 41);
            for (int t = 0; t < 20; ++t) {
                Point x = point({Rational(pick(rng), 100)}), y = point({Rational(pick(rng), 100)});
                CHECK(abs(fk(x) - abs0(x)) <= Rational(1) / Rational(k));
                CHECK(abs(fk(x) - fk(y)) <= abs(x(0) - y(0)));
            }
        }
    }

    TEST_CASE("value at a kink against an independent quadrature") {
        const double m = abs_moment_oracle();
        for (std::uint64_t k : {4, 16}) {
            MollifiedValue v = mollify(abs0, 1, 2, BoxSpace::interval(-2, 2), k, 201).eval(point({0}));
            CHECK(std::abs(v.value.to_double() - m / k) <= v.error.to_double() + 1e-9);
            CHECK(v.value.to_double() == doctest::Approx(m / k).epsilon(1e-3));
        }
    }

    TEST_CASE("affine functions are reproduced") {
        auto lin = [](const Point& x) { return 3 * x(0) - x(1) / 2 + 1; };
        Mollified fk = mollify(lin, 3, 6, BoxSpace::cube(2, -1, 1), 4, 15);
        for (const auto& p : {point({0, 0}), point({Rational(1, 3), Rational(-1, 2)}), point({Rational(3, 4), 0})})
            CHECK(fk(p) == lin(p));
    }

    TEST_CASE("pwl input and domain inset") {
        auto grid = std::make_shared<const PointList>(PointList{point({-1}), point({0}), point({1})});
        PWLFunction f(grid, {1, 0, 1}, 1, 1);
        Mollified fk = mollify(f, BoxSpace::interval(-1, 1), 4, 31);
        CHECK(abs(fk(point({0})) - f(point({0}))) <= Rational(1, 4));
        CHECK_NOTHROW(fk(point({Rational(3, 4)})));
        CHECK_THROWS_AS(fk(point({Rational(4, 5)})), DomainInset);
        CHECK_THROWS_AS(mollify(f, BoxSpace::interval(-1, 1), 1, 31)(point({Rational(1, 8)})), DomainInset);
    }
}
