#include "aevt/elementary.hpp"
#include "aevt/errors.hpp"
#include "aevt/problems.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace aevt;

namespace {

PWLFunction constant_policy(const BoxSpace& X, const Rational& c, const Rational& bound = 1) {
    return PWLFunction(std::make_shared<const PointList>(PointList{X.center}), {c}, 1, bound);
}

// u(x) = -g x sampled on a grid of X
PWLFunction gain_policy(const BoxSpace& X, const Rational& g, const Rational& lip, const Rational& bound) {
    auto grid = std::make_shared<const PointList>(regular_partition(X, 4).points);
    std::vector<Rational> v;
    for (const auto& x : *grid) v.push_back(min(bound, max(-bound, -g * x(0))));
    return PWLFunction(grid, v, lip, bound);
}

LinearQuadraticOC decay() {
    LinearQuadraticOC d;
    d.a = -1;
    d.x0 = 1;
    d.X = BoxSpace::interval(-1, 1);
    d.U = BoxSpace::interval(-1, 1);
    return d;
}

} // namespace

TEST_SUITE("optctrl") {
    TEST_CASE("zero dynamics give a constant trajectory") {
        LinearQuadraticOC d;
        d.x0 = Rational(1, 3);
        d.X = BoxSpace::interval(-1, 1);
        d.U = BoxSpace::interval(-1, 1);
        OCProblem p = make_oc_problem(d);
        Trajectory tr = integrate(p, constant_policy(p.X, 0), 10);
        CHECK(tr.error_bound == 0);
        for (const auto& x : tr.states) CHECK(x(0) == Rational(1, 3));
        CHECK(tr.times.back() == 1);
    }

    TEST_CASE("decay endpoint is within the error bound") {
        OCProblem p = make_oc_problem(decay());
        for (std::uint64_t steps : {8, 64, 512}) {
            Trajectory tr = integrate(p, constant_policy(p.X, 0), steps);
            Enclosure e = exp_enclosure(Rational(-1), 100);
            CHECK(abs(tr.states.back()(0) - e.lo) <= tr.error_bound);
            CHECK(abs(tr.states.back()(0) - e.hi) <= tr.error_bound);
        }
        double e1 = integrate(p, constant_policy(p.X, 0), 256).error_bound.to_double();
        double e2 = integrate(p, constant_policy(p.X, 0), 512).error_bound.to_double();
        CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.02));
    }

    TEST_CASE("state escape reports the step") {
        LinearQuadraticOC d = decay();
        d.a = 3;
        d.x0 = Rational(1, 2);
        OCProblem p = make_oc_problem(d);
        try {
            integrate(p, constant_policy(p.X, 0), 16);
            FAIL("expected StateEscape");
        } catch (const StateEscape& e) {
            CHECK(e.step > 0);
            CHECK(e.step <= 16);
        }
    }

    TEST_CASE("cost values") {
        LinearQuadraticOC z;
        z.s = 1;
        z.X = BoxSpace::interval(-1, 1);
        z.U = BoxSpace::interval(-1, 1);
        OCProblem p0 = make_oc_problem(z);
        CHECK(cost(p0, constant_policy(p0.X, 0))(5) == 0);

        LinearQuadraticOC one = z;
        one.s = 0;
        one.c = 1;
        one.t1 = 2;
        OCProblem p1 = make_oc_problem(one);
        for (std::uint64_t n : {1, 4, 20}) CHECK(cost(p1, constant_policy(p1.X, 0))(n) == 2);

        LinearQuadraticOC dq = decay();
        dq.qx = 1;
        OCProblem p2 = make_oc_problem(dq);
        CReal J = cost(p2, constant_policy(p2.X, 0));
        const double oracle = (1 - std::exp(-2.0)) / 2;
        for (std::uint64_t n : {1, 2, 4, 8, 16, 32}) CHECK(std::abs(J(n).to_double() - oracle) <= 1.0 / n);
        for (std::uint64_t n : {1, 3, 8})
            for (std::uint64_t m : {2, 5, 16})
                CHECK(abs(J(n) - J(m)) <= Rational(1) / Rational(n) + Rational(1) / Rational(m));
    }

    TEST_CASE("functional modulus") {
        LinearQuadraticOC d;
        d.a = 1;
        d.qx = Rational(1, 2);
        d.s = Rational(1, 2);
        d.X = BoxSpace::interval(-1, 1);
        d.U = BoxSpace::interval(-1, 1);
        OCProblem p = make_oc_problem(d);
        // L_f T = 1 and both moduli are the identity, so alpha(eps) = eps / (2 (1 + e))
        Modulus a = functional_modulus(p, 1);
        const double expect = 0.25 / (2 * (1 + std::exp(1.0)));
        CHECK(a(Rational(1, 4)).to_double() <= expect);
        CHECK(a(Rational(1, 4)).to_double() == doctest::Approx(expect).epsilon(1e-12));

        LinearQuadraticOC flat = d;
        flat.a = 0;
        flat.qx = 0;
        OCProblem pf = make_oc_problem(flat);
        // J does not depend on u
        CHECK(functional_modulus(pf, 1)(Rational(1, 3)) >= 1000);
    }

    TEST_CASE("sampled modulus validity") {
        LinearQuadraticOC d = decay();
        d.b = 1;
        d.qx = 1;
        d.ru = 1;
        d.X = BoxSpace::interval(-2, 2);
        OCProblem p = make_oc_problem(d);
        Modulus a = functional_modulus(p, 1);
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> c(-8, 8);
        for (std::uint64_t k : {1, 2}) {
            Rational eta = a(Rational(1) / Rational(k));
            for (int t = 0; t < 4; ++t) {
                Rational u = Rational(c(rng), 16);
                Rational Ju = cost(p, constant_policy(p.X, u))(32), Jv = cost(p, constant_policy(p.X, u + eta))(32);
                CHECK(abs(Ju - Jv) <= Rational(1) / Rational(k) + Rational(2, 32));
            }
        }
    }

    TEST_CASE("optimize_policy") {
        LinearQuadraticOC z;
        z.ru = 1;
        z.X = BoxSpace::interval(Rational(-1, 8), Rational(1, 8));
        z.U = BoxSpace::interval(-1, 1);
        OCProblem p = make_oc_problem(z);
        for (std::uint64_t k : {1, 2}) {
            auto r = optimize_policy(p, {p.X, 1, 1, 1}, k, kDefaultPointCap);
            CHECK(abs(r.value) <= Rational(1) / Rational(k));
        }

        // x' = u, L = x^2 + u^2 on [0, 1/4] from x0 = 1: inf over feedback policies is tanh(1/4) up to the static-gain gap
        LinearQuadraticOC lq;
        lq.b = 1;
        lq.qx = 1;
        lq.ru = 1;
        lq.t1 = Rational(1, 4);
        lq.x0 = 1;
        lq.X = BoxSpace::interval(Rational(1, 2), Rational(3, 2));
        lq.U = BoxSpace::interval(-1, 1);
        OCProblem q = make_oc_problem(lq);
        LipschitzSpaceDesc ps{q.X, 1, 1, 1};
        auto r = optimize_policy(q, ps, 1, kDefaultPointCap);
        CHECK(std::abs(r.value.to_double() - std::tanh(0.25)) <= 1.0);
        for (int g = 0; g <= 8; ++g) {
            PWLFunction u = gain_policy(q.X, Rational(g, 8), 1, 1);
            REQUIRE(u.compatible());
            CHECK(r.value - 1 <= cost(q, u)(64) + Rational(1, 64));
        }
    }
}
