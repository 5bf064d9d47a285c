#include "aevt/adp.hpp"
#include "aevt/errors.hpp"
#include "aevt/problems.hpp"

#include "doctest.h"

#include <cmath>

using namespace aevt;
using namespace aevt::adp;

template <typename S>
using Table = aevt::adp::ValueTable<S>;

namespace {

template <typename S>
ADPProblem<S> zero_drift() {
    ADPProblem<S> p;
    p.f = [](const Vec<S>& x) { return Vec<S>(Vec<S>::Zero(x.size())); };
    p.g = [](const Vec<S>&) { return Mat<S>(Mat<S>::Identity(1, 1)); };
    p.q = [](const Vec<S>& x) { return x(0) * x(0); };
    p.R = Mat<S>::Identity(1, 1);
    p.X = BoxSpace::interval(-1, 1);
    p.U = BoxSpace::interval(Rational(-1, 2), Rational(1, 2));
    p.grid_k = 4;
    return p;
}

double fitted_quadratic(const Table<double>& V) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < V.values.size(); ++i) {
        double x = V.grid.point(i)(0);
        num += x * x * V.values[i];
        den += x * x * x * x;
    }
    return num / den;
}

Vec<double> vec1(double v) {
    Vec<double> x(1);
    x(0) = v;
    return x;
}

} // namespace

TEST_SUITE("adp") {
    TEST_CASE("grid interpolation") {
        auto g = TensorGrid<double>::from_partition(BoxSpace::interval(-1, 1), 2);
        CHECK(g.size() == 5);
        CHECK(g.point(0)(0) == -1);
        CHECK(g.point(4)(0) == 1);
        Table<double> V{g, {1, 0, 1, 2, 3}};
        CHECK(V(vec1(0.25)) == doctest::Approx(1.5));
        CHECK(V(vec1(-0.75)) == doctest::Approx(0.5));
        CHECK_FALSE(V.at(vec1(1.5)).has_value());
        CHECK_THROWS_AS(V(vec1(-2)), NotCovered);

        auto g2 = TensorGrid<Rational>::from_partition(BoxSpace::cube(2, 0, 1), 1);
        CHECK(g2.size() == 9);
        CHECK(g2.point(1)(0) == 0);
        CHECK(g2.point(1)(1) == Rational(1, 2));
        Table<Rational> W{g2, {}};
        for (std::size_t i = 0; i < 9; ++i) W.values.push_back(g2.point(i)(0) + 2 * g2.point(i)(1));
        CHECK(W(point({Rational(1, 3), Rational(3, 4)})) == Rational(1, 3) + Rational(3, 2));
    }

    TEST_CASE("zero drift converges to the stage cost") {
        auto pr = zero_drift<Rational>();
        auto run = vi_run<Rational>(pr, Rational(0), 10, 2);
        CHECK(run.iterations <= 2);
        CHECK(run.residual == 0);
        for (std::size_t i = 0; i < run.V.values.size(); ++i) {
            Rational x = run.V.grid.point(i)(0);
            CHECK(run.V.values[i] == x * x);
            CHECK(run.policy.controls[i](0) == 0);
        }
        auto pd = zero_drift<double>();
        auto rd = vi_run<double>(pd, 1e-12, 10, 2);
        CHECK(rd.iterations <= 2);
        CHECK(rd.min_increment >= 0);
    }

    TEST_CASE("iteration limit") {
        ScalarLQ d;
        d.grid_k = 20;
        auto p = make_adp_problem(d);
        try {
            vi_run<double>(p, 0.0, 2, 20);
            FAIL("expected MaxIterExceeded");
        } catch (const MaxIterExceeded& e) {
            CHECK(e.residual > 0);
        }
    }

    TEST_CASE("scalar LQ against the Riccati root") {
        ScalarLQ d;
        auto p = make_adp_problem(d);
        const double P = riccati_root(d);
        // P = q + a^2 P - a^2 b^2 P^2 / (R + b^2 P)
        CHECK(P == doctest::Approx(1 + 0.25 * P - 0.25 * P * P / (1 + P)).epsilon(1e-12));
        auto run = vi_run<double>(p, 1e-6, 200, 400);
        CHECK(std::abs(fitted_quadratic(run.V) - P) <= 1e-3);
        CHECK(run.min_increment >= -1e-12);
        for (double x : {-0.5, 0.25, 0.8}) {
            auto i = static_cast<std::size_t>(std::lround((x + 1) * 200));
            CHECK(run.policy.controls[i](0) == doctest::Approx(-0.5 * P / (1 + P) * x).epsilon(0.02));
        }

        auto pi = pi_run<double>(p, policy_from<double>(p.state_grid(), [](const Vec<double>& x) { return Vec<double>(x * -0.2); }),
                                 200, 1e-6, 400);
        CHECK(pi.iterations <= 10);
        CHECK(table_sup_dist(pi.V, run.V) <= 1e-5);
        for (std::size_t i = 1; i < pi.trace.size(); ++i) CHECK(pi.trace[i].change <= pi.trace[i - 1].change + 1e-12);

        const double ustar = -0.5 * P / (1 + P) * 0.5;
        auto h = heydari_iterate<double>(p, run.V, vec1(0.5), vec1(0), 200, 1e-3, 0.5);
        CHECK(h.ratio < 1);
        CHECK(std::abs(h.u(0) - ustar) <= 1e-3);
        CHECK_THROWS_AS(heydari_iterate<double>(p, run.V, vec1(0.5), vec1(0), 200, 1e-3, 1.0), NoContraction);
    }

    TEST_CASE("Heydari with no input gain") {
        auto p = zero_drift<double>();
        p.g = [](const Vec<double>&) { return Mat<double>(Mat<double>::Zero(1, 1)); };
        Table<double> V = Table<double>::zero(p.state_grid());
        for (std::size_t i = 0; i < V.values.size(); ++i) V.values[i] = V.grid.point(i)(0);
        auto h = heydari_iterate<double>(p, V, vec1(0.5), vec1(0.3), 10, 1e-3);
        CHECK(h.u(0) == 0);
        CHECK(h.iterations <= 2);
    }

    TEST_CASE("policy evaluation divergence") {
        auto p = zero_drift<double>();
        p.f = [](const Vec<double>& x) { return Vec<double>(x * 2.0); };
        auto u = policy_from<double>(p.state_grid(), [](const Vec<double>&) { return vec1(0); });
        CHECK_THROWS_AS(evaluate_policy<double>(p, u, 5, 1e9), DivergentRollout);
        auto ps = zero_drift<double>();
        CHECK_THROWS_AS(evaluate_policy<double>(ps, u, 5, 0.1), DivergentRollout);
        auto ev = evaluate_policy<double>(ps, u, 5, 10.0);
        CHECK(ev.tail == 0);
    }
}
