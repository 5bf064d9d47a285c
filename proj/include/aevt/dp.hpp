#pragma once

#include "aevt/evt.hpp"

#include <iosfwd>
#include <random>

namespace aevt {

// either a box searched through its modulus, or a finite action list maximized exactly
struct ControlSet {
    std::optional<BoxSpace> box;
    PointList actions;

    static ControlSet from_box(BoxSpace b) { return {std::move(b), {}}; }
    static ControlSet from_actions(PointList a) { return {std::nullopt, std::move(a)}; }
    bool finite() const { return !box; }
};

struct DPProblem {
    BoxSpace X;
    ControlSet U;
    std::function<Rational(const Point& x, const Point& u)> r;
    Modulus omega_r; // joint in (x, u)
    std::function<Point(const Point& x, const Point& u)> f;
    Modulus omega_f; // joint in (x, u)
    Rational gamma;
    Rational value_lip; // Lipschitz constant used to extend value tables off the grid
};

// value function on a grid, extended off the grid by the max/min extension with constant lip
struct ValueTable {
    std::shared_ptr<const PointList> grid;
    std::vector<Rational> values;
    Rational lip;
    Modulus modulus;

    Rational operator()(const Point& x) const { return mcshane_psi(*grid, values, lip, x); }
    std::size_t size() const { return values.size(); }
    static ValueTable constant(std::shared_ptr<const PointList> grid, const Rational& c, const Rational& lip);
};

Rational grid_sup_dist(const ValueTable& a, const ValueTable& b);

// T[V](x) = sup_u r(x,u) + gamma V(f(x,u)) at each grid point
ValueTable bellman_apply(const ValueTable& V, const DPProblem& p, std::uint64_t k);

// smallest n with gamma^n / (1 - gamma) * d <= eps
std::uint64_t min_iterations(const Rational& gamma, const Rational& d, const Rational& eps);

struct VIResult {
    ValueTable V;
    std::uint64_t n = 0;
    Rational d;     // grid sup of |T[V0] - V0|
    Rational slack; // per-step sup error, 0 for finite action sets
    Rational bound; // certified |V_n - V*| on the grid
};

VIResult value_iteration(const DPProblem& p, const ValueTable& V0, const Rational& eps, std::uint64_t k);

struct BlackwellDiagnostics {
    Rational max_monotone_violation;  // max over samples of sup (T[V] - T[W])^+ with V <= W
    Rational max_discount_residual;   // max |T[V + a] - T[V] - gamma a|
    Rational max_contraction_excess;  // max sup|T[V] - T[W]| - gamma sup|V - W|
    double max_contraction_ratio = 0; // max sup|T[V] - T[W]| / sup|V - W|
    std::size_t samples = 0;
};

BlackwellDiagnostics blackwell_check(const DPProblem& p, const std::shared_ptr<const PointList>& grid,
                                     std::size_t samples, std::uint64_t k, std::uint64_t seed = 1);

// maximizes J[u] = inf_x r(x,u(x)) + gamma V_n(f(x,u(x))) over a policy net; needs Lipschitz moduli for r and f
ExtremumResult relaxed_policy_opt(const DPProblem& p, const ValueTable& Vn, const LipschitzSpaceDesc& pspace,
                                  std::uint64_t k, std::uint64_t cap, unsigned workers = 1);
// the functional maximized above
Functional relaxed_functional(const DPProblem& p, const ValueTable& Vn, const LipschitzSpaceDesc& pspace);

void write_value_table_csv(std::ostream& os, const ValueTable& V);

} // namespace aevt
