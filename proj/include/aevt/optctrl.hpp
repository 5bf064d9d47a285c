#pragma once

#include "aevt/evt.hpp"

#include <functional>
#include <iosfwd>

namespace aevt {

struct OCProblem {
    std::function<Point(const Point& x, const Point& u, const Rational& t)> f;
    Rational lip_f;       // in (x, u) under the max metric
    Rational lip_f_t{0};  // in t
    Rational bound_f;     // sup |f|_inf over X x U x [t0, t1]
    std::function<Rational(const Point&)> phi;
    Modulus omega_phi;
    std::function<Rational(const Point& x, const Point& u, const Rational& t)> lagrangian;
    Modulus omega_l;      // joint in (x, u, t)
    Rational t0, t1;
    Point x0;
    BoxSpace X, U;
    unsigned round_bits = 48;
};

struct Trajectory {
    std::vector<Rational> times;
    PointList states;
    Rational error_bound;
    std::uint64_t steps = 0;
};

// explicit Euler with states rounded to 2^-round_bits; error_bound is the Gronwall recursion
// E' = (1 + hL')E + Ch^2 + r with the actual rounding error r of each step
Trajectory integrate(const OCProblem& p, const PWLFunction& u, std::uint64_t steps);

// phi(x_N) + trapezoid sum of the lagrangian along a trajectory
Rational discrete_cost(const OCProblem& p, const Trajectory& traj, const PWLFunction& u);

// n-th approximation refines the step count from traj.steps until the total error is <= 1/(2n)
CReal cost(const OCProblem& p, const Trajectory& traj, const PWLFunction& u);
CReal cost(const OCProblem& p, const PWLFunction& u, std::uint64_t steps0 = 16);

// modulus of u -> J[u] for policies with Lipschitz constant policy_lip
Modulus functional_modulus(const OCProblem& p, const Rational& policy_lip);

ExtremumResult optimize_policy(const OCProblem& p, const LipschitzSpaceDesc& pspace, std::uint64_t k,
                               std::uint64_t cap, unsigned workers = 1);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

} // namespace aevt
