#pragma once

#include "aevt/adp.hpp"
#include "aevt/brouwer.hpp"
#include "aevt/dp.hpp"
#include "aevt/io.hpp"
#include "aevt/mollify.hpp"
#include "aevt/optctrl.hpp"

namespace aevt {

// {"domain": box, "lip": r, "bound": r, "codomain_dim": n}
LipschitzSpaceDesc space_from_json(const json& j, const std::string& where);

// scalar functionals on a one-dimensional space:
//   point_eval  f(x0)            integral  int f
//   l2_to_identity  int (f - x)^2   neg_square_integral  -int f^2
Functional make_functional(const std::string& name, const LipschitzSpaceDesc& space, const Point& x0 = Point());
// {"name": .., "x0": ..}
Functional functional_from_json(const json& j, const LipschitzSpaceDesc& space, const std::string& where);

Rational square_integral_1d(const PWLFunction& f, const BoxSpace& domain);

// scalar x' = a x + b u, lagrangian c + qx x^2 + ru u^2, terminal s x^2, on boxes X, U
struct LinearQuadraticOC {
    Rational a, b, c, qx, ru, s;
    Rational t0{0}, t1{1};
    Rational x0;
    BoxSpace X, U;
    unsigned round_bits = 48;
};
OCProblem make_oc_problem(const LinearQuadraticOC& d);
OCProblem oc_problem_from_json(const json& j, const std::string& where);

// f(x,u) = clamp_X(a x + b u), r(x,u) = c - qx |x|_2^2 - ru |u - u0|_2^2
struct QuadraticDP {
    BoxSpace X;
    ControlSet U;
    Rational a{1}, b{1}, c, qx, ru;
    Point u0;
    Rational gamma{1, 2};
    std::optional<Rational> value_lip;
};
DPProblem make_dp_problem(const QuadraticDP& d);
DPProblem dp_problem_from_json(const json& j, const std::string& where);

// scalar x+ = a x + b u, q(x) = q x^2, r = q x^2 + R u^2
struct ScalarLQ {
    Rational a{1, 2}, b{1}, q{1}, R{1};
    BoxSpace X = BoxSpace::interval(-1, 1), U = BoxSpace::interval(Rational(-1, 2), Rational(1, 2));
    std::uint64_t grid_k = 200;
};
adp::ADPProblem<double> make_adp_problem(const ScalarLQ& d);
ScalarLQ scalar_lq_from_json(const json& j, const std::string& where);
// positive root of the scalar discrete Riccati equation P = q + a^2 P - a^2 b^2 P^2 / (R + b^2 P)
double riccati_root(const ScalarLQ& d);

// "abs", "identity", or "constant" with c
struct NamedScalarField {
    ScalarField f;
    Rational lip, bound;
};
NamedScalarField scalar_field_from_json(const json& j, const BoxSpace& domain, const std::string& where);

} // namespace aevt
