#include "aevt/problems.hpp"

#include "aevt/errors.hpp"

namespace aevt {

namespace {

Rational max_abs(const BoxSpace& B) {
    Rational m(0);
    for (Eigen::Index i = 0; i < B.dim(); ++i) m = max(m, max(abs(B.lower(i)), abs(B.upper(i))));
    return m;
}

Rational opt_rational(const json& j, const char* key, const Rational& dflt, const std::string& where) {
    return j.contains(key) ? rational_from_json(j.at(key), where + "." + key) : dflt;
}

Point clamp_to(const BoxSpace& B, Point x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = min(max(x(i), B.lower(i)), B.upper(i));
    return x;
}

Rational sq_norm(const Point& x) {
    Rational s(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * x(i);
    return s;
}

} // namespace

LipschitzSpaceDesc space_from_json(const json& j, const std::string& where) {
    require_keys(j, {"domain", "lip", "bound", "codomain_dim"}, where);
    LipschitzSpaceDesc s{box_from_json(require(j, "domain", where), where + ".domain"),
                         rational_from_json(require(j, "lip", where), where + ".lip"),
                         rational_from_json(require(j, "bound", where), where + ".bound"),
                         1};
    if (j.contains("codomain_dim"))
        s.codomain_dim = static_cast<unsigned>(natural_from_json(j.at("codomain_dim"), where + ".codomain_dim"));
    if (s.lip.sign() < 0 || s.bound.sign() <= 0 || s.codomain_dim == 0)
        throw ConfigInvalid(where + ": need lip >= 0, bound > 0, codomain_dim >= 1");
    return s;
}

Rational square_integral_1d(const PWLFunction& f, const BoxSpace& domain) {
    auto knots = knots_1d(f, domain);
    Rational total(0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& [x0, v0] = knots[i];
        const auto& [x1, v1] = knots[i + 1];
        total += (x1 - x0) * (v0 * v0 + v0 * v1 + v1 * v1) / 3;
    }
    return total;
}

Functional make_functional(const std::string& name, const LipschitzSpaceDesc& space, const Point& x0) {
    const BoxSpace D = space.domain;
    Functional J;
    J.exact_values = true;
    if (name == "point_eval") {
        if (x0.size() != D.dim() || !D.contains(x0)) throw ConfigInvalid("point_eval needs x0 inside the domain");
        J.eval = [x0](const PWLFunction& f) { return CReal::from_rational(f(x0)); };
        J.modulus = Modulus::identity();
        return J;
    }
    if (D.dim() != 1 || space.codomain_dim != 1) throw ConfigInvalid(name + " needs a scalar space on an interval");
    const Rational len = 2 * D.radius;
    if (name == "integral") {
        J.eval = [D](const PWLFunction& f) { return CReal::from_rational(integral_1d(f, D)); };
        J.modulus = Modulus::lipschitz(len);
    } else if (name == "l2_to_identity") {
        J.eval = [D](const PWLFunction& f) { return CReal::from_rational(l2_to_identity_1d(f, D)); };
        J.modulus = Modulus::lipschitz(len * (2 * space.bound + 2 * max_abs(D)));
    } else if (name == "neg_square_integral") {
        J.eval = [D](const PWLFunction& f) { return CReal::from_rational(-square_integral_1d(f, D)); };
        J.modulus = Modulus::lipschitz(len * 2 * space.bound);
    } else {
        throw ConfigInvalid("unknown functional \"" + name + "\"");
    }
    return J;
}

Functional functional_from_json(const json& j, const LipschitzSpaceDesc& space, const std::string& where) {
    require_keys(j, {"name", "x0"}, where);
    const auto& name = require(j, "name", where);
    if (!name.is_string()) throw ConfigInvalid(where + ".name: expected a string");
    Point x0 = j.contains("x0") ? point_from_json(j.at("x0"), where + ".x0") : Point();
    return make_functional(name.get<std::string>(), space, x0);
}

OCProblem make_oc_problem(const LinearQuadraticOC& d) {
    if (d.X.dim() != 1 || d.U.dim() != 1) throw ConfigInvalid("linear-quadratic control problems are scalar");
    const Rational Mx = max_abs(d.X), Mu = max_abs(d.U);
    OCProblem p;
    const Rational a = d.a, b = d.b, c = d.c, qx = d.qx, ru = d.ru, s = d.s;
    p.f = [a, b](const Point& x, const Point& u, const Rational&) { return point({a * x(0) + b * u(0)}); };
    p.lip_f = abs(a) + abs(b);
    p.bound_f = abs(a) * Mx + abs(b) * Mu;
    p.phi = [s](const Point& x) { return s * x(0) * x(0); };
    p.omega_phi = Modulus::lipschitz(2 * abs(s) * Mx);
    p.lagrangian = [c, qx, ru](const Point& x, const Point& u, const Rational&) {
        return c + qx * x(0) * x(0) + ru * u(0) * u(0);
    };
    p.omega_l = Modulus::lipschitz(2 * abs(qx) * Mx + 2 * abs(ru) * Mu);
    p.t0 = d.t0;
    p.t1 = d.t1;
    p.x0 = point({d.x0});
    p.X = d.X;
    p.U = d.U;
    p.round_bits = d.round_bits;
    return p;
}

OCProblem oc_problem_from_json(const json& j, const std::string& where) {
    require_keys(j, {"a", "b", "c", "qx", "ru", "s", "t0", "t1", "x0", "X", "U", "round_bits"}, where);
    LinearQuadraticOC d;
    d.a = opt_rational(j, "a", 0, where);
    d.b = opt_rational(j, "b", 0, where);
    d.c = opt_rational(j, "c", 0, where);
    d.qx = opt_rational(j, "qx", 0, where);
    d.ru = opt_rational(j, "ru", 0, where);
    d.s = opt_rational(j, "s", 0, where);
    d.t0 = opt_rational(j, "t0", 0, where);
    d.t1 = opt_rational(j, "t1", 1, where);
    d.x0 = opt_rational(j, "x0", 0, where);
    d.X = box_from_json(require(j, "X", where), where + ".X");
    d.U = box_from_json(require(j, "U", where), where + ".U");
    if (j.contains("round_bits"))
        d.round_bits = static_cast<unsigned>(natural_from_json(j.at("round_bits"), where + ".round_bits"));
    if (!(d.t0 < d.t1)) throw ConfigInvalid(where + ": need t0 < t1");
    return make_oc_problem(d);
}

DPProblem make_dp_problem(const QuadraticDP& d) {
    const Eigen::Index dx = d.X.dim();
    const Eigen::Index du = d.U.finite() ? (d.U.actions.empty() ? 0 : d.U.actions.front().size()) : d.U.box->dim();
    if (du != dx) throw ConfigInvalid("controls and states must share a dimension");
    Point u0 = d.u0.size() == 0 ? constant_point(du, Rational(0)) : d.u0;
    if (u0.size() != du) throw ConfigInvalid("u0 dimension does not match the controls");
    Rational Mu(0);
    if (d.U.finite()) {
        for (const auto& u : d.U.actions) Mu = max(Mu, norm_inf(Point(u - u0)));
    } else {
        for (Eigen::Index i = 0; i < du; ++i)
            Mu = max(Mu, max(abs(d.U.box->lower(i) - u0(i)), abs(d.U.box->upper(i) - u0(i))));
    }
    DPProblem p;
    p.X = d.X;
    p.U = d.U;
    const Rational c = d.c, qx = d.qx, ru = d.ru, a = d.a, b = d.b;
    const BoxSpace X = d.X;
    p.r = [c, qx, ru, u0](const Point& x, const Point& u) { return c - qx * sq_norm(x) - ru * sq_norm(Point(u - u0)); };
    const Rational Lr = 2 * Rational(static_cast<long>(dx)) * (abs(qx) * max_abs(d.X) + abs(ru) * Mu);
    p.omega_r = Modulus::lipschitz(Lr);
    p.f = [a, b, X](const Point& x, const Point& u) { return clamp_to(X, Point(x * a + u * b)); };
    const Rational Lf = abs(a) + abs(b);
    p.omega_f = Modulus::lipschitz(Lf);
    p.gamma = d.gamma;
    if (d.value_lip)
        p.value_lip = *d.value_lip;
    else if (d.gamma * Lf < Rational(1))
        p.value_lip = Lr / (1 - d.gamma * Lf);
    else
        p.value_lip = Lr;
    return p;
}

DPProblem dp_problem_from_json(const json& j, const std::string& where) {
    require_keys(j, {"X", "U", "actions", "a", "b", "c", "qx", "ru", "u0", "gamma", "value_lip"}, where);
    QuadraticDP d;
    d.X = box_from_json(require(j, "X", where), where + ".X");
    if (j.contains("U") == j.contains("actions")) throw ConfigInvalid(where + ": give exactly one of U and actions");
    if (j.contains("U")) {
        d.U = ControlSet::from_box(box_from_json(j.at("U"), where + ".U"));
    } else {
        const auto& acts = j.at("actions");
        if (!acts.is_array() || acts.empty()) throw ConfigInvalid(where + ".actions: expected a non-empty array");
        PointList pts;
        for (std::size_t i = 0; i < acts.size(); ++i)
            pts.push_back(point_from_json(acts[i], where + ".actions[" + std::to_string(i) + "]"));
        d.U = ControlSet::from_actions(std::move(pts));
    }
    d.a = opt_rational(j, "a", 1, where);
    d.b = opt_rational(j, "b", 1, where);
    d.c = opt_rational(j, "c", 0, where);
    d.qx = opt_rational(j, "qx", 0, where);
    d.ru = opt_rational(j, "ru", 0, where);
    if (j.contains("u0")) d.u0 = point_from_json(j.at("u0"), where + ".u0");
    d.gamma = rational_from_json(require(j, "gamma", where), where + ".gamma");
    if (j.contains("value_lip")) d.value_lip = rational_from_json(j.at("value_lip"), where + ".value_lip");
    if (d.gamma.sign() <= 0 || d.gamma >= Rational(1))
        throw DegenerateDiscount(where + ": discount must lie in (0, 1), got " + d.gamma.to_string());
    return make_dp_problem(d);
}

adp::ADPProblem<double> make_adp_problem(const ScalarLQ& d) {
    if (d.X.dim() != 1 || d.U.dim() != 1) throw ConfigInvalid("scalar LQ problems need interval boxes");
    if (d.R.sign() <= 0 || d.q.sign() < 0) throw ConfigInvalid("need R > 0 and q >= 0");
    const double a = d.a.to_double(), b = d.b.to_double(), q = d.q.to_double();
    adp::ADPProblem<double> p;
    p.f = [a](const Vec<double>& x) { return Vec<double>(a * x); };
    p.g = [b](const Vec<double>& x) { return Mat<double>::Constant(x.size(), 1, b); };
    p.q = [q](const Vec<double>& x) { return q * x.squaredNorm(); };
    p.R = Mat<double>::Constant(1, 1, d.R.to_double());
    p.X = d.X;
    p.U = d.U;
    p.grid_k = d.grid_k;
    return p;
}

ScalarLQ scalar_lq_from_json(const json& j, const std::string& where) {
    require_keys(j, {"a", "b", "q", "R", "X", "U", "grid_k"}, where);
    ScalarLQ d;
    d.a = opt_rational(j, "a", d.a, where);
    d.b = opt_rational(j, "b", d.b, where);
    d.q = opt_rational(j, "q", d.q, where);
    d.R = opt_rational(j, "R", d.R, where);
    if (j.contains("X")) d.X = box_from_json(j.at("X"), where + ".X");
    if (j.contains("U")) d.U = box_from_json(j.at("U"), where + ".U");
    if (j.contains("grid_k")) d.grid_k = natural_from_json(j.at("grid_k"), where + ".grid_k");
    if (d.grid_k == 0) throw ConfigInvalid(where + ".grid_k must be >= 1");
    return d;
}

double riccati_root(const ScalarLQ& d) {
    // b^2 P^2 + (R - a^2 R - q b^2) P - q R = 0
    const double a = d.a.to_double(), b = d.b.to_double(), q = d.q.to_double(), R = d.R.to_double();
    const double A = b * b, B = R - a * a * R - q * b * b, C = -q * R;
    if (A == 0) return -C / B;
    return (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
}

NamedScalarField scalar_field_from_json(const json& j, const BoxSpace& domain, const std::string& where) {
    require_keys(j, {"name", "c"}, where);
    const auto& name = require(j, "name", where);
    if (!name.is_string()) throw ConfigInvalid(where + ".name: expected a string");
    const Rational M = max_abs(domain);
    const std::string n = name.get<std::string>();
    if (n == "abs") return {[](const Point& x) { return norm_inf(x); }, Rational(1), M};
    if (n == "identity") {
        if (domain.dim() != 1) throw ConfigInvalid(where + ": identity needs an interval");
        return {[](const Point& x) { return x(0); }, Rational(1), M};
    }
    if (n == "constant") {
        Rational c = rational_from_json(require(j, "c", where), where + ".c");
        return {[c](const Point&) { return c; }, Rational(0), abs(c)};
    }
    throw ConfigInvalid(where + ": unknown function \"" + n + "\"");
}

} // namespace aevt
