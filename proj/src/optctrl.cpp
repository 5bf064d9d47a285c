#include "aevt/optctrl.hpp"

#include "aevt/elementary.hpp"
#include "aevt/errors.hpp"

#include <ostream>

namespace aevt {

namespace {

Rational round_state(Point& x, unsigned bits) {
    Rational err(0);
    mpz_class limit = ipow(2, bits);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i).den() <= limit) continue;
        Rational r = round_dyadic(x(i), bits);
        err = max(err, abs(r - x(i)));
        x(i) = r;
    }
    return err;
}

Rational closed_loop_lip(const OCProblem& p, const Rational& policy_lip) {
    return p.lip_f * max(Rational(1), policy_lip);
}

} // namespace

Trajectory integrate(const OCProblem& p, const PWLFunction& u, std::uint64_t steps) {
    if (steps == 0) throw std::invalid_argument("steps must be >= 1");
    if (!(p.t0 < p.t1)) throw std::invalid_argument("t0 must be below t1");
    Trajectory tr;
    tr.steps = steps;
    const Rational h = (p.t1 - p.t0) / Rational(steps);
    const Rational Lp = closed_loop_lip(p, u.lip());
    const Rational C = (Lp * p.bound_f + p.lip_f_t) / 2;
    const Rational grow = 1 + h * Lp, local = C * h * h;
    Point x = p.x0;
    Rational E(0);
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    tr.times.push_back(p.t0);
    tr.states.push_back(x);
    if (!p.X.contains(x)) throw StateEscape("initial state outside X", 0);
    for (std::uint64_t i = 0; i < steps; ++i) {
        Rational t = p.t0 + Rational(i) * h;
        Point dx = p.f(x, u.eval(x), t);
        x = x + dx * h;
        Rational r = round_state(x, p.round_bits);
        E = round_up(grow * E + local + r, p.round_bits + 16);
        if (!p.X.contains(x)) throw StateEscape("state left X at step " + std::to_string(i + 1), i + 1);
        tr.times.push_back(t + h);
        tr.states.push_back(x);
    }
    tr.error_bound = E;
    return tr;
}

Rational discrete_cost(const OCProblem& p, const Trajectory& tr, const PWLFunction& u) {
    Rational total = p.phi(tr.states.back());
    if (!p.lagrangian) return total;
    Rational prev = p.lagrangian(tr.states[0], u.eval(tr.states[0]), tr.times[0]);
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
        Rational cur = p.lagrangian(tr.states[i], u.eval(tr.states[i]), tr.times[i]);
        total += (tr.times[i] - tr.times[i - 1]) * (prev + cur) / 2;
        prev = cur;
    }
    return total;
}

CReal cost(const OCProblem& p, const Trajectory& traj, const PWLFunction& u) {
    return cost(p, u, traj.steps);
}

CReal cost(const OCProblem& p, const PWLFunction& u, std::uint64_t steps0) {
    const Rational T = p.t1 - p.t0;
    const Rational lu = max(Rational(1), u.lip());
    return CReal::from_fn([p, u, steps0, T, lu](std::uint64_t n) {
        const Rational eps_phi = Rational(1) / Rational(6 * n);
        const Rational eps_l = Rational(1) / (Rational(3 * n) * T);
        const Rational d_phi = p.omega_phi(eps_phi);
        const Rational d_l = p.omega_l(eps_l);
        for (std::uint64_t steps = std::max<std::uint64_t>(1, steps0);; steps *= 2) {
            Rational h = T / Rational(steps);
            if (h > d_l) continue;
            Trajectory tr = integrate(p, u, steps);
            if (tr.error_bound > d_phi) continue;
            if (lu * (p.bound_f * h + tr.error_bound) > d_l) continue;
            return discrete_cost(p, tr, u);
        }
    });
}

Modulus functional_modulus(const OCProblem& p, const Rational& policy_lip) {
    const Rational T = p.t1 - p.t0;
    const Rational lu = max(Rational(1), policy_lip);
    const Rational G = p.lip_f * T * exp_upper(closed_loop_lip(p, policy_lip) * T);
    Modulus phi = p.omega_phi, lag = p.omega_l;
    std::optional<Rational> lip;
    return {[=](const Rational& e) {
                Rational a = lag(e / (2 * T)) / (lu * G + 1);
                if (G.sign() > 0) a = min(a, phi(e / 2) / G);
                return a;
            },
            lip};
}

ExtremumResult optimize_policy(const OCProblem& p, const LipschitzSpaceDesc& pspace, std::uint64_t k,
                               std::uint64_t cap, unsigned workers) {
    Functional J;
    J.eval = [p](const PWLFunction& u) { return cost(p, u); };
    J.modulus = functional_modulus(p, pspace.lip);
    return approx_inf(J, pspace, k, cap, workers);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    const Eigen::Index d = tr.states.empty() ? 0 : tr.states.front().size();
    os << "t";
    for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t s = 0; s < tr.states.size(); ++s) {
        os << tr.times[s].to_string();
        for (Eigen::Index i = 0; i < d; ++i) os << "," << tr.states[s](i).to_string();
        os << "\n";
    }
}

} // namespace aevt
