#include "aevt/dp.hpp"

#include "aevt/errors.hpp"

#include <map>
#include <mutex>
#include <ostream>

namespace aevt {

namespace {

Modulus joint_modulus(const DPProblem& p) {
    if (p.gamma.is_zero() || p.value_lip.is_zero()) return combine_min(p.omega_r, Rational(1), p.omega_r, Rational(1));
    return combine_min(p.omega_r, Rational(1, 2), p.omega_f, Rational(1) / (2 * p.gamma * p.value_lip));
}

PointList control_points(const DPProblem& p, std::uint64_t k) {
    if (p.U.finite()) return p.U.actions;
    Rational delta = joint_modulus(p)(Rational(1) / Rational(2 * k));
    std::uint64_t kk = std::max<std::uint64_t>(1, ceil_nat(Rational(1) / delta));
    return finite_approximation(*p.U.box, kk).points;
}

ValueTable apply_with(const ValueTable& V, const DPProblem& p, const PointList& controls) {
    ValueTable out;
    out.grid = V.grid;
    out.lip = V.lip;
    out.modulus = sup_modulus(joint_modulus(p));
    out.values.reserve(V.grid->size());
    for (const auto& x : *V.grid)
        out.values.push_back(
            approx_sup_over_points([&](const Point& u) { return p.r(x, u) + p.gamma * V(p.f(x, u)); }, controls));
    return out;
}

void check_discount(const Rational& g) {
    if (g.sign() <= 0 || g >= Rational(1)) throw DegenerateDiscount("discount must lie in (0, 1), got " + g.to_string());
}

} // namespace

ValueTable ValueTable::constant(std::shared_ptr<const PointList> grid, const Rational& c, const Rational& lip) {
    ValueTable v;
    v.values.assign(grid->size(), c);
    v.grid = std::move(grid);
    v.lip = lip;
    v.modulus = Modulus::lipschitz(lip);
    return v;
}

Rational grid_sup_dist(const ValueTable& a, const ValueTable& b) {
    Rational m(0);
    for (std::size_t i = 0; i < a.values.size(); ++i) m = max(m, abs(a.values[i] - b.values[i]));
    return m;
}

ValueTable bellman_apply(const ValueTable& V, const DPProblem& p, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    return apply_with(V, p, control_points(p, k));
}

std::uint64_t min_iterations(const Rational& gamma, const Rational& d, const Rational& eps) {
    check_discount(gamma);
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    Rational scale = d / (1 - gamma);
    std::uint64_t n = 0;
    while (scale > eps) {
        scale *= gamma;
        ++n;
    }
    return n;
}

VIResult value_iteration(const DPProblem& p, const ValueTable& V0, const Rational& eps, std::uint64_t k) {
    check_discount(p.gamma);
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    PointList controls = control_points(p, k);
    VIResult r;
    ValueTable T0 = apply_with(V0, p, controls);
    r.d = grid_sup_dist(T0, V0);
    r.slack = p.U.finite() ? Rational(0) : Rational(1) / Rational(k);
    r.n = min_iterations(p.gamma, r.d + r.slack, eps);
    ValueTable V = r.n == 0 ? V0 : T0;
    for (std::uint64_t i = 1; i < r.n; ++i) V = apply_with(V, p, controls);
    r.V = std::move(V);
    r.bound = (pow(p.gamma, static_cast<unsigned>(r.n)) * r.d + r.slack) / (1 - p.gamma);
    return r;
}

BlackwellDiagnostics blackwell_check(const DPProblem& p, const std::shared_ptr<const PointList>& grid,
                                     std::size_t samples, std::uint64_t k, std::uint64_t seed) {
    check_discount(p.gamma);
    PointList controls = control_points(p, k);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> val(-2048, 2048), inc(0, 1024), shift(0, 2048);
    auto random_table = [&]() {
        ValueTable v = ValueTable::constant(grid, Rational(0), p.value_lip);
        for (auto& x : v.values) x = Rational(val(rng), 1024);
        return v;
    };
    BlackwellDiagnostics d;
    d.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        ValueTable V = random_table(), W = V, V2 = random_table();
        for (auto& x : W.values) x += Rational(inc(rng), 1024);
        Rational a(shift(rng), 1024);
        ValueTable Va = V;
        for (auto& x : Va.values) x += a;
        ValueTable TV = apply_with(V, p, controls), TW = apply_with(W, p, controls);
        ValueTable TVa = apply_with(Va, p, controls), TV2 = apply_with(V2, p, controls);
        for (std::size_t i = 0; i < TV.values.size(); ++i) {
            d.max_monotone_violation = max(d.max_monotone_violation, TV.values[i] - TW.values[i]);
            d.max_discount_residual =
                max(d.max_discount_residual, abs(TVa.values[i] - TV.values[i] - p.gamma * a));
        }
        Rational num = grid_sup_dist(TV, TV2), den = grid_sup_dist(V, V2);
        if (s == 0)
            d.max_contraction_excess = num - p.gamma * den;
        else
            d.max_contraction_excess = max(d.max_contraction_excess, num - p.gamma * den);
        if (den.sign() > 0) d.max_contraction_ratio = std::max(d.max_contraction_ratio, (num / den).to_double());
    }
    return d;
}

Functional relaxed_functional(const DPProblem& p, const ValueTable& Vn, const LipschitzSpaceDesc& pspace) {
    if (!p.omega_r.lip || !p.omega_f.lip)
        throw std::invalid_argument("relaxed policy search needs Lipschitz moduli for r and f");
    const Rational Lr = *p.omega_r.lip, Lf = *p.omega_f.lip;
    const Rational Lstep = Lr + p.gamma * Vn.lip * Lf;
    const Rational Lh = Lstep * max(Rational(1), pspace.lip);
    struct Covers {
        std::mutex mu;
        std::map<std::uint64_t, std::pair<PointList, Rational>> by_n;
    };
    auto covers = std::make_shared<Covers>();
    const BoxSpace X = p.X;
    auto grid_for = [covers, X, Lh](std::uint64_t n) {
        std::lock_guard<std::mutex> lock(covers->mu);
        auto it = covers->by_n.find(n);
        if (it != covers->by_n.end()) return it->second;
        std::pair<PointList, Rational> entry;
        if (Lh.is_zero()) {
            entry = {PointList{X.center}, Rational(0)};
        } else {
            Rational r = Rational(1) / (2 * Rational(n) * Lh);
            entry = {cover(X, r), cover_radius(X, cover_k(X, r))};
        }
        return covers->by_n.emplace(n, std::move(entry)).first->second;
    };
    Functional J;
    J.eval = [p, Vn, Lh, grid_for](const PWLFunction& u) {
        return CReal::from_fn([p, Vn, Lh, grid_for, u](std::uint64_t n) {
            auto [pts, c] = grid_for(n);
            Rational m;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                Point ux = u.eval(pts[i]);
                Rational h = p.r(pts[i], ux) + p.gamma * Vn(p.f(pts[i], ux));
                if (i == 0 || h < m) m = h;
            }
            return m - Lh * c / 2;
        });
    };
    J.modulus = Modulus::lipschitz(Lstep);
    return J;
}

ExtremumResult relaxed_policy_opt(const DPProblem& p, const ValueTable& Vn, const LipschitzSpaceDesc& pspace,
                                  std::uint64_t k, std::uint64_t cap, unsigned workers) {
    check_discount(p.gamma);
    return approx_sup(relaxed_functional(p, Vn, pspace), pspace, k, cap, workers);
}

void write_value_table_csv(std::ostream& os, const ValueTable& V) {
    const Eigen::Index d = V.grid->empty() ? 0 : V.grid->front().size();
    for (Eigen::Index i = 0; i < d; ++i) os << "x" << i << ",";
    os << "value\n";
    for (std::size_t s = 0; s < V.values.size(); ++s) {
        for (Eigen::Index i = 0; i < d; ++i) os << (*V.grid)[s](i).to_string() << ",";
        os << V.values[s].to_string() << "\n";
    }
}

} // namespace aevt
