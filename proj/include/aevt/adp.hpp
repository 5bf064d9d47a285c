#pragma once

#include "aevt/errors.hpp"
#include "aevt/metric.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

namespace aevt {
namespace adp {

inline long floor_index(double v) { return static_cast<long>(std::floor(v)); }
inline long floor_index(const Rational& v) { return v.floor().get_si(); }

template <typename S>
S from_rational(const Rational& q) {
    if constexpr (std::is_same_v<S, Rational>)
        return q;
    else
        return static_cast<S>(q.to_double());
}

template <typename S>
Mat<S> inverse_of(const Mat<S>& m) {
    if constexpr (std::is_same_v<S, Rational>)
        return inverse(m);
    else
        return m.inverse();
}

inline double to_double_of(double v) { return v; }
inline double to_double_of(const Rational& v) { return v.to_double(); }

template <typename S>
S abs_of(const S& v) {
    using std::abs;
    return abs(v);
}

// lattice lo + i*step, i in {0..per_axis-1}^dim, first coordinate most significant
template <typename S>
struct TensorGrid {
    Vec<S> lo;
    S step;
    long per_axis = 0;

    static TensorGrid from_partition(const BoxSpace& X, std::uint64_t k) {
        TensorGrid g;
        g.lo.resize(X.dim());
        for (Eigen::Index i = 0; i < X.dim(); ++i) g.lo(i) = from_rational<S>(X.lower(i));
        g.step = from_rational<S>(X.radius / Rational(k));
        g.per_axis = static_cast<long>(2 * k + 1);
        return g;
    }

    Eigen::Index dim() const { return lo.size(); }
    std::size_t size() const {
        std::size_t n = 1;
        for (Eigen::Index i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(per_axis);
        return n;
    }
    Vec<S> point(std::size_t idx) const {
        Vec<S> p(dim());
        for (Eigen::Index i = dim() - 1; i >= 0; --i) {
            p(i) = lo(i) + S(static_cast<long>(idx % per_axis)) * step;
            idx /= static_cast<std::size_t>(per_axis);
        }
        return p;
    }
    bool contains(const Vec<S>& x) const {
        S hi_off = S(per_axis - 1) * step;
        for (Eigen::Index i = 0; i < dim(); ++i)
            if (x(i) < lo(i) || x(i) > lo(i) + hi_off) return false;
        return true;
    }
};

// table on a tensor grid with multilinear interpolation
template <typename S>
struct ValueTable {
    TensorGrid<S> grid;
    std::vector<S> values;

    static ValueTable zero(const TensorGrid<S>& g) { return {g, std::vector<S>(g.size(), S(0))}; }

    std::optional<S> at(const Vec<S>& x) const {
        if (!grid.contains(x)) return std::nullopt;
        const Eigen::Index d = grid.dim();
        std::vector<long> base(d);
        std::vector<S> frac(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            S t = (x(i) - grid.lo(i)) / grid.step;
            long j = floor_index(t);
            if (j > grid.per_axis - 2) j = grid.per_axis - 2;
            if (j < 0) j = 0;
            base[i] = j;
            frac[i] = t - S(j);
        }
        S total(0);
        for (unsigned corner = 0; corner < (1u << d); ++corner) {
            S w(1);
            std::size_t idx = 0;
            for (Eigen::Index i = 0; i < d; ++i) {
                bool up = (corner >> (d - 1 - i)) & 1u;
                w = w * (up ? frac[i] : S(1) - frac[i]);
                idx = idx * static_cast<std::size_t>(grid.per_axis) + static_cast<std::size_t>(base[i] + (up ? 1 : 0));
            }
            if (!(w == S(0))) total = total + w * values[idx];
        }
        return total;
    }

    S operator()(const Vec<S>& x) const {
        auto v = at(x);
        if (!v) throw NotCovered("value table evaluated outside its grid");
        return *v;
    }
};

template <typename S>
struct Policy {
    TensorGrid<S> grid;
    std::vector<Vec<S>> controls;
};

template <typename S>
struct ADPProblem {
    std::function<Vec<S>(const Vec<S>&)> f;
    std::function<Mat<S>(const Vec<S>&)> g;
    std::function<S(const Vec<S>&)> q;
    Mat<S> R;
    BoxSpace X, U;
    std::uint64_t grid_k = 1; // state grid is regular_partition(X, grid_k)

    S r(const Vec<S>& x, const Vec<S>& u) const { return q(x) + (u.transpose() * R * u)(0, 0); }
    Vec<S> next(const Vec<S>& x, const Vec<S>& u) const { return f(x) + g(x) * u; }
    TensorGrid<S> state_grid() const { return TensorGrid<S>::from_partition(X, grid_k); }
};

template <typename S>
std::vector<Vec<S>> control_net(const BoxSpace& U, std::uint64_t k) {
    std::vector<Vec<S>> out;
    for (const auto& p : finite_approximation(U, k).points) {
        Vec<S> v(p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) v(i) = from_rational<S>(p(i));
        out.push_back(std::move(v));
    }
    return out;
}

template <typename S>
S table_sup_dist(const ValueTable<S>& a, const ValueTable<S>& b) {
    S m(0);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        S d = abs_of<S>(a.values[i] - b.values[i]);
        if (m < d) m = d;
    }
    return m;
}

// arg inf over the control net of r(x,u) + V(f(x) + g(x)u); successors outside X are inadmissible
template <typename S>
std::pair<Vec<S>, S> best_control(const ADPProblem<S>& p, const ValueTable<S>& V, const std::vector<Vec<S>>& controls,
                                  const Vec<S>& x) {
    bool found = false;
    S best(0);
    std::size_t arg = 0;
    for (std::size_t j = 0; j < controls.size(); ++j) {
        auto v = V.at(p.next(x, controls[j]));
        if (!v) continue;
        S val = p.r(x, controls[j]) + *v;
        if (!found || val < best) {
            found = true;
            best = val;
            arg = j;
        }
    }
    if (!found) throw std::domain_error("no admissible control keeps the successor inside X");
    return {controls[arg], best};
}

template <typename S>
std::pair<Policy<S>, ValueTable<S>> vi_step(const ValueTable<S>& V, const ADPProblem<S>& p,
                                            const std::vector<Vec<S>>& controls) {
    Policy<S> pol{V.grid, {}};
    ValueTable<S> next{V.grid, std::vector<S>(V.values.size())};
    pol.controls.resize(V.values.size());
    for (std::size_t i = 0; i < V.values.size(); ++i) {
        auto [u, val] = best_control(p, V, controls, V.grid.point(i));
        pol.controls[i] = u;
        next.values[i] = val;
    }
    return {std::move(pol), std::move(next)};
}

template <typename S>
std::pair<Policy<S>, ValueTable<S>> vi_step(const ValueTable<S>& V, const ADPProblem<S>& p, std::uint64_t k) {
    return vi_step(V, p, control_net<S>(p.U, k));
}

template <typename S>
struct TraceRow {
    std::size_t iter;
    S change;
    S residual;
};

template <typename S>
struct VIRun {
    ValueTable<S> V;
    Policy<S> policy;
    S residual; // sup |V - inf_u (r + V o f)| on the grid
    std::size_t iterations = 0;
    std::vector<TraceRow<S>> trace;
    S min_increment; // min over iterations and grid of V_{i+1} - V_i
};

template <typename S>
VIRun<S> vi_run(const ADPProblem<S>& p, const S& tol, std::size_t max_iter, std::uint64_t k) {
    const auto controls = control_net<S>(p.U, k);
    VIRun<S> run;
    run.V = ValueTable<S>::zero(p.state_grid());
    bool first = true;
    for (std::size_t i = 1; i <= max_iter; ++i) {
        auto [pol, next] = vi_step(run.V, p, controls);
        S change = table_sup_dist(next, run.V);
        for (std::size_t j = 0; j < next.values.size(); ++j) {
            S inc = next.values[j] - run.V.values[j];
            if (first || inc < run.min_increment) run.min_increment = inc;
            first = false;
        }
        run.V = std::move(next);
        run.policy = std::move(pol);
        run.iterations = i;
        auto [pol2, after] = vi_step(run.V, p, controls);
        run.residual = table_sup_dist(after, run.V);
        run.trace.push_back({i, change, run.residual});
        if (!(tol < change)) {
            run.policy = std::move(pol2);
            return run;
        }
    }
    throw MaxIterExceeded("value iteration did not reach tolerance in " + std::to_string(max_iter) + " iterations",
                          to_double_of(run.residual));
}

template <typename S>
struct PolicyEvaluation {
    ValueTable<S> V;
    S tail; // sup |V_H - V_{H-1}|
};

// truncated rollout of V <- r(x, u(x)) + V(f(x) + g(x)u(x)) from V = 0
template <typename S>
PolicyEvaluation<S> evaluate_policy(const ADPProblem<S>& p, const Policy<S>& u, std::size_t horizon,
                                    const S& divergence_bound) {
    ValueTable<S> V = ValueTable<S>::zero(u.grid);
    S tail(0);
    for (std::size_t h = 0; h < horizon; ++h) {
        ValueTable<S> next{u.grid, std::vector<S>(V.values.size())};
        for (std::size_t i = 0; i < V.values.size(); ++i) {
            Vec<S> x = u.grid.point(i);
            auto v = V.at(p.next(x, u.controls[i]));
            if (!v) throw DivergentRollout("policy drives grid point " + std::to_string(i) + " outside X");
            next.values[i] = p.r(x, u.controls[i]) + *v;
            if (divergence_bound < abs_of<S>(next.values[i]))
                throw DivergentRollout("rollout cost exceeds the divergence bound at step " + std::to_string(h + 1));
        }
        tail = table_sup_dist(next, V);
        V = std::move(next);
    }
    return {std::move(V), tail};
}

template <typename S>
struct PIRun {
    ValueTable<S> V;
    Policy<S> policy;
    S tail;
    std::size_t iterations = 0;
    std::vector<TraceRow<S>> trace;
};

template <typename S>
Policy<S> improve_policy(const ADPProblem<S>& p, const ValueTable<S>& V, const std::vector<Vec<S>>& controls) {
    Policy<S> pol{V.grid, std::vector<Vec<S>>(V.values.size())};
    for (std::size_t i = 0; i < V.values.size(); ++i) pol.controls[i] = best_control(p, V, controls, V.grid.point(i)).first;
    return pol;
}

template <typename S>
PIRun<S> pi_run(const ADPProblem<S>& p, const Policy<S>& u0, std::size_t horizon, const S& tol, std::uint64_t k,
                std::size_t max_iter = 100, S divergence_bound = S(1'000'000'000)) {
    const auto controls = control_net<S>(p.U, k);
    PIRun<S> run;
    run.policy = u0;
    auto ev = evaluate_policy(p, run.policy, horizon, divergence_bound);
    for (std::size_t i = 1; i <= max_iter; ++i) {
        run.policy = improve_policy(p, ev.V, controls);
        auto next = evaluate_policy(p, run.policy, horizon, divergence_bound);
        S change = table_sup_dist(next.V, ev.V);
        run.iterations = i;
        run.trace.push_back({i, change, next.tail});
        ev = std::move(next);
        if (!(tol < change)) break;
    }
    run.V = std::move(ev.V);
    run.tail = ev.tail;
    return run;
}

template <typename S>
Policy<S> policy_from(const TensorGrid<S>& grid, const std::function<Vec<S>(const Vec<S>&)>& u) {
    Policy<S> pol{grid, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) pol.controls.push_back(u(grid.point(i)));
    return pol;
}

template <typename S>
struct HeydariResult {
    Vec<S> u;
    S ratio;     // max ||u_{j+1} - u_j|| / ||u_j - u_{j-1}||
    S last_step; // ||u_J - u_{J-1}||
    std::size_t iterations = 0;
};

// F[u](x) = -1/2 R^-1 g(x)^T grad V(f(x) + g(x)u), gradient by central differences of half-width fd_step
template <typename S>
Vec<S> heydari_map(const ADPProblem<S>& p, const ValueTable<S>& V, const Vec<S>& x, const Vec<S>& u, const S& fd_step,
                   const Mat<S>& Rinv) {
    Vec<S> y = p.next(x, u);
    Vec<S> grad(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        Vec<S> a = y, b = y;
        a(i) = a(i) + fd_step;
        b(i) = b(i) - fd_step;
        grad(i) = (V(a) - V(b)) / (S(2) * fd_step);
    }
    Mat<S> gx = p.g(x);
    return Rinv * (gx.transpose() * grad) * S(-1) / S(2);
}

template <typename S>
S vec_norm_inf(const Vec<S>& v) {
    S m(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        S a = abs_of<S>(v(i));
        if (m < a) m = a;
    }
    return m;
}

template <typename S>
S noise_floor() {
    if constexpr (std::is_same_v<S, Rational>)
        return S(0);
    else
        return S(1e-12);
}

// u <- (1 - theta) u + theta F[u] until a step is <= stop; steps at or below stop are not used for the ratio.
// throws NoContraction as soon as the observed ratio reaches 1
template <typename S>
HeydariResult<S> heydari_iterate(const ADPProblem<S>& p, const ValueTable<S>& V, const Vec<S>& x,
                                 const Vec<S>& u_init, std::size_t iters, const S& fd_step, const S& theta = S(1),
                                 const S& stop = noise_floor<S>()) {
    const Mat<S> Rinv = inverse_of<S>(p.R);
    HeydariResult<S> res;
    res.u = u_init;
    res.ratio = S(0);
    res.last_step = S(0);
    S prev(0);
    bool have_prev = false;
    for (std::size_t j = 0; j < iters; ++j) {
        Vec<S> Fu = heydari_map(p, V, x, res.u, fd_step, Rinv);
        Vec<S> nu = res.u * (S(1) - theta) + Fu * theta;
        S step = vec_norm_inf<S>(Vec<S>(nu - res.u));
        res.u = nu;
        res.iterations = j + 1;
        res.last_step = step;
        if (step <= stop) break;
        if (have_prev) {
            S ratio = step / prev;
            if (res.ratio < ratio) res.ratio = ratio;
            if (!(res.ratio < S(1)))
                throw NoContraction("fixed-point map is not contractive at this state (observed ratio " +
                                    std::to_string(to_double_of(res.ratio)) + " at iteration " +
                                    std::to_string(j + 1) + ")");
        }
        prev = step;
        have_prev = true;
    }
    return res;
}

template <typename S>
void write_trace_csv(std::ostream& os, const std::vector<TraceRow<S>>& trace) {
    os << "iter,sup_change,residual\n";
    for (const auto& r : trace) os << r.iter << "," << r.change << "," << r.residual << "\n";
}

} // namespace adp
} // namespace aevt
