#include "aevt/funcspace.hpp"

#include "aevt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace aevt {

namespace {

bool check_compatible(const PointList& grid, const std::vector<Rational>& values, const Rational& lip,
                      const Rational& bound, unsigned m) {
    const std::size_t n = grid.size();
    for (const auto& v : values)
        if (abs(v) > bound) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational lr = lip * dinf(grid[i], grid[j]);
            for (unsigned c = 0; c < m; ++c)
                if (abs(values[i * m + c] - values[j * m + c]) > lr) return false;
        }
    return true;
}

Rational clamp(const Rational& v, const Rational& lo, const Rational& hi) {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return v;
}

} // namespace

PWLFunction::PWLFunction(std::shared_ptr<const PointList> grid, std::vector<Rational> values, Rational lip,
                         Rational bound, unsigned codomain_dim)
    : grid_(std::move(grid)), values_(std::move(values)), lip_(std::move(lip)), bound_(std::move(bound)),
      m_(codomain_dim) {
    if (!grid_ || grid_->empty()) throw std::invalid_argument("empty grid");
    if (values_.size() != grid_->size() * m_) throw std::invalid_argument("grid/value size mismatch");
    compatible_ = check_compatible(*grid_, values_, lip_, bound_, m_);
}

PWLFunction PWLFunction::trusted(std::shared_ptr<const PointList> grid, std::vector<Rational> values, Rational lip,
                                 Rational bound, unsigned codomain_dim) {
    PWLFunction f;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    f.lip_ = std::move(lip);
    f.bound_ = std::move(bound);
    f.m_ = codomain_dim;
    f.compatible_ = true;
    return f;
}

Rational mcshane_psi(const PointList& grid, const std::vector<Rational>& values, const Rational& lip, const Point& x,
                     unsigned m, unsigned coord) {
    Rational hi, lo;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Rational lr = lip * dinf(x, grid[i]);
        const Rational& v = values[i * m + coord];
        Rational a = v - lr, b = v + lr;
        if (i == 0 || a > hi) hi = a;
        if (i == 0 || b < lo) lo = b;
    }
    return (hi + lo) / 2;
}

Rational mcshane_extend(const PWLFunction& f, const Point& x, unsigned coord) {
    if (!f.compatible()) throw IncompatibleValues("grid values violate the Lipschitz or bound constraint");
    Rational psi = mcshane_psi(f.grid(), f.values(), f.lip(), x, f.codomain_dim(), coord);
    return clamp(psi, -f.bound(), f.bound());
}

Rational PWLFunction::operator()(const Point& x) const { return mcshane_extend(*this, x, 0); }

Point PWLFunction::eval(const Point& x) const {
    Point r(m_);
    for (unsigned c = 0; c < m_; ++c) r(c) = mcshane_extend(*this, x, c);
    return r;
}

PWLFunction snap_to_partition(const VectorField& f, const LipschitzSpaceDesc& space,
                              std::shared_ptr<const PointList> grid, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    const std::size_t N = grid->size();
    const unsigned m = space.codomain_dim;
    const Rational& K = space.bound;
    const Rational& L = space.lip;
    std::uint64_t kv = ceil_nat(Rational(2 * n) * Rational(N) * Rational(N) * K);
    RegularPartition levels;
    levels.source = BoxSpace(constant_point(1, Rational(0)), K);
    levels.k = kv;
    levels.step = K / Rational(kv);
    std::vector<Rational> values(N * m);
    for (std::size_t i = 0; i < N; ++i) {
        Point fx = f((*grid)[i]);
        for (unsigned c = 0; c < m; ++c) {
            Rational target = clamp(fx(c), -K, K);
            std::size_t j = locate(constant_point(1, target), levels);
            Rational level = -K + Rational(j) * levels.step;
            Rational lo = -K, hi = K;
            for (std::size_t p = 0; p < i; ++p) {
                Rational lr = L * dinf((*grid)[i], (*grid)[p]);
                lo = max(lo, values[p * m + c] - lr);
                hi = min(hi, values[p * m + c] + lr);
            }
            values[i * m + c] = clamp(level, lo, hi);
        }
    }
    return PWLFunction(std::move(grid), std::move(values), L, K, m);
}

PWLFunction snap_to_partition(const ScalarField& f, const LipschitzSpaceDesc& space,
                              std::shared_ptr<const PointList> grid, std::uint64_t n) {
    return snap_to_partition(VectorField([&f](const Point& x) { return constant_point(1, f(x)); }), space,
                             std::move(grid), n);
}

namespace {

double log2_count(std::uint64_t kv, std::uint64_t jump, const mpz_class& npoints) {
    double per = std::log2(double(2 * std::min(jump, kv) + 1));
    return std::log2(double(2 * kv + 1)) + (npoints.get_d() - 1) * per;
}

} // namespace

NetParams choose_net_params(const LipschitzSpaceDesc& space, const Rational& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("net precision must be positive");
    const Rational& R = space.domain.radius;
    const Rational& L = space.lip;
    const Rational& K = space.bound;
    NetParams best;
    double best_log = INFINITY;

    Rational lr2 = 2 * L * R;
    if (lr2 < eps) {
        Rational dmax = 2 * (eps - lr2);
        std::uint64_t kv = std::max<std::uint64_t>(1, ceil_nat(K / dmax));
        best.k_grid = 0;
        best.k_val = kv;
        best.max_jump = 0;
        best.grid_radius = R;
        best.level_step = K / Rational(kv);
        best.error_bound = lr2 + best.level_step / 2;
        best.count_bound = mpz_class(static_cast<unsigned long>(2 * kv + 1));
        best_log = std::log2(double(2 * kv + 1));
    }

    std::uint64_t kmin = floor_nat(L * R / eps) + 1;
    for (std::uint64_t kk = kmin; kk < kmin + 256; ++kk) {
        mpz_class npoints = partition_size(space.domain, kk);
        if (npoints.get_d() - 1 > best_log) break;
        Rational s = R / Rational(kk);
        Rational dmax = 2 * (eps - L * s);
        Rational ratio = L * s / K;
        mpz_class q = ratio.den();
        if (!q.fits_ulong_p()) continue;
        std::uint64_t qq = q.get_ui();
        std::uint64_t mult = std::max<std::uint64_t>(1, ceil_nat(K / (dmax * Rational(qq))));
        std::uint64_t kv = qq * mult;
        if (kv > 32767) continue;
        Rational jump = ratio * Rational(kv);
        std::uint64_t m = floor_nat(jump);
        double lg = log2_count(kv, m, npoints);
        if (lg < best_log) {
            best_log = lg;
            best.k_grid = kk;
            best.k_val = kv;
            best.max_jump = m;
            best.grid_radius = s / 2;
            best.level_step = K / Rational(kv);
            best.error_bound = L * s + best.level_step / 2;
            best.count_bound = mpz_class(static_cast<unsigned long>(2 * kv + 1)) *
                               ipow(mpz_class(static_cast<unsigned long>(2 * std::min(m, kv) + 1)),
                                    npoints.get_ui() - 1);
        }
    }
    if (!std::isfinite(best_log)) throw std::invalid_argument("no admissible net parameters");
    return best;
}

std::optional<mpz_class> exact_scalar_count(const LipschitzSpaceDesc& space, const NetParams& params) {
    const std::uint64_t levels = 2 * params.k_val + 1;
    if (params.k_grid == 0) return mpz_class(static_cast<unsigned long>(levels));
    if (space.domain.dim() != 1) return std::nullopt;
    const std::uint64_t N = 2 * params.k_grid + 1;
    const long long m = static_cast<long long>(params.max_jump);
    std::vector<mpz_class> ways(levels, 1), next(levels);
    for (std::uint64_t i = 1; i < N; ++i) {
        // sliding window sum over |j' - j| <= m
        std::vector<mpz_class> prefix(levels + 1, 0);
        for (std::uint64_t j = 0; j < levels; ++j) prefix[j + 1] = prefix[j] + ways[j];
        for (long long j = 0; j < static_cast<long long>(levels); ++j) {
            long long a = std::max<long long>(0, j - m), b = std::min<long long>(levels - 1, j + m);
            next[j] = prefix[b + 1] - prefix[a];
        }
        std::swap(ways, next);
    }
    mpz_class total = 0;
    for (const auto& w : ways) total += w;
    return total;
}

std::size_t for_each_scalar_member(const LipschitzSpaceDesc& space, const NetParams& params, const PointList& grid,
                                   std::uint64_t cap,
                                   const std::function<void(const std::vector<std::uint16_t>&)>& visit) {
    const std::size_t N = grid.size();
    const long long top = static_cast<long long>(2 * params.k_val);
    const long long m = static_cast<long long>(params.max_jump);
    // integer lattice coordinates in units of the grid step
    const std::size_t d = static_cast<std::size_t>(space.domain.dim());
    std::vector<long long> coord(N * d, 0);
    if (params.k_grid > 0) {
        Rational s = space.domain.radius / Rational(params.k_grid);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t c = 0; c < d; ++c)
                coord[i * d + c] = Rational((grid[i](static_cast<Eigen::Index>(c)) - space.domain.center(static_cast<Eigen::Index>(c))) / s).floor().get_si();
    }
    auto dist = [&](std::size_t i, std::size_t p) {
        long long best = 0;
        for (std::size_t c = 0; c < d; ++c) best = std::max(best, std::abs(coord[i * d + c] - coord[p * d + c]));
        return best;
    };
    auto overflow = [&](std::size_t count) {
        auto exact = exact_scalar_count(space, params);
        std::string bound = exact ? exact->get_str() : params.count_bound.get_str();
        throw CapExceeded("net enumeration exceeded cap " + std::to_string(cap) + " after " + std::to_string(count) +
                              " members; " + (exact ? "exact count " : "count bound ") + bound,
                          bound);
    };
    std::vector<std::uint16_t> cur(N, 0);
    std::vector<long long> hi(N, 0);
    std::size_t count = 0;
    // depth-first over grid points in order, each level ranging over the levels allowed by the earlier points
    auto open = [&](std::size_t i) {
        long long l = 0, h = top;
        for (std::size_t p = 0; p < i; ++p) {
            long long w = m * dist(i, p);
            l = std::max(l, static_cast<long long>(cur[p]) - w);
            h = std::min(h, static_cast<long long>(cur[p]) + w);
        }
        cur[i] = static_cast<std::uint16_t>(l);
        hi[i] = h;
        return l <= h;
    };
    std::size_t i = 0;
    bool ok = open(0);
    for (;;) {
        if (ok && i + 1 < N) {
            ok = open(++i);
            continue;
        }
        if (ok) {
            if (++count > cap) overflow(count);
            visit(cur);
        }
        while (static_cast<long long>(cur[i]) >= hi[i]) {
            if (i == 0) return count;
            --i;
        }
        ++cur[i];
        ok = true;
    }
}

FunctionNet enumerate_net(const LipschitzSpaceDesc& space, const Rational& eps, std::uint64_t cap) {
    FunctionNet net;
    net.space_ = space;
    net.precision_ = eps;
    net.params_ = choose_net_params(space, eps);
    PointList grid = net.params_.k_grid == 0 ? PointList{space.domain.center}
                                             : regular_partition(space.domain, net.params_.k_grid).points;
    net.grid_ = std::make_shared<const PointList>(std::move(grid));
    if (auto exact = exact_scalar_count(space, net.params_)) {
        mpz_class total = ipow(*exact, space.codomain_dim);
        if (total > mpz_class(static_cast<unsigned long>(cap)))
            throw CapExceeded("net has exactly " + total.get_str() + " members, cap " + std::to_string(cap),
                              total.get_str());
    }
    const std::size_t N = net.grid_->size();
    net.scalar_count_ = for_each_scalar_member(space, net.params_, *net.grid_, cap,
                                               [&](const std::vector<std::uint16_t>& lv) {
                                                   net.levels_.insert(net.levels_.end(), lv.begin(), lv.end());
                                               });
    mpz_class total = ipow(mpz_class(static_cast<unsigned long>(net.scalar_count_)), space.codomain_dim);
    if (total > mpz_class(static_cast<unsigned long>(cap)))
        throw CapExceeded("net has " + total.get_str() + " members, cap " + std::to_string(cap), total.get_str());
    net.count_ = total.get_ui();
    (void)N;
    return net;
}

PWLFunction FunctionNet::member(std::size_t i) const {
    if (i >= count_) throw std::out_of_range("net member index");
    const std::size_t N = grid_->size();
    const unsigned m = space_.codomain_dim;
    std::vector<std::size_t> digits(m);
    for (unsigned c = m; c-- > 0;) {
        digits[c] = i % scalar_count_;
        i /= scalar_count_;
    }
    std::vector<Rational> values(N * m);
    for (unsigned c = 0; c < m; ++c)
        for (std::size_t p = 0; p < N; ++p)
            values[p * m + c] = -space_.bound + Rational(levels_[digits[c] * N + p]) * params_.level_step;
    return PWLFunction::trusted(grid_, std::move(values), space_.lip, space_.bound, m);
}

Rational sup_dist(const PWLFunction& f, const PWLFunction& g, const BoxSpace& domain, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    Rational L = max(f.lip(), g.lip());
    std::uint64_t kk = std::max<std::uint64_t>(1, ceil_nat(4 * Rational(k) * L));
    RegularPartition part = finite_approximation(domain, kk);
    Rational best(0);
    for (const auto& x : part.points) best = max(best, dinf(f.eval(x), g.eval(x)));
    return best + 2 * L * part.step;
}

std::vector<std::pair<Rational, Rational>> knots_1d(const PWLFunction& f, const BoxSpace& domain) {
    if (domain.dim() != 1 || f.codomain_dim() != 1) throw std::invalid_argument("knots_1d needs a scalar 1-D function");
    if (!f.compatible()) throw IncompatibleValues("grid values violate the Lipschitz or bound constraint");
    const auto& grid = f.grid();
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a](0) < grid[b](0); });
    const Rational& L = f.lip();
    Rational lo = domain.lower(0), hi = domain.upper(0);
    std::vector<std::pair<Rational, Rational>> knots;
    auto push = [&](const Rational& x, const Rational& v) {
        if (x < lo || x > hi) return;
        if (!knots.empty() && knots.back().first == x) return;
        knots.emplace_back(x, v);
    };
    const Rational& x0 = grid[order.front()](0);
    if (lo < x0) push(lo, f.value(order.front()));
    for (std::size_t q = 0; q < order.size(); ++q) {
        const Rational& xa = grid[order[q]](0);
        const Rational& a = f.value(order[q]);
        push(xa, a);
        if (q + 1 == order.size()) break;
        const Rational& xb = grid[order[q + 1]](0);
        const Rational& b = f.value(order[q + 1]);
        Rational h = xb - xa, d = b - a;
        if (L.is_zero()) continue;
        Rational tu = (L * h - d) / (2 * L), td = (L * h + d) / (2 * L);
        auto psi = [&](const Rational& t) {
            Rational up = max(a - L * t, b - L * (h - t));
            Rational dn = min(a + L * t, b + L * (h - t));
            return (up + dn) / 2;
        };
        Rational t1 = min(tu, td), t2 = max(tu, td);
        if (t1.sign() > 0 && t1 < h) push(xa + t1, psi(t1));
        if (t2.sign() > 0 && t2 < h && t2 != t1) push(xa + t2, psi(t2));
    }
    const Rational& xn = grid[order.back()](0);
    if (xn < hi) push(hi, f.value(order.back()));
    return knots;
}

Rational integral_1d(const PWLFunction& f, const BoxSpace& domain) {
    auto knots = knots_1d(f, domain);
    Rational total(0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        total += (knots[i + 1].first - knots[i].first) * (knots[i].second + knots[i + 1].second) / 2;
    return total;
}

Rational l2_to_identity_1d(const PWLFunction& f, const BoxSpace& domain) {
    auto knots = knots_1d(f, domain);
    Rational total(0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& [x0, v0] = knots[i];
        const auto& [x1, v1] = knots[i + 1];
        Rational g0 = v0 - x0, g1 = v1 - x1, gm = (g0 + g1) / 2;
        total += (x1 - x0) * (g0 * g0 + 4 * gm * gm + g1 * g1) / 6;
    }
    return total;
}

void write_net_json(std::ostream& os, const FunctionNet& net, std::size_t limit) {
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& p : net.grid()) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p(i).to_string());
        grid.push_back(row);
    }
    nlohmann::json members = nlohmann::json::array();
    std::size_t n = std::min(limit, net.size());
    for (std::size_t i = 0; i < n; ++i) {
        PWLFunction f = net.member(i);
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : f.values()) vals.push_back(v.to_string());
        members.push_back({{"grid", grid}, {"values", vals}});
    }
    os << members.dump(1) << "\n";
}

} // namespace aevt
