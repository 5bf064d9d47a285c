#pragma once

#include "aevt/metric.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace aevt {

struct LipschitzSpaceDesc {
    BoxSpace domain;
    Rational lip;
    Rational bound;
    unsigned codomain_dim = 1;
};

// grid values plus the max/min extension, clamped to [-bound, bound]; values are row-major (point, coordinate)
class PWLFunction {
public:
    PWLFunction() = default;
    // checks pairwise compatibility |v_i - v_j| <= lip * rho(x_i, x_j) and |v_i| <= bound
    PWLFunction(std::shared_ptr<const PointList> grid, std::vector<Rational> values, Rational lip, Rational bound,
                unsigned codomain_dim = 1);
    // trusted construction for values known to be compatible
    static PWLFunction trusted(std::shared_ptr<const PointList> grid, std::vector<Rational> values, Rational lip,
                               Rational bound, unsigned codomain_dim = 1);

    const PointList& grid() const { return *grid_; }
    const std::shared_ptr<const PointList>& grid_ptr() const { return grid_; }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& value(std::size_t i, unsigned c = 0) const { return values_[i * m_ + c]; }
    const Rational& lip() const { return lip_; }
    const Rational& bound() const { return bound_; }
    unsigned codomain_dim() const { return m_; }
    std::size_t size() const { return grid_->size(); }
    bool compatible() const { return compatible_; }

    Rational operator()(const Point& x) const;
    Point eval(const Point& x) const;

private:
    std::shared_ptr<const PointList> grid_;
    std::vector<Rational> values_;
    Rational lip_, bound_;
    unsigned m_ = 1;
    bool compatible_ = false;
};

Rational mcshane_extend(const PWLFunction& f, const Point& x, unsigned coord = 0);
// extension without the clamp, used for value tables
Rational mcshane_psi(const PointList& grid, const std::vector<Rational>& values, const Rational& lip, const Point& x,
                     unsigned m = 1, unsigned coord = 0);

using ScalarField = std::function<Rational(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

// values of f at grid points snapped to a regular partition of [-K, K] with step at most 1/(2nN^2),
// then pulled into the interval allowed by the earlier points
PWLFunction snap_to_partition(const VectorField& f, const LipschitzSpaceDesc& space,
                              std::shared_ptr<const PointList> grid, std::uint64_t n);
PWLFunction snap_to_partition(const ScalarField& f, const LipschitzSpaceDesc& space,
                              std::shared_ptr<const PointList> grid, std::uint64_t n);

// grid k_grid (0 = center only) and value levels -K + j*K/k_val, chosen so that
// rounding any f in F to the nearest level on the grid gives a compatible member within eps
struct NetParams {
    std::uint64_t k_grid = 0;
    std::uint64_t k_val = 1;
    std::uint64_t max_jump = 0; // level difference allowed per grid step
    Rational grid_radius;       // covering radius of the grid
    Rational level_step;
    Rational error_bound;       // lip * 2 * grid_radius + level_step / 2
    mpz_class count_bound;      // per coordinate
};

NetParams choose_net_params(const LipschitzSpaceDesc& space, const Rational& eps);

class FunctionNet {
public:
    const LipschitzSpaceDesc& space() const { return space_; }
    const Rational& precision() const { return precision_; }
    const NetParams& params() const { return params_; }
    const PointList& grid() const { return *grid_; }
    std::size_t size() const { return count_; }
    PWLFunction member(std::size_t i) const;
    const std::vector<std::uint16_t>& scalar_levels() const { return levels_; }
    std::size_t scalar_count() const { return scalar_count_; }

private:
    friend FunctionNet enumerate_net(const LipschitzSpaceDesc&, const Rational&, std::uint64_t);
    LipschitzSpaceDesc space_;
    Rational precision_;
    NetParams params_;
    std::shared_ptr<const PointList> grid_;
    std::vector<std::uint16_t> levels_; // scalar members, N level indices each
    std::size_t scalar_count_ = 0;
    std::size_t count_ = 0;
};

// every f in F is within eps of some member in the sup metric
FunctionNet enumerate_net(const LipschitzSpaceDesc& space, const Rational& eps, std::uint64_t cap);
inline FunctionNet enumerate_net(const LipschitzSpaceDesc& space, std::uint64_t k, std::uint64_t cap) {
    return enumerate_net(space, Rational(1) / Rational(k), cap);
}

// visits scalar members in DFS order without storing them; returns the count.
// throws CapExceeded once more than cap members are produced.
std::size_t for_each_scalar_member(const LipschitzSpaceDesc& space, const NetParams& params, const PointList& grid,
                                   std::uint64_t cap,
                                   const std::function<void(const std::vector<std::uint16_t>&)>& visit);

// exact number of scalar members for one-dimensional domains
std::optional<mpz_class> exact_scalar_count(const LipschitzSpaceDesc& space, const NetParams& params);

// sup distance estimate r with tau(f, g) <= r <= tau(f, g) + 1/(2k)
Rational sup_dist(const PWLFunction& f, const PWLFunction& g, const BoxSpace& domain, std::uint64_t k);

// exact knots (x, f(x)) of a compatible scalar member on a one-dimensional domain
std::vector<std::pair<Rational, Rational>> knots_1d(const PWLFunction& f, const BoxSpace& domain);
Rational integral_1d(const PWLFunction& f, const BoxSpace& domain);
// integral of (f(x) - x)^2
Rational l2_to_identity_1d(const PWLFunction& f, const BoxSpace& domain);

void write_net_json(std::ostream& os, const FunctionNet& net, std::size_t limit);

} // namespace aevt
