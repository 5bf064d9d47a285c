#pragma once

#include "aevt/creal.hpp"
#include "aevt/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace aevt {

inline constexpr std::uint64_t kDefaultPointCap = 20'000'000;

// closed d-infinity ball {x : |x - center|_inf <= radius}
struct BoxSpace {
    Point center;
    Rational radius;

    BoxSpace() = default;
    BoxSpace(Point c, Rational r);
    static BoxSpace interval(const Rational& lo, const Rational& hi);
    static BoxSpace cube(Eigen::Index dim, const Rational& lo, const Rational& hi);

    Eigen::Index dim() const { return center.size(); }
    Rational lower(Eigen::Index i) const { return center(i) - radius; }
    Rational upper(Eigen::Index i) const { return center(i) + radius; }
    bool contains(const Point& x) const;
};

struct RegularPartition {
    BoxSpace source;
    std::uint64_t k = 0;
    Rational step;
    PointList points;
};

// all (2k+1)^dim points center + i*step, i in {-k..k}^dim, first coordinate most significant
RegularPartition regular_partition(const BoxSpace& space, std::uint64_t k, std::uint64_t cap = kDefaultPointCap);

// number of points regular_partition would produce
mpz_class partition_size(const BoxSpace& space, std::uint64_t k);

// smallest index i with |x(m) - p_i|_inf <= step/2 at m = max(ceil(4/step), 1); x then lies in B(p_i, step)
std::size_t locate(const std::vector<CReal>& x, const RegularPartition& partition);
std::size_t locate(const Point& x, const RegularPartition& partition);
std::uint64_t locate_precision(const Rational& step);

// a regular partition with step <= 1/k
RegularPartition finite_approximation(const BoxSpace& space, std::uint64_t k, std::uint64_t cap = kDefaultPointCap);

// coarsest regular partition with covering radius (step/2) <= r; k = 0 means the center alone
std::uint64_t cover_k(const BoxSpace& space, const Rational& r);
PointList cover(const BoxSpace& space, const Rational& r, std::uint64_t cap = kDefaultPointCap);
// covering radius of cover_k: step/2, or radius when k = 0
Rational cover_radius(const BoxSpace& space, std::uint64_t k);

Rational dist_to_finite_set(const Point& x, const PointList& pts);

void write_points_csv(std::ostream& os, const PointList& pts);

} // namespace aevt
