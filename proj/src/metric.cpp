#include "aevt/metric.hpp"

#include "aevt/errors.hpp"

#include <ostream>

namespace aevt {

BoxSpace::BoxSpace(Point c, Rational r) : center(std::move(c)), radius(std::move(r)) {
    if (radius.sign() <= 0) throw std::invalid_argument("box radius must be positive");
    if (center.size() == 0) throw std::invalid_argument("box dimension must be positive");
}

BoxSpace BoxSpace::interval(const Rational& lo, const Rational& hi) { return cube(1, lo, hi); }

BoxSpace BoxSpace::cube(Eigen::Index dim, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty box");
    return BoxSpace(constant_point(dim, (lo + hi) / 2), (hi - lo) / 2);
}

bool BoxSpace::contains(const Point& x) const {
    return x.size() == dim() && dinf(x, center) <= radius;
}

mpz_class partition_size(const BoxSpace& space, std::uint64_t k) {
    return ipow(mpz_class(static_cast<unsigned long>(2 * k + 1)), static_cast<unsigned long>(space.dim()));
}

RegularPartition regular_partition(const BoxSpace& space, std::uint64_t k, std::uint64_t cap) {
    if (k == 0) throw std::invalid_argument("partition parameter k must be >= 1");
    mpz_class count = partition_size(space, k);
    if (count > mpz_class(static_cast<unsigned long>(cap)))
        throw CapExceeded("regular partition has " + count.get_str() + " points, cap " + std::to_string(cap),
                          count.get_str());
    RegularPartition p;
    p.source = space;
    p.k = k;
    p.step = space.radius / Rational(k);
    const Eigen::Index d = space.dim();
    const std::uint64_t side = 2 * k + 1;
    std::vector<Rational> offsets(side);
    for (std::uint64_t j = 0; j < side; ++j)
        offsets[j] = Rational(static_cast<long long>(j) - static_cast<long long>(k)) * p.step;
    std::vector<std::uint64_t> idx(d, 0);
    const std::uint64_t n = count.get_ui();
    p.points.reserve(n);
    for (std::uint64_t c = 0; c < n; ++c) {
        Point pt(d);
        for (Eigen::Index i = 0; i < d; ++i) pt(i) = space.center(i) + offsets[idx[i]];
        p.points.push_back(std::move(pt));
        for (Eigen::Index i = d - 1; i >= 0; --i) {
            if (++idx[i] < side) break;
            idx[i] = 0;
        }
    }
    return p;
}

std::uint64_t locate_precision(const Rational& step) {
    std::uint64_t m = ceil_nat(Rational(4) / step);
    return m < 1 ? 1 : m;
}

std::size_t locate(const Point& xm, const RegularPartition& p) {
    const Eigen::Index d = p.source.dim();
    if (xm.size() != d) throw std::invalid_argument("dimension mismatch in locate");
    const Rational half = p.step / 2;
    const long long k = static_cast<long long>(p.k);
    std::size_t index = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        Rational t = (xm(i) - p.source.center(i)) / p.step;
        mpz_class lo = Rational(t - Rational(1, 2)).ceil(), hi = Rational(t + Rational(1, 2)).floor();
        const mpz_class kz(static_cast<long>(k));
        if (lo < -kz) lo = -kz;
        if (hi > kz) hi = kz;
        if (lo > hi) throw NotCovered("point is not within step/2 of any partition point");
        long long j = lo.get_si();
        Rational dist = abs(xm(i) - (p.source.center(i) + Rational(j) * p.step));
        if (dist > half) throw NotCovered("point is not within step/2 of any partition point");
        index = index * static_cast<std::size_t>(2 * k + 1) + static_cast<std::size_t>(j + k);
    }
    return index;
}

std::size_t locate(const std::vector<CReal>& x, const RegularPartition& p) {
    const std::uint64_t m = locate_precision(p.step);
    Point xm(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) xm(static_cast<Eigen::Index>(i)) = x[i](m);
    return locate(xm, p);
}

RegularPartition finite_approximation(const BoxSpace& space, std::uint64_t k, std::uint64_t cap) {
    if (k == 0) throw std::invalid_argument("approximation parameter k must be >= 1");
    std::uint64_t kk = ceil_nat(space.radius * Rational(k));
    return regular_partition(space, kk < 1 ? 1 : kk, cap);
}

std::uint64_t cover_k(const BoxSpace& space, const Rational& r) {
    if (r.sign() <= 0) throw std::invalid_argument("cover radius must be positive");
    if (space.radius <= r) return 0;
    return ceil_nat(space.radius / (2 * r));
}

Rational cover_radius(const BoxSpace& space, std::uint64_t k) {
    if (k == 0) return space.radius;
    return space.radius / Rational(2 * k);
}

PointList cover(const BoxSpace& space, const Rational& r, std::uint64_t cap) {
    std::uint64_t k = cover_k(space, r);
    if (k == 0) return {space.center};
    return regular_partition(space, k, cap).points;
}

Rational dist_to_finite_set(const Point& x, const PointList& pts) {
    if (pts.empty()) throw EmptySet("distance to an empty set");
    Rational best = dinf(x, pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Rational d = dinf(x, pts[i]);
        if (d < best) best = d;
    }
    return best;
}

void write_points_csv(std::ostream& os, const PointList& pts) {
    const Eigen::Index d = pts.empty() ? 0 : pts.front().size();
    for (Eigen::Index i = 0; i < d; ++i) os << (i ? "," : "") << "x" << i;
    os << "\n";
    for (const auto& p : pts) {
        for (Eigen::Index i = 0; i < d; ++i) os << (i ? "," : "") << p(i).to_string();
        os << "\n";
    }
}

} // namespace aevt
