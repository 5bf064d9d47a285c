#pragma once

#include "aevt/rational.hpp"

#include <Eigen/Core>

#include <limits>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<aevt::Rational> : GenericNumTraits<aevt::Rational> {
    typedef aevt::Rational Real;
    typedef aevt::Rational NonInteger;
    typedef aevt::Rational Nested;
    typedef aevt::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 16
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    static inline Real highest() { return Real(std::numeric_limits<long long>::max()); }
    static inline Real lowest() { return Real(std::numeric_limits<long long>::min() + 1); }
};

} // namespace Eigen

namespace aevt {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = Vec<Rational>;
using RMat = Mat<Rational>;
using PointList = std::vector<Point>;

inline Point point(std::initializer_list<Rational> xs) {
    Point p(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs) p(i++) = x;
    return p;
}

inline Point constant_point(Eigen::Index dim, const Rational& v) { return Point::Constant(dim, v); }

template <typename Scalar>
Scalar dinf(const Vec<Scalar>& a, const Vec<Scalar>& b) {
    using std::abs;
    Scalar m(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        Scalar d = abs(Scalar(a(i) - b(i)));
        if (m < d) m = d;
    }
    return m;
}

template <typename Scalar>
Scalar norm_inf(const Vec<Scalar>& a) {
    using std::abs;
    Scalar m(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        Scalar d = abs(Scalar(a(i)));
        if (m < d) m = d;
    }
    return m;
}

inline Vec<double> to_double(const Point& p) {
    Vec<double> r(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) r(i) = p(i).to_double();
    return r;
}

// exact inverse of a small square matrix by Gauss-Jordan elimination
RMat inverse(const RMat& m);

} // namespace aevt
