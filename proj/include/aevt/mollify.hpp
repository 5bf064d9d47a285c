#pragma once

#include "aevt/funcspace.hpp"

#include <functional>

namespace aevt {

// a * sigma(1 - |x|_2^2) with sigma(t) = exp(-1/t^2) for t > 0, scaled by k
struct MollifierKernel {
    unsigned dim = 1;
    std::uint64_t k = 1;
    std::uint64_t quad_points = 0; // midpoint lattice points per axis over [-1, 1], odd
    Rational a;                    // normalization, 1 / (lattice sum of sigma * h^n)
    Rational h;                    // lattice step 2 / quad_points
    Rational quad_tol;             // bound on |lattice integral - true integral| of the kernel
    PointList nodes;               // lattice points inside the open unit ball
    std::vector<Rational> weights; // nonnegative dyadics summing to exactly 1
};

MollifierKernel make_kernel(unsigned dim, std::uint64_t k, std::uint64_t quad_points);

// sigma(t) enclosure midpoint, 0 for t <= 0
Rational sigma(const Rational& t);
Rational bump(const Point& x, const MollifierKernel& kernel);

struct MollifiedValue {
    Rational value;
    Rational error; // reported quadrature error against the exact convolution
};

class Mollified {
public:
    Mollified(ScalarField f, Rational lip, Rational bound, BoxSpace domain, MollifierKernel kernel);
    // throws DomainInset when x is within 1/k of the boundary of the domain
    MollifiedValue eval(const Point& x) const;
    Rational operator()(const Point& x) const { return eval(x).value; }
    const MollifierKernel& kernel() const { return kernel_; }
    const BoxSpace& domain() const { return domain_; }

private:
    ScalarField f_;
    Rational lip_, bound_;
    BoxSpace domain_;
    MollifierKernel kernel_;
};

Mollified mollify(const PWLFunction& f, const BoxSpace& domain, std::uint64_t k, std::uint64_t quad_points);
Mollified mollify(ScalarField f, const Rational& lip, const Rational& bound, const BoxSpace& domain, std::uint64_t k,
                  std::uint64_t quad_points);

} // namespace aevt
