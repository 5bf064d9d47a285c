#include "aevt/mollify.hpp"

#include "aevt/elementary.hpp"
#include "aevt/errors.hpp"

namespace aevt {

namespace {

constexpr unsigned kWeightBits = 64;

Rational norm2_sq(const Point& x) {
    Rational s(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * x(i);
    return s;
}

// upper bound for sqrt(n) over the lattice error constant
Rational sqrt_upper(unsigned n) { return sqrt_enclosure(Rational(static_cast<long>(n)), 32).hi; }

} // namespace

Rational sigma(const Rational& t) {
    if (t.sign() <= 0) return Rational(0);
    Rational y = Rational(1) / (t * t);
    if (y > Rational(100)) return Rational(0);
    return exp_enclosure(-y, 80).mid();
}

MollifierKernel make_kernel(unsigned dim, std::uint64_t k, std::uint64_t quad_points) {
    if (dim == 0 || k == 0) throw std::invalid_argument("kernel needs dim >= 1 and k >= 1");
    if (quad_points % 2 == 0) throw std::invalid_argument("quad_points must be odd");
    MollifierKernel K;
    K.dim = dim;
    K.k = k;
    K.quad_points = quad_points;
    K.h = Rational(2) / Rational(quad_points);

    std::vector<Rational> sig;
    std::size_t center = 0;
    std::vector<std::uint64_t> idx(dim, 0);
    for (;;) {
        Point p(dim);
        for (unsigned i = 0; i < dim; ++i) p(i) = Rational(-1) + (Rational(idx[i]) + Rational(1, 2)) * K.h;
        Rational s = sigma(1 - norm2_sq(p));
        if (s.sign() > 0) {
            if (norm2_sq(p).is_zero()) center = K.nodes.size();
            K.nodes.push_back(p);
            sig.push_back(s);
        }
        unsigned i = dim;
        while (i > 0 && ++idx[i - 1] == quad_points) idx[--i] = 0;
        if (i == 0) break;
    }
    Rational total(0);
    for (const auto& s : sig) total += s;
    K.a = Rational(1) / (total * pow(K.h, dim));

    Rational wsum(0);
    K.weights.reserve(sig.size());
    for (const auto& s : sig) {
        K.weights.push_back(round_dyadic(s / total, kWeightBits));
        wsum += K.weights.back();
    }
    K.weights[center] += 1 - wsum;

    // |grad theta| <= a * max|sigma'| * 2 <= a * 33/20, midpoint error per cell <= that * sqrt(n) h / 2, volume 2^n
    K.quad_tol = K.a * Rational(33, 20) * sqrt_upper(dim) * K.h / 2 * pow(Rational(2), dim);
    return K;
}

Rational bump(const Point& x, const MollifierKernel& kernel) { return kernel.a * sigma(1 - norm2_sq(x)); }

Mollified::Mollified(ScalarField f, Rational lip, Rational bound, BoxSpace domain, MollifierKernel kernel)
    : f_(std::move(f)), lip_(std::move(lip)), bound_(std::move(bound)), domain_(std::move(domain)),
      kernel_(std::move(kernel)) {}

MollifiedValue Mollified::eval(const Point& x) const {
    const Rational inv_k = Rational(1) / Rational(kernel_.k);
    if (x.size() != domain_.dim()) throw std::invalid_argument("point dimension does not match the domain");
    if (domain_.radius < inv_k || dinf(x, domain_.center) > domain_.radius - inv_k)
        throw DomainInset("point is within 1/k of the domain boundary");
    Rational v(0);
    for (std::size_t j = 0; j < kernel_.nodes.size(); ++j) v += kernel_.weights[j] * f_(x - kernel_.nodes[j] * inv_k);
    // kernel normalization error times sup|f| plus the integrand variation from f within one cell
    Rational err = kernel_.quad_tol * bound_ +
                   lip_ * inv_k * kernel_.a * sqrt_upper(kernel_.dim) * kernel_.h / 2 * pow(Rational(2), kernel_.dim);
    return {v, err};
}

Mollified mollify(ScalarField f, const Rational& lip, const Rational& bound, const BoxSpace& domain, std::uint64_t k,
                  std::uint64_t quad_points) {
    return Mollified(std::move(f), lip, bound, domain,
                     make_kernel(static_cast<unsigned>(domain.dim()), k, quad_points));
}

Mollified mollify(const PWLFunction& f, const BoxSpace& domain, std::uint64_t k, std::uint64_t quad_points) {
    return mollify([f](const Point& x) { return f(x); }, f.lip(), f.bound(), domain, k, quad_points);
}

} // namespace aevt
