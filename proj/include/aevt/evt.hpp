#pragma once

#include "aevt/creal.hpp"
#include "aevt/funcspace.hpp"
#include "aevt/modulus.hpp"

#include <functional>

namespace aevt {

struct Functional {
    std::function<CReal(const PWLFunction&)> eval;
    Modulus modulus;
    // eval returns exact rationals, so probing at 8k carries no error
    bool exact_values = false;
};

struct ExtremumResult {
    PWLFunction member;
    Rational value;
    std::size_t member_index = 0;
    std::uint64_t k = 0;
    std::size_t net_size = 0;
    Rational net_precision;
    NetParams params;
};

// the member with the smallest J(8k) over an alpha(1/k - 2e)-net, e the probe error at 8k;
// J[f_j] - 1/k <= J[f] for every f in F
ExtremumResult approx_inf(const Functional& J, const LipschitzSpaceDesc& space, std::uint64_t k, std::uint64_t cap,
                          unsigned workers = 1);
ExtremumResult approx_sup(const Functional& J, const LipschitzSpaceDesc& space, std::uint64_t k, std::uint64_t cap,
                          unsigned workers = 1);

// precision of the net searched by approx_inf
Rational search_precision(const Functional& J, std::uint64_t k);

Functional negate(const Functional& J);

// max of g over an omega(1/2k)-approximation of U; within 1/(2k) below sup g
Rational approx_sup_over_set(const ScalarField& g, const BoxSpace& U, const Modulus& omega, std::uint64_t k);
Rational approx_sup_over_points(const ScalarField& g, const PointList& pts);

// eps -> omega(eps/3)
Modulus sup_modulus(const Modulus& omega);

} // namespace aevt
