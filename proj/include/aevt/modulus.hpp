#pragma once

#include "aevt/rational.hpp"

#include <functional>
#include <optional>

namespace aevt {

// uniform-continuity modulus eps -> delta; lip is set when it comes from a Lipschitz constant
struct Modulus {
    std::function<Rational(const Rational&)> map;
    std::optional<Rational> lip;

    Rational operator()(const Rational& eps) const { return map(eps); }

    static Modulus lipschitz(const Rational& L);
    static Modulus identity() { return lipschitz(Rational(1)); }
    // for constant maps; delta is returned for every eps
    static Modulus unbounded(const Rational& delta);
};

// min of two moduli after rescaling their inputs: eps -> min(a(eps*sa), b(eps*sb))
Modulus combine_min(const Modulus& a, const Rational& sa, const Modulus& b, const Rational& sb);

} // namespace aevt
