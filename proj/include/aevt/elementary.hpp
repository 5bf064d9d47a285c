#pragma once

#include "aevt/rational.hpp"

namespace aevt {

struct Enclosure {
    Rational lo, hi;
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

// lo <= e^x <= hi, relative width about 2^-bits
Enclosure exp_enclosure(const Rational& x, unsigned bits = 96);
inline Rational exp_upper(const Rational& x) { return exp_enclosure(x).hi; }
inline Rational exp_lower(const Rational& x) { return exp_enclosure(x).lo; }

// lo <= sqrt(x) <= hi with hi - lo <= 2^-bits, x >= 0
Enclosure sqrt_enclosure(const Rational& x, unsigned bits = 64);

Rational round_down(const Rational& x, unsigned bits);
Rational round_up(const Rational& x, unsigned bits);

} // namespace aevt
