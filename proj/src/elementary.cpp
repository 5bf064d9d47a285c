#include "aevt/elementary.hpp"

#include <stdexcept>

namespace aevt {

Rational round_down(const Rational& x, unsigned bits) {
    mpz_class s = ipow(2, bits);
    mpq_class q(Rational(x * Rational(s)).floor(), s);
    q.canonicalize();
    return Rational(q);
}

Rational round_up(const Rational& x, unsigned bits) {
    mpz_class s = ipow(2, bits);
    mpq_class q(Rational(x * Rational(s)).ceil(), s);
    q.canonicalize();
    return Rational(q);
}

namespace {

// enclosure of e^y for 0 <= y <= 1/2 by Taylor series; after term t_j the tail is at most 2*y*t_j
Enclosure exp_small(const Rational& y, unsigned bits) {
    Rational tlo(1), thi(1), lo(1), hi(1);
    Rational tol = Rational(1) / Rational(ipow(2, bits + 8));
    for (unsigned j = 1; j < 400; ++j) {
        tlo = round_down(tlo * y / Rational(j), bits + 16);
        thi = round_up(thi * y / Rational(j), bits + 16);
        lo += tlo;
        hi += thi;
        Rational tail = thi * y * 2;
        if (tail <= tol) return {round_down(lo, bits + 8), round_up(hi + tail, bits + 8)};
    }
    throw std::runtime_error("exp series did not converge");
}

} // namespace

Enclosure exp_enclosure(const Rational& x, unsigned bits) {
    if (x.sign() < 0) {
        Enclosure e = exp_enclosure(-x, bits);
        const auto mag = static_cast<unsigned>(mpz_sizeinbase(e.hi.ceil().get_mpz_t(), 2));
        return {round_down(Rational(1) / e.hi, bits + mag + 8), round_up(Rational(1) / e.lo, bits + mag + 8)};
    }
    unsigned s = 0;
    Rational y = x;
    while (y > Rational(1, 2)) {
        y /= 2;
        ++s;
    }
    Enclosure e = exp_small(y, bits + 2 * s + 8);
    Rational lo = e.lo, hi = e.hi;
    for (unsigned i = 0; i < s; ++i) {
        lo = round_down(lo * lo, bits + 2 * (s - i) + 8);
        hi = round_up(hi * hi, bits + 2 * (s - i) + 8);
    }
    return {lo, hi};
}

Enclosure sqrt_enclosure(const Rational& x, unsigned bits) {
    if (x.sign() < 0) throw std::domain_error("sqrt of negative");
    mpz_class scale = ipow(2, 2 * bits);
    mpz_class v = Rational(x * Rational(scale)).floor();
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    mpz_class den = ipow(2, bits);
    Rational lo(mpq_class(r, den));
    Rational hi(mpq_class(r + 1, den));
    return {lo, hi};
}

} // namespace aevt
