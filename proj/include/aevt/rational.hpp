#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aevt {

// Exact rational in canonical form. Values whose numerator and denominator fit
// in int64 are stored inline; anything larger lives in a shared immutable mpq.
class Rational {
public:
    Rational() = default;
    Rational(int v) : n_(v) {}
    Rational(long v) : n_(v) {}
    Rational(long long v) : n_(v) {}
    Rational(unsigned v) : n_(v) {}
    Rational(unsigned long v);
    Rational(unsigned long long v);
    Rational(long long num, long long den);
    explicit Rational(const mpz_class& v);
    explicit Rational(const mpq_class& v);

    // accepts "p/q", "-p/q", integers and decimals such as "0.125" or "-1e-3"
    static Rational parse(std::string_view s);

    bool small() const { return !big_; }
    mpq_class to_mpq() const;
    mpz_class num() const;
    mpz_class den() const;
    std::string to_string() const;
    double to_double() const;
    int sign() const;
    bool is_zero() const { return small() && n_ == 0; }
    bool is_integer() const;

    mpz_class floor() const;
    mpz_class ceil() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    void assign(const mpq_class& q);
    void assign128(__int128 num, __int128 den);

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& x, unsigned e);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
std::ostream& operator<<(std::ostream& os, const Rational& x);

// exact conversion of a finite double
Rational from_double(double v);

// smallest natural >= x, for x >= 0; throws std::overflow_error past uint64
std::uint64_t ceil_nat(const Rational& x);
std::uint64_t floor_nat(const Rational& x);

// round x to a multiple of 2^-bits (nearest, ties away from zero)
Rational round_dyadic(const Rational& x, unsigned bits);

mpz_class ipow(const mpz_class& b, unsigned long e);

} // namespace aevt
