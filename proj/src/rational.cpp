#include "aevt/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

namespace aevt {

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t(1) << 62;

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        if (a < (u128(1) << 64) && b < (u128(1) << 64)) {
            std::uint64_t x = std::uint64_t(a), y = std::uint64_t(b);
            while (y != 0) {
                std::uint64_t t = x % y;
                x = y;
                y = t;
            }
            return x;
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class from_u128(u128 v) {
    mpz_class r;
    std::uint64_t limbs[2] = {std::uint64_t(v), std::uint64_t(v >> 64)};
    mpz_import(r.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    return r;
}

bool fits_small(const mpz_class& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad(std::string_view s) {
    throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
}

} // namespace

Rational::Rational(unsigned long v) : Rational(static_cast<unsigned long long>(v)) {}

Rational::Rational(unsigned long long v) {
    if (v < std::uint64_t(kSmallLimit))
        n_ = std::int64_t(v);
    else
        assign(mpq_class(mpz_class(std::to_string(v))));
}

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    assign128(num, den);
}

Rational::Rational(const mpz_class& v) { assign(mpq_class(v)); }

Rational::Rational(const mpq_class& v) {
    mpq_class q(v);
    q.canonicalize();
    assign(q);
}

void Rational::assign(const mpq_class& q) {
    if (fits_small(q.get_num()) && fits_small(q.get_den())) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_shared<const mpq_class>(q);
    }
}

void Rational::assign128(__int128 num, __int128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    bool neg = num < 0;
    u128 un = neg ? u128(-num) : u128(num);
    u128 ud = u128(den);
    if (un == 0) {
        n_ = 0;
        d_ = 1;
        big_.reset();
        return;
    }
    u128 g = gcd128(un, ud);
    un /= g;
    ud /= g;
    if (un < u128(kSmallLimit) && ud < u128(kSmallLimit)) {
        n_ = neg ? -std::int64_t(un) : std::int64_t(un);
        d_ = std::int64_t(ud);
        big_.reset();
        return;
    }
    mpq_class q;
    q.get_num() = from_u128(un);
    if (neg) q.get_num() = -q.get_num();
    q.get_den() = from_u128(ud);
    n_ = 0;
    d_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(s);
    std::string_view body = s;
    bool neg = false;
    if (body.front() == '-' || body.front() == '+') {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) bad(s);
        mpz_class den(std::string(q), 10);
        if (den == 0) bad(s);
        mpq_class r(mpz_class(std::string(p), 10), den);
        r.canonicalize();
        if (neg) r = -r;
        return Rational(r);
    }
    std::string_view mant = body, expo;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        mant = body.substr(0, e);
        expo = body.substr(e + 1);
    }
    std::string_view ip = mant, fp;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
        ip = mant.substr(0, dot);
        fp = mant.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) bad(s);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(s);
    long ex = 0;
    if (!expo.empty() || body.find_first_of("eE") != std::string_view::npos) {
        std::string_view es = expo;
        bool eneg = false;
        if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) bad(s);
        ex = std::stol(std::string(es), nullptr, 10);
        if (eneg) ex = -ex;
    }
    mpz_class digits(std::string(ip) + std::string(fp) + (ip.empty() && fp.empty() ? "0" : ""), 10);
    ex -= long(fp.size());
    mpq_class r(digits);
    mpz_class scale = ipow(10, static_cast<unsigned long>(ex < 0 ? -ex : ex));
    if (ex < 0)
        r /= scale;
    else
        r *= scale;
    r.canonicalize();
    if (neg) r = -r;
    return Rational(r);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    q.get_num() = static_cast<long>(n_);
    q.get_den() = static_cast<long>(d_);
    return q;
}

mpz_class Rational::num() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::den() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(d_)); }

std::string Rational::to_string() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return double(n_) / double(d_);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    if (big_)
        r.assign(-*big_);
    else {
        r.n_ = -n_;
        r.d_ = d_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (d_ == o.d_) {
            assign128(__int128(n_) + o.n_, d_);
        } else {
            assign128(__int128(n_) * o.d_ + __int128(o.n_) * d_, __int128(d_) * o.d_);
        }
        return *this;
    }
    assign(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (d_ == o.d_) {
            assign128(__int128(n_) - o.n_, d_);
        } else {
            assign128(__int128(n_) * o.d_ - __int128(o.n_) * d_, __int128(d_) * o.d_);
        }
        return *this;
    }
    assign(to_mpq() - o.to_mpq());
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        assign128(__int128(n_) * o.n_, __int128(d_) * o.d_);
        return *this;
    }
    assign(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!big_ && !o.big_) {
        assign128(__int128(n_) * o.d_, __int128(d_) * o.n_);
        return *this;
    }
    assign(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == b.d_) return a.n_ <=> b.n_;
        __int128 l = __int128(a.n_) * b.d_, r = __int128(b.n_) * a.d_;
        return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, unsigned e) {
    Rational r(1), b = x;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

Rational from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite double");
    return Rational(mpq_class(v));
}

std::uint64_t ceil_nat(const Rational& x) {
    mpz_class c = x.ceil();
    if (c < 0) return 0;
    if (!c.fits_ulong_p()) throw std::overflow_error("natural out of range: " + x.to_string());
    return c.get_ui();
}

std::uint64_t floor_nat(const Rational& x) {
    mpz_class c = x.floor();
    if (c < 0) return 0;
    if (!c.fits_ulong_p()) throw std::overflow_error("natural out of range: " + x.to_string());
    return c.get_ui();
}

Rational round_dyadic(const Rational& x, unsigned bits) {
    mpz_class scale = ipow(2, bits);
    mpq_class s = x.to_mpq() * scale;
    mpz_class twice = 2 * s.get_num(), q;
    mpz_class den2 = 2 * s.get_den();
    if (sgn(twice) >= 0)
        mpz_fdiv_q(q.get_mpz_t(), mpz_class(twice + s.get_den()).get_mpz_t(), den2.get_mpz_t());
    else
        mpz_cdiv_q(q.get_mpz_t(), mpz_class(twice - s.get_den()).get_mpz_t(), den2.get_mpz_t());
    mpq_class r(q, scale);
    r.canonicalize();
    return Rational(r);
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace aevt
