#pragma once

#include "aevt/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

namespace aevt {

// A real number given by a regular sequence n -> x(n) of rationals,
// |x(n) - x(m)| <= 1/n + 1/m. Approximations are memoized; copies share state.
class CReal {
public:
    using Fn = std::function<Rational(std::uint64_t)>;

    CReal();
    static CReal from_rational(const Rational& q);
    // f is trusted to be regular and is probed only at n >= 1
    static CReal from_fn(Fn f);

    Rational approx(std::uint64_t n) const;
    Rational operator()(std::uint64_t n) const { return approx(n); }
    const std::optional<Rational>& exact() const;

private:
    struct Impl;
    explicit CReal(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

CReal from_rational(const Rational& q);
CReal add(const CReal& x, const CReal& y);
CReal neg(const CReal& x);
CReal sub(const CReal& x, const CReal& y);
CReal mul(const CReal& x, const CReal& y);
CReal cmax(const CReal& x, const CReal& y);
CReal cmin(const CReal& x, const CReal& y);

inline CReal operator+(const CReal& x, const CReal& y) { return add(x, y); }
inline CReal operator-(const CReal& x, const CReal& y) { return sub(x, y); }
inline CReal operator-(const CReal& x) { return neg(x); }
inline CReal operator*(const CReal& x, const CReal& y) { return mul(x, y); }

struct ComparisonWitness {
    enum class Kind { LessWitnessed, Inconclusive };
    Kind kind;
    std::uint64_t n;
    bool witnessed() const { return kind == Kind::LessWitnessed; }
};

// searches n = 1, 2, 4, ... <= cap for x(n) < y(n) - 2/n
ComparisonWitness lt_witness(const CReal& x, const CReal& y, std::uint64_t cap);

// x(m) <= y(m) + 2/m for m = 1..n
bool le_upto(const CReal& x, const CReal& y, std::uint64_t n);

} // namespace aevt
