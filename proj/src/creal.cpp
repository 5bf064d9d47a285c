#include "aevt/creal.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace aevt {

struct CReal::Impl {
    Fn fn;
    std::optional<Rational> exact;
    std::mutex mu;
    std::unordered_map<std::uint64_t, Rational> memo;
};

CReal::CReal() : CReal(from_rational(Rational(0))) {}

CReal CReal::from_rational(const Rational& q) {
    auto impl = std::make_shared<Impl>();
    impl->exact = q;
    return CReal(std::move(impl));
}

CReal CReal::from_fn(Fn f) {
    auto impl = std::make_shared<Impl>();
    impl->fn = std::move(f);
    return CReal(std::move(impl));
}

Rational CReal::approx(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("precision index must be >= 1");
    if (impl_->exact) return *impl_->exact;
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->memo.find(n);
        if (it != impl_->memo.end()) return it->second;
    }
    Rational v = impl_->fn(n);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->memo.emplace(n, std::move(v)).first->second;
}

const std::optional<Rational>& CReal::exact() const { return impl_->exact; }

CReal from_rational(const Rational& q) { return CReal::from_rational(q); }

CReal add(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return from_rational(*x.exact() + *y.exact());
    return CReal::from_fn([x, y](std::uint64_t n) { return x(2 * n) + y(2 * n); });
}

CReal neg(const CReal& x) {
    if (x.exact()) return from_rational(-*x.exact());
    return CReal::from_fn([x](std::uint64_t n) { return -x(n); });
}

CReal sub(const CReal& x, const CReal& y) { return add(x, neg(y)); }

CReal mul(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return from_rational(*x.exact() * *y.exact());
    Rational bx = abs(x(1)) + 2, by = abs(y(1)) + 2;
    std::uint64_t b = ceil_nat(max(bx, by));
    return CReal::from_fn([x, y, b](std::uint64_t n) { return x(2 * b * n) * y(2 * b * n); });
}

CReal cmax(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return from_rational(max(*x.exact(), *y.exact()));
    return CReal::from_fn([x, y](std::uint64_t n) { return max(x(n), y(n)); });
}

CReal cmin(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return from_rational(min(*x.exact(), *y.exact()));
    return CReal::from_fn([x, y](std::uint64_t n) { return min(x(n), y(n)); });
}

ComparisonWitness lt_witness(const CReal& x, const CReal& y, std::uint64_t cap) {
    if (cap == 0) throw std::invalid_argument("cap must be >= 1");
    for (std::uint64_t n = 1;; n = n > cap / 2 ? cap : 2 * n) {
        if (x(n) < y(n) - Rational(2) / Rational(n)) return {ComparisonWitness::Kind::LessWitnessed, n};
        if (n == cap) break;
    }
    return {ComparisonWitness::Kind::Inconclusive, cap};
}

bool le_upto(const CReal& x, const CReal& y, std::uint64_t n) {
    for (std::uint64_t m = 1; m <= n; ++m)
        if (x(m) > y(m) + Rational(2) / Rational(m)) return false;
    return true;
}

} // namespace aevt
