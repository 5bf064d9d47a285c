#include "aevt/modulus.hpp"

#include <stdexcept>

namespace aevt {

Modulus Modulus::lipschitz(const Rational& L) {
    if (L.sign() < 0) throw std::invalid_argument("negative Lipschitz constant");
    if (L.is_zero()) return unbounded(Rational(1'000'000));
    return {[L](const Rational& e) { return e / L; }, L};
}

Modulus Modulus::unbounded(const Rational& delta) {
    return {[delta](const Rational&) { return delta; }, Rational(0)};
}

Modulus combine_min(const Modulus& a, const Rational& sa, const Modulus& b, const Rational& sb) {
    std::optional<Rational> lip;
    if (a.lip && b.lip) lip = max(*a.lip / sa, *b.lip / sb);
    return {[a, sa, b, sb](const Rational& e) { return min(a(e * sa), b(e * sb)); }, lip};
}

} // namespace aevt
