#include "aevt/brouwer.hpp"

namespace aevt {

BrouwerSequence::BrouwerSequence(std::optional<std::uint64_t> one_index) : one_index_(one_index) {
    if (one_index_ && *one_index_ == 0) throw std::invalid_argument("one_index starts at 1");
}

BCReals bc_reals(const BrouwerSequence& seq) {
    auto partial = [seq](std::uint64_t first_i, std::uint64_t offset) {
        return CReal::from_fn([seq, first_i, offset](std::uint64_t n) {
            Rational s(0);
            for (std::uint64_t i = first_i; i < n; ++i)
                if (seq.term(2 * i + offset)) s += Rational(1) / Rational(4 * (i + 1));
            return s;
        });
    };
    return {partial(0, 1), partial(1, 0)};
}

SwitchedRun switched_sim(const CReal& b, const CReal& c, std::uint64_t precision, std::uint64_t horizon) {
    if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
    SwitchedRun run;
    run.precision = precision;
    run.b_approx = b.approx(precision);
    run.c_approx = c.approx(precision);
    if (run.b_approx >= Rational(1, 4) || run.c_approx >= Rational(1, 4))
        throw std::invalid_argument("b and c approximations must lie below 1/4");
    const bool pick_b = run.b_approx <= run.c_approx;
    const Rational m = Rational(1, 2) + (pick_b ? run.b_approx : run.c_approx);
    Rational x(1), cost(0);
    for (std::uint64_t k = 0; k < horizon; ++k) {
        run.policy.push_back(pick_b ? 1 : -1);
        cost += x * x;
        x *= m;
    }
    run.cost = cost;
    return run;
}

TwoWellResult two_well_min(const CReal& b, const CReal& c, std::uint64_t k, std::uint64_t precision) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (precision == 0) precision = 4 * k;
    if (precision < 4 * k) throw std::invalid_argument("precision must be at least 4k");
    const Rational bb = b.approx(precision), cc = c.approx(precision);
    const Rational step = Rational(1) / Rational(4 * k);
    TwoWellResult res;
    res.precision = precision;
    const std::uint64_t cells = 12 * k;
    for (std::uint64_t j = 0; j <= cells; ++j) {
        Rational u = Rational(-1) + Rational(j) * step;
        Rational v = min(u * u + bb, (u - 1) * (u - 1) + cc);
        if (j == 0 || v < res.value) {
            res.value = v;
            res.argmin = u;
        }
    }
    return res;
}

} // namespace aevt
