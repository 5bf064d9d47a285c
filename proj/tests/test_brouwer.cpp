#include "aevt/brouwer.hpp"

#include "doctest.h"

using namespace aevt;

TEST_SUITE("brouwer") {
    TEST_CASE("b and c from the sequence") {
        auto zero = bc_reals(BrouwerSequence{});
        for (std::uint64_t n : {1, 10, 1000}) {
            CHECK(zero.b(n) == 0);
            CHECK(zero.c(n) == 0);
        }
        auto odd = bc_reals(BrouwerSequence(7)); // 7 = 2*3 + 1
        CHECK(odd.b(3) == 0);
        CHECK(odd.b(4) == Rational(1, 16));
        CHECK(odd.c(100) == 0);
        auto even = bc_reals(BrouwerSequence(6)); // 6 = 2*3
        CHECK(even.c(3) == 0);
        CHECK(even.c(4) == Rational(1, 16));
        CHECK(even.b(100) == 0);
        CHECK(bc_reals(BrouwerSequence(1)).b(1) == Rational(1, 4));
        CHECK_THROWS_AS(BrouwerSequence(0), std::invalid_argument);

        for (std::uint64_t n = 1; n < 12; ++n)
            for (std::uint64_t m = 1; m < 12; ++m)
                CHECK(abs(odd.b(n) - odd.b(m)) <= Rational(1) / Rational(n) + Rational(1) / Rational(m));
    }

    TEST_CASE("switched system") {
        auto z = bc_reals(BrouwerSequence{});
        SwitchedRun r = switched_sim(z.b, z.c, 8, 10);
        Rational oracle(0), term(1);
        for (int k = 0; k < 10; ++k, term /= 4) oracle += term;
        CHECK(r.cost == oracle);
        for (int u : r.policy) CHECK(u == 1);

        auto late = bc_reals(BrouwerSequence((1u << 20) + 1));
        SwitchedRun lo = switched_sim(late.b, late.c, 4, 5);
        SwitchedRun hi = switched_sim(late.b, late.c, 1u << 22, 5);
        for (int u : lo.policy) CHECK(u == 1);
        for (int u : hi.policy) CHECK(u == -1);
        CHECK(hi.b_approx == Rational(1) / Rational(4 * ((1u << 19) + 1)));
        CHECK(hi.c_approx == 0);
        CHECK(hi.cost <= lo.cost);
    }

    TEST_CASE("two-well value") {
        auto z = bc_reals(BrouwerSequence{});
        for (std::uint64_t k : {1, 4, 16}) {
            TwoWellResult r = two_well_min(z.b, z.c, k);
            CHECK(r.value == 0);
            CHECK(r.precision == 4 * k);
        }
        auto one = bc_reals(BrouwerSequence(1));
        TwoWellResult r = two_well_min(one.b, one.c, 4);
        CHECK(r.value == 0);
        CHECK(r.argmin == 1);
        CHECK_THROWS_AS(two_well_min(z.b, z.c, 4, 15), std::invalid_argument);

        auto late = bc_reals(BrouwerSequence((1u << 20) + 1));
        CHECK(abs(two_well_min(late.b, late.c, 4).value - two_well_min(late.b, late.c, 4, 1u << 22).value) <= Rational(1, 4));
    }
}
