#pragma once

#include "aevt/creal.hpp"

#include <optional>
#include <vector>

namespace aevt {

// binary sequence with at most one 1, at position one_index (>= 1)
class BrouwerSequence {
public:
    BrouwerSequence() = default;
    explicit BrouwerSequence(std::optional<std::uint64_t> one_index);
    // a_i, readable only term by term
    int term(std::uint64_t i) const { return one_index_ && *one_index_ == i ? 1 : 0; }

private:
    std::optional<std::uint64_t> one_index_;
};

struct BCReals {
    CReal b, c;
};

// b = 1/4 sum_i a_{2i+1}/(i+1), c = 1/4 sum_{i>=1} a_{2i}/(i+1); n-th approximation sums i < n
BCReals bc_reals(const BrouwerSequence& seq);

struct SwitchedRun {
    std::vector<int> policy; // +1 picks the b-mode, -1 the c-mode
    Rational cost;           // sum_{k < horizon} x_k^2
    Rational b_approx, c_approx;
    std::uint64_t precision = 0;
};

// x_{k+1} = (1/2 + b) x_k for u = 1, (1/2 + c) x_k for u = -1, x_0 = 1; u chosen by comparing b(precision), c(precision)
SwitchedRun switched_sim(const CReal& b, const CReal& c, std::uint64_t precision, std::uint64_t horizon);

struct TwoWellResult {
    Rational value;  // value - 1/k <= inf J
    Rational argmin; // grid point attaining value; carries no guarantee
    std::uint64_t precision = 0;
};

// approximate min of J(u) = min{u^2 + b, (u - 1)^2 + c} over [-1, 2] on a 1/(4k) grid,
// reading b and c at precision >= 4k (0 means 4k)
TwoWellResult two_well_min(const CReal& b, const CReal& c, std::uint64_t k, std::uint64_t precision = 0);

} // namespace aevt
