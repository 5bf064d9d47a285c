#pragma once

#include <stdexcept>
#include <utility>
#include <string>

namespace aevt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define AEVT_ERROR(Name)                                                  \
    struct Name : Error {                                                 \
        using Error::Error;                                               \
        const char* kind() const noexcept override { return #Name; }      \
    }

AEVT_ERROR(ConfigInvalid);
AEVT_ERROR(NotCovered);
AEVT_ERROR(EmptySet);
AEVT_ERROR(IncompatibleValues);
AEVT_ERROR(NoContraction);
AEVT_ERROR(DegenerateDiscount);
AEVT_ERROR(DivergentRollout);
AEVT_ERROR(DomainInset);

#undef AEVT_ERROR

struct CapExceeded : Error {
    CapExceeded(const std::string& what, std::string bound) : Error(what), count_bound(std::move(bound)) {}
    const char* kind() const noexcept override { return "CapExceeded"; }
    std::string count_bound;
};

struct MaxIterExceeded : Error {
    MaxIterExceeded(const std::string& what, double residual) : Error(what), residual(residual) {}
    const char* kind() const noexcept override { return "MaxIterExceeded"; }
    double residual;
};

struct StateEscape : Error {
    StateEscape(const std::string& what, std::size_t step) : Error(what), step(step) {}
    const char* kind() const noexcept override { return "StateEscape"; }
    std::size_t step;
};

} // namespace aevt
