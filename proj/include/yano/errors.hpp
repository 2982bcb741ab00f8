#pragma once

#include <stdexcept>
#include <string>

namespace yano {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// validation of class parameters
struct RangeViolation : Error {
    explicit RangeViolation(const std::string& what) : Error(what) {}
};
struct GcdViolation : Error {
    explicit GcdViolation(const std::string& what) : Error(what) {}
};

// arithmetic
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// monomial exponent solver
struct NoPositiveSolution : Error {
    explicit NoPositiveSolution(const std::string& what) : Error(what) {}
};

// series engine
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error(what) {}
};
struct OrderUnderflow : Error {
    explicit OrderUnderflow(const std::string& what) : Error(what) {}
};
struct NonpositiveConstantTerm : Error {
    explicit NonpositiveConstantTerm(const std::string& what) : Error(what) {}
};

// continuation / quadrature
struct AtPole : Error {
    explicit AtPole(const std::string& what) : Error(what) {}
};
struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& what) : Error(what) {}
};
struct DoublePole : Error {
    explicit DoublePole(const std::string& what) : Error(what) {}
};
struct NotADoublePole : Error {
    explicit NotADoublePole(const std::string& what) : Error(what) {}
};

// model pipelines
struct PositivityLost : Error {
    explicit PositivityLost(const std::string& what) : Error(what) {}
};
struct TruncationInsufficient : Error {
    explicit TruncationInsufficient(const std::string& what) : Error(what) {}
};
struct Inconclusive : Error {
    explicit Inconclusive(const std::string& what) : Error(what) {}
};

} // namespace yano
