#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regval {

// Base class for every error raised by the library. `kind()` is the stable
// identifier used in reports and tests.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }
    // what() without the kind prefix
    std::string message() const { return std::string(what()).substr(kind_.size() + 2); }

private:
    std::string kind_;
};

#define REGVAL_ERROR(Name)                                                     \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

// fields
REGVAL_ERROR(DescriptorMismatch)
REGVAL_ERROR(DivisionByZero)
REGVAL_ERROR(NoCanonicalEmbedding)
REGVAL_ERROR(InvalidField)
// polynomials
REGVAL_ERROR(RingMismatch)
REGVAL_ERROR(UnknownVariable)
REGVAL_ERROR(ExponentOverflow)
// groebner
REGVAL_ERROR(BudgetExceeded)
REGVAL_ERROR(ZeroDivisorInput)
// valuation rings
REGVAL_ERROR(ZeroDenominator)
REGVAL_ERROR(UnitInput)
REGVAL_ERROR(ZeroInput)
REGVAL_ERROR(ZeroPrimeInput)
REGVAL_ERROR(NegativeValue)
REGVAL_ERROR(UncountableBaseUnsupported)
REGVAL_ERROR(InvalidValuation)
// algebras and points
REGVAL_ERROR(InvalidAlgebra)
REGVAL_ERROR(EmptyFibre)
REGVAL_ERROR(PointNotOnFibre)
REGVAL_ERROR(InconsistentBasePrime)
REGVAL_ERROR(UnsupportedResidueField)
// theorem layer
REGVAL_ERROR(ColonFailed)
REGVAL_ERROR(PreconditionViolated)
// scenarios
REGVAL_ERROR(InvalidScenario)

#undef REGVAL_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : Error("SyntaxError", "at " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace regval
