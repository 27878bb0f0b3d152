#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heegner {

enum class ErrorKind {
    DivisionByZeroSeries,
    EmptyTruncation,
    BeyondTruncation,
    UnsupportedWeight,
    NonUnitLeadingTerm,
    FractionalMonomialPower,
    NotPositiveDefinite,
    BadDiscriminant,
    BadBeta,
    DiscriminantMismatch,
    NotGamma0Form,
    NoCoprimeValue,
    UnsupportedPrime,
    InsufficientTruncation,
    NotUpperHalfPlane,
    ConvergenceFailure,
    SingularSystem,
    WindowMiss,
    InconsistentDiscriminantDependence,
    BadD,
    BadL,
    NotAdmissible,
    NotFundamental,
    NotCoprime,
    RecognitionFailure,
    Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace heegner
