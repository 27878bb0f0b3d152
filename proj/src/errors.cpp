#include "heegner/errors.hpp"

namespace heegner {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorKind::EmptyTruncation: return "EmptyTruncation";
    case ErrorKind::BeyondTruncation: return "BeyondTruncation";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::NonUnitLeadingTerm: return "NonUnitLeadingTerm";
    case ErrorKind::FractionalMonomialPower: return "FractionalMonomialPower";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::BadDiscriminant: return "BadDiscriminant";
    case ErrorKind::BadBeta: return "BadBeta";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::NotGamma0Form: return "NotGamma0Form";
    case ErrorKind::NoCoprimeValue: return "NoCoprimeValue";
    case ErrorKind::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::NotUpperHalfPlane: return "NotUpperHalfPlane";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::WindowMiss: return "WindowMiss";
    case ErrorKind::InconsistentDiscriminantDependence: return "InconsistentDiscriminantDependence";
    case ErrorKind::BadD: return "BadD";
    case ErrorKind::BadL: return "BadL";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::RecognitionFailure: return "RecognitionFailure";
    case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

} // namespace heegner
