#include "genusbound/error.hpp"

namespace genusbound {

const char *to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotADiscriminant: return "NotADiscriminant";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::GenusCrossCheckFailed: return "GenusCrossCheckFailed";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::NonpositiveInput: return "NonpositiveInput";
    case ErrorKind::DivisionByIntervalContainingZero: return "DivisionByIntervalContainingZero";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::NoCutoffFound: return "NoCutoffFound";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace genusbound
