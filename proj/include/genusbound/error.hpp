#pragma once

#include <stdexcept>
#include <string>

namespace genusbound {

enum class ErrorKind {
    NotADiscriminant,
    NotPositiveDefinite,
    DiscriminantMismatch,
    GenusCrossCheckFailed,
    NegativeInput,
    NonpositiveInput,
    DivisionByIntervalContainingZero,
    NotFundamental,
    NonIntegralResult,
    Indeterminate,
    NoCutoffFound,
    InvalidArgument,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace genusbound
