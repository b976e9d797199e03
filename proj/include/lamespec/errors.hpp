#pragma once

#include <stdexcept>
#include <string>

namespace lamespec {

#define LAMESPEC_DEFINE_ERROR(Name, Base)                                \
  struct Name : Base {                                                   \
    explicit Name(const std::string& msg) : Base(#Name ": " + msg) {}    \
  }

// Input validation failures.
LAMESPEC_DEFINE_ERROR(NonDistinctRoots, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(UnorderedRoots, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(NonPositiveExponent, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(DegreeTooSmall, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(IndexOutOfRange, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(NonPositiveInput, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(ModulusOutOfRange, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(NegativeInput, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(ArgumentAtOrAboveOne, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(InadmissibleParity, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(EmptyInput, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(DuplicateAtoms, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(BadRange, std::invalid_argument);
LAMESPEC_DEFINE_ERROR(OutOfSupport, std::domain_error);
LAMESPEC_DEFINE_ERROR(AtLogSingularity, std::domain_error);
LAMESPEC_DEFINE_ERROR(TooCloseToSingularity, std::domain_error);
LAMESPEC_DEFINE_ERROR(ZeroDenominator, std::domain_error);

// Numerical failures.
LAMESPEC_DEFINE_ERROR(NonPositivePsi, std::runtime_error);
LAMESPEC_DEFINE_ERROR(NotAnEigenvalue, std::runtime_error);
LAMESPEC_DEFINE_ERROR(QuadratureNotConverged, std::runtime_error);
LAMESPEC_DEFINE_ERROR(NoConvergence, std::runtime_error);

#undef LAMESPEC_DEFINE_ERROR

}  // namespace lamespec
