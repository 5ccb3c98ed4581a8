#pragma once

#include <stdexcept>
#include <string>

namespace credlink {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CREDLINK_DEFINE_ERROR(name)                                           \
    struct name : Error {                                                      \
        using Error::Error;                                                    \
    }

// Series construction and transformation
CREDLINK_DEFINE_ERROR(InvalidSeries);
CREDLINK_DEFINE_ERROR(NonPositivePrice);
CREDLINK_DEFINE_ERROR(TooShort);
CREDLINK_DEFINE_ERROR(EmptyOverlap);
CREDLINK_DEFINE_ERROR(TargetOutsideBracket);
CREDLINK_DEFINE_ERROR(ZeroVariance);

// Unit-root testing
CREDLINK_DEFINE_ERROR(DegenerateRegression);
CREDLINK_DEFINE_ERROR(NonPositiveLongRunVariance);

// VAR estimation
CREDLINK_DEFINE_ERROR(InsufficientSample);
CREDLINK_DEFINE_ERROR(RankDeficientDesign);
CREDLINK_DEFINE_ERROR(HeterogeneousSpecs);
CREDLINK_DEFINE_ERROR(EmptyList);

// Causality and impulse responses
CREDLINK_DEFINE_ERROR(SingularCovariance);
CREDLINK_DEFINE_ERROR(NotPositiveDefinite);
CREDLINK_DEFINE_ERROR(MismatchedShapes);
CREDLINK_DEFINE_ERROR(NonPositiveCap);

// CDS contract arithmetic
CREDLINK_DEFINE_ERROR(NonIntegralPeriodCount);
CREDLINK_DEFINE_ERROR(PeriodsOutOfRange);

// Simulation
CREDLINK_DEFINE_ERROR(UnstableProcess);

#undef CREDLINK_DEFINE_ERROR

// Parse failure in CSV/JSON input; reports where the bad token sits.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what + " (row " + std::to_string(row) + ", column " +
                std::to_string(column) + ")"),
          row(row),
          column(column) {}
    std::size_t row = 0;
    std::size_t column = 0;
};

}  // namespace credlink
