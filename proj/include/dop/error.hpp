#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dop {

// Base of every library error. The CLI maps subclasses onto its exit-code
// contract: invalid input 2, existence failure 3, rank deficiency 4,
// exhausted attempts 5, anything else 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct DimensionMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct ShapeMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct DegreeOutOfRange : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct NotNonincreasing : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct InsufficientNodes : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct DuplicatePoint : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct ZeroPolynomial : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct CoincidentCoordinate : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct NotPositive : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct PivotBreakdown : Error {
    std::size_t index;
    explicit PivotBreakdown(std::size_t k)
        : Error("pivot breakdown at index " + std::to_string(k)), index(k) {}
};

struct RankDeficient : Error {
    std::size_t index;  // degree or column count, depending on caller
    explicit RankDeficient(std::size_t k, const std::string& what = "")
        : Error(what.empty() ? "rank deficient at " + std::to_string(k) : what),
          index(k) {}
};

struct ExistenceFailure : Error {
    std::size_t degree;  // first degree whose moment matrix is singular
    explicit ExistenceFailure(std::size_t k)
        : Error("moment matrix singular at degree " + std::to_string(k)),
          degree(k) {}
};

struct ExhaustedAttempts : Error {
    std::size_t attempts;
    explicit ExhaustedAttempts(std::size_t n)
        : Error("no admissible point configuration after " + std::to_string(n) +
                " attempts"),
          attempts(n) {}
};

}  // namespace dop
