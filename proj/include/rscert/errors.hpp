#pragma once

#include <stdexcept>
#include <string>

namespace rscert {

/// Requested level n is outside the supported range.
class LevelRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A lag is even, out of range, or otherwise not a member of S_n.
class InvalidLagError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The transform route produced a value too far from an integer to round safely.
class RoundingMarginError : public std::runtime_error {
public:
    RoundingMarginError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Word over {A,B,C,D} contains a forbidden adjacent pair or an unknown letter.
class InadmissibleWordError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fixed-width integer arithmetic overflowed; retry with the wide backend.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// The floating point error budget does not leave enough margin to decide.
class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument combination for an operation (mismatched levels, coarse grid, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rscert
