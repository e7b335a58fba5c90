#pragma once

#include <stdexcept>

namespace boolnl {

/// Spectrum whose inverse transform is not a ±1 sequence.
class NotABooleanSpectrum : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PositionOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when per-position transition rows differ although they were
/// expected to be identical.
class CollapseViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace boolnl
