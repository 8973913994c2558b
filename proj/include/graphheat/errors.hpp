#pragma once

#include <stdexcept>
#include <string>

namespace graphheat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector/matrix dimensions do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Requested object exceeds the representable index range.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Problem too large for the requested algorithm (use another path).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge within its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (step sizes, stability, method selection).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numeric parameter outside its admissible interval.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Backward evolution would overflow double precision; refused.
class AmplificationError : public Error {
public:
    using Error::Error;
};

/// Malformed PGM input. `kind` distinguishes the failure modes.
class PgmError : public Error {
public:
    enum class Kind {
        bad_magic,          // not a PGM at all
        unsupported_format, // valid PNM magic we do not handle (P1/P3/...)
        bad_header,         // dims/maxval missing or non-numeric
        bad_maxval,         // maxval outside [1, 255]
        truncated,          // payload shorter than rows*cols
        bad_value,          // sample outside [0, maxval]
    };

    PgmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Filesystem-level failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace graphheat
