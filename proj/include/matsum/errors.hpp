#pragma once

#include <stdexcept>
#include <string>

namespace matsum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ModulusMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NotAUnit : Error {
    using Error::Error;
};

struct MembershipViolation : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

struct DeskScaleExceeded : Error {
    using Error::Error;
};

struct CombinatorialBlowup : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace matsum
