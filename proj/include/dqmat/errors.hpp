#pragma once

#include <stdexcept>
#include <string>

namespace dqmat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAppreciableError : Error {
    using Error::Error;
};
struct NegativeError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct NotSquareError : Error {
    using Error::Error;
};
struct ZeroVectorError : Error {
    using Error::Error;
};
struct ZeroMatrixError : Error {
    using Error::Error;
};
struct ZeroPencilError : Error {
    using Error::Error;
};
struct NotUnitaryError : Error {
    using Error::Error;
};
struct NotIsometryError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace dqmat
