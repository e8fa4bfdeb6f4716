#pragma once

#include <stdexcept>
#include <string>

namespace coopsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix has no usable pivot (rank deficient within tolerance).
struct Singular : Error {
    using Error::Error;
};

// Operand dimensions are incompatible.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A configuration asks for dimensions the code family does not define.
struct UnsupportedDims : Error {
    using Error::Error;
};

// Paired sequences differ in length.
struct LengthMismatch : Error {
    using Error::Error;
};

// A power constraint group has zero energy and cannot be rescaled.
struct DegenerateGroup : Error {
    using Error::Error;
};

// An adaptive recursion left the trust region.
struct Diverged : Error {
    using Error::Error;
};

// An estimator was given no samples.
struct Empty : Error {
    using Error::Error;
};

// Bad command line or config file.
struct Usage : Error {
    using Error::Error;
};

// Requested kernel backend does not exist or is unavailable.
struct UnknownBackend : Error {
    using Error::Error;
};

}  // namespace coopsim
