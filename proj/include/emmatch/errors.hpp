#pragma once

#include <stdexcept>
#include <string>

namespace emmatch {

/// File could not be read, written or decoded.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is valid as data but carries nothing to work with: an image too
/// small for the Sobel stencil, or one without a single significant edge.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace emmatch
