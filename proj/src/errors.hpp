#pragma once

#include <stdexcept>

namespace halfline {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad call arguments: tolerances, window bounds, mesh lists.
struct argument_error : error {
    using error::error;
};

// Potential spec rejected at construction; the message names the field.
struct spec_error : error {
    using error::error;
};

// Evaluation outside the domain of definition.
struct domain_error : error {
    using error::error;
};

// Quadrature, ODE stepping or root refinement failed to reach the
// requested accuracy; the message carries the achieved estimate.
struct numerical_error : error {
    using error::error;
};

// The answer sits too close to a decision boundary to be trusted.
struct ambiguous_error : error {
    using error::error;
};

}  // namespace halfline
