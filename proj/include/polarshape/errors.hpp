#pragma once

#include <stdexcept>

namespace polarshape {

// Observation inconsistent with the conditioning prefix: every completion has
// probability zero. Can only happen with corrupted inputs; the decoder maps
// it to a frame error.
struct ImpossibleEvidenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polarshape
