#pragma once

#include <stdexcept>
#include <string>

namespace qdeut {

// Thrown when an algorithm fails numerically (fit non-convergence, singular
// readout correction, degenerate regression design). Kept distinct from
// std::invalid_argument so callers can map configuration errors and numeric
// failures to different process exit codes.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdeut
