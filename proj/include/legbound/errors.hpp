#pragma once

#include <stdexcept>

namespace legbound {

// Domain violations are reported as std::domain_error and malformed input as
// std::invalid_argument. This one marks an algorithm that failed to converge.
class numerical_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace legbound
