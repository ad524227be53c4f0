#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace effham {

/// Argument outside the mathematical domain of an operation (s not in (0,1), c below the branch minimum, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A potential does not have the shape an operation requires (multiwell layout, flat segments, ...).
class shape_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// |Q.k| fell below the small-divisor floor for a mode carrying nonzero data.
class small_divisor_error : public std::runtime_error {
 public:
  small_divisor_error(const std::string& what, std::vector<int> k)
      : std::runtime_error(what), wavevector(std::move(k)) {}
  std::vector<int> wavevector;
};

/// Nonfinite values, overflow in the monodromy integration, or failure to bracket a root.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output file could not be opened or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace effham
