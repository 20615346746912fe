#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quiverstab {

// Raised when an argument is outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class parse_error : public std::invalid_argument {
public:
  parse_error(std::size_t position, const std::string& what)
      : std::invalid_argument(what), position_(position) {}

  // 1-based position of the offending character.
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Explicit resource guard (oracle size limits, Fourier-Motzkin row cap).
class resource_limit_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A bounded search ended without a solution. Not a proof of nonexistence.
class not_found_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace quiverstab
