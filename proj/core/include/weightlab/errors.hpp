#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weightlab {

/// Raised when a power of a weight would be non-integrable near a singularity.
class NonIntegrableError : public std::domain_error {
 public:
  NonIntegrableError(const std::string& what, std::size_t segment)
      : std::domain_error(what), segment_(segment) {}
  std::size_t segment() const { return segment_; }

 private:
  std::size_t segment_;
};

/// Invalid grid, family or operator configuration.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace weightlab
