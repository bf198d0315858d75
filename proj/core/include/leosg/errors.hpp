#pragma once

#include <stdexcept>
#include <string>

namespace leosg {

// Input outside a function's mathematical domain (angles, slants, distances).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Inconsistent or unsupported model configuration.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace leosg
