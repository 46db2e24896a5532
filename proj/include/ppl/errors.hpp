#pragma once

#include <stdexcept>
#include <string>

namespace ppl {

/// Invalid argument or precondition violation.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// A computation failed to converge or lost too much precision.
/// Carries the best partial value available at the point of failure
/// (log-domain for series, linear otherwise).
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double partial)
      : std::runtime_error(what), partial_value(partial) {}
  explicit numeric_error(const std::string& what)
      : std::runtime_error(what), partial_value(0.0) {}
  double partial_value;
};

/// A requested workload exceeds a configured desk-scale cap.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad experiment configuration (missing/invalid fields).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppl
