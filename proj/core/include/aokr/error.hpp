#pragma once

#include <stdexcept>
#include <string>

namespace aokr {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid user-facing configuration. `field()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Caller broke a precondition that is not a user input problem (e.g. a
/// wave packet propagated with a plan built for another grid).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Population has spread too close to the edge of the momentum grid; further
/// steps would alias.
class NyquistOverflow : public std::runtime_error {
 public:
  NyquistOverflow(const std::string& message, double tail_mass)
      : std::runtime_error(message), tail_mass_(tail_mass) {}

  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

}  // namespace aokr
