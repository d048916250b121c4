// Runtime errors raised by binding, composition and analysis.
#pragma once

#include <stdexcept>
#include <string>

namespace tickmc {

enum class ErrorKind {
  unbound_constant,
  out_of_range,
  unknown_identifier,
  division_by_zero,
  weight_sum,
  state_cap_exceeded,
  invalid_query,
  invalid_model,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tickmc
