#pragma once

#include <stdexcept>
#include <string>

namespace arrowkit {

enum class errc {
  invalid_argument,
  identical_alternatives,
  degenerate_pairs,
  shape_mismatch,
  budget_exceeded,
  unsupported_k,
  asymmetric_distribution,
  too_few_alternatives,
  same_voter,
  not_transitive,
  hypothesis_failed,
  invalid_correlation,
  construction_failed,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

class BudgetError : public Error {
 public:
  BudgetError(double required_states, const std::string& message)
      : Error(errc::budget_exceeded, message), required_(required_states) {}
  double required_states() const { return required_; }

 private:
  double required_;
};

[[noreturn]] void fail(errc code, const std::string& message);

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace arrowkit
