// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HESSEIG_ERRORS_HPP
#define HESSEIG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hesseig {

// Broken caller contract (dimension mismatch, bad precondition).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A spectrum fell outside the operator's cone. Carries the offending
// eigenvalues and the first violated inequality.
class ConeError : public std::domain_error {
 public:
  ConeError(std::string what, std::vector<double> spectrum, std::string violated)
      : std::domain_error(std::move(what)),
        spectrum_(std::move(spectrum)),
        violated_(std::move(violated)) {}
  const std::vector<double>& spectrum() const { return spectrum_; }
  const std::string& violated_inequality() const { return violated_; }

 private:
  std::vector<double> spectrum_;
  std::string violated_;
};

// Spectrum too close to the cone wall for a usable linearization.
class DegenerateLinearizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad numeric configuration (grid too coarse, invalid option value).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Config file parse failure; collects every issue, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "config errors:";
    for (const auto& e : v) s += "\n  - " + e;
    return s;
  }
  std::vector<std::string> issues_;
};

// An iteration hit its cap without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string what, int iterations, double residual)
      : std::runtime_error(std::move(what)),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_ = 0;
  double residual_ = 0.0;
};

// Newton left the admissible cone and damping could not recover.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling gave up.
class SamplingExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Blow-up extrapolation could not produce a usable estimate.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Continuation in the homotopy parameter failed; carries the last good t.
class HomotopyError : public std::runtime_error {
 public:
  HomotopyError(std::string what, double last_good_t)
      : std::runtime_error(std::move(what)), last_good_t_(last_good_t) {}
  double last_good_t() const { return last_good_t_; }

 private:
  double last_good_t_ = 0.0;
};

// Radial shooting oracle failure (bracket or sign-change loss).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hesseig

#endif  // HESSEIG_ERRORS_HPP
