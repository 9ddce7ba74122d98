#pragma once

#include <stdexcept>
#include <string>

namespace vmdg {

// Failure of an iterative linear or nonlinear solve. Carries the residual
// reached by the best iterate so callers can report how close they got.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

private:
  double residual_;
  int iterations_;
};

// A non-finite value appeared in the state; names the integrator stage that
// produced it so CFL violations fail loudly instead of polluting output.
class BlowUpError : public std::runtime_error {
public:
  explicit BlowUpError(const std::string& stage)
      : std::runtime_error("non-finite state detected at stage: " + stage), stage_(stage) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

// Invalid configuration input (bad key, malformed value, broken constraint).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace vmdg
