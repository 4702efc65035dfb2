#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catlight {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix fed to a Hermitian-only routine failed the Hermiticity check.
class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

/// The iterative eigensolver exhausted its sweep budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The electron Hamiltonian at zero field has no unique ground state.
class DegenerateGroundState : public Error {
 public:
  using Error::Error;
};

/// Base of the runtime guards that abort an evolution (CLI exit code 3).
class NumericalGuard : public Error {
 public:
  using Error::Error;
};

/// State norm left its conservation band; the time step is too large for
/// the populated spectrum.
class NormDrift : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Trajectory trace left its conservation band.
class TraceDrift : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Interference extraction was requested at a vanishing free-field value.
class ZeroFieldAmplitude : public Error {
 public:
  using Error::Error;
};

/// The trajectory set handed to the ensemble average is not closed under
/// conjugate pairing, so the reassembled matrix cannot be Hermitian.
class NonHermitianEnsemble : public Error {
 public:
  using Error::Error;
};

/// Too few usable points for a fit.
class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; carries one message per violation.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  explicit ConfigError(const std::string& issue)
      : ConfigError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string all = "invalid configuration:";
    for (const auto& s : issues) {
      all += "\n  - " + s;
    }
    return all;
  }

  std::vector<std::string> issues_;
};

}  // namespace catlight
