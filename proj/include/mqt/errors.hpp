#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqt {

/// Base for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A JunctionParams invariant (or an operation precondition on a parameter) failed.
class invalid_parameter : public error {
public:
  using error::error;
};

/// Newton search for a static minimum of the two-phase potential failed.
class no_equilibrium : public error {
public:
  using error::error;
};

/// The tilted washboard has no metastable well: bias >= 1 - epsilon.
class no_barrier : public error {
public:
  using error::error;
};

/// Argument outside the domain of a renormalized quantity (epsilon >= 1).
class domain_error : public error {
public:
  using error::error;
};

/// Integration produced a non-finite state.
class numeric_error : public error {
public:
  numeric_error(const std::string& what, std::size_t step)
      : error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// Finite-difference spectrum is not resolved at the requested grid.
class convergence_error : public error {
public:
  using error::error;
};

/// Unknown sweep axis name or malformed range.
class invalid_axis : public error {
public:
  using error::error;
};

} // namespace mqt
