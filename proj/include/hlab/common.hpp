#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hlab {

using cx = std::complex<double>;

constexpr double pi = std::numbers::pi;

// Bad input / violated precondition. CLI exit code 2.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iteration did not converge, branch ambiguity, resonance. CLI exit code 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

}  // namespace hlab
