#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace corrgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances used by the validation and numeric contracts. All entropic
/// quantities in this library are in bits (base-2 logarithms).
namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double support = 1e-9;
inline constexpr double unitary = 1e-9;
}  // namespace tol

/// Largest total Hilbert-space dimension the library accepts (six qubits).
inline constexpr int kMaxTotalDim = 64;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error {
  using Error::Error;
};

struct NotAStateError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct InvalidDistributionError : Error {
  using Error::Error;
};

struct WrongArityError : Error {
  using Error::Error;
};

struct NotPureError : Error {
  using Error::Error;
};

struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace corrgeo
