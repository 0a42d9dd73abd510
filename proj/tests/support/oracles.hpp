#pragma once

#include <array>
#include <cstdint>

#include "corrgeo/state.hpp"

// Test-side reference computations. Everything here is independent of the
// library's optimizer and dispatch paths: entropies go through plain
// eigenvalue sums, the two-qubit dephasing minimum through an exhaustive
// angle grid.
namespace oracles {

/// Entropy in bits from a raw eigenvalue sum; no clipping or validation
/// beyond dropping non-positive values.
double entropy_bits(const corrgeo::Matrix& rho);

/// -tr(x log2 y) - S(x) evaluated directly from eigendecompositions.
double relative_entropy_bits(const corrgeo::Matrix& x, const corrgeo::Matrix& y);

/// Probabilities of a two-qubit state dephased along the Bloch axes
/// (theta_a, phi_a, theta_b, phi_b).
std::array<double, 4> dephasing_probs_two_qubit(const corrgeo::Matrix& rho,
                                                double theta_a, double phi_a,
                                                double theta_b, double phi_b);

struct GridMinimum {
  double entropy = 0.0;
  double theta_a = 0.0, phi_a = 0.0, theta_b = 0.0, phi_b = 0.0;
};

/// Exhaustive minimum of the dephasing entropy of a two-qubit state over a
/// 1-degree grid of both measurement axes. Axes are lines in the Bloch
/// sphere, so theta runs over [0, 90] and phi over [0, 180) degrees; that
/// covers every distinct product basis. Exact branch-and-bound: points are
/// skipped only when a true lower bound (the collision entropy) already
/// exceeds the running minimum.
GridMinimum dephasing_entropy_grid_min(const corrgeo::Matrix& rho,
                                       double step_degrees = 1.0);

/// One-degree-grid minimum of the one-sided quantity D(b) - L(b) of a
/// two-qubit state measured on party 0 (the original-discord objective).
double original_discord_grid_min(const corrgeo::Matrix& rho,
                                 double step_degrees = 1.0);

/// Deterministic pseudo-random two-qubit (or general) state for test
/// loops; mirrors the library's induced-measure construction but is kept
/// here so tests do not depend on library internals for their inputs.
corrgeo::MultipartiteState random_test_state(const std::vector<int>& dims,
                                             int rank, std::uint64_t seed);

}  // namespace oracles
