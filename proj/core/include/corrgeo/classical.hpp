#pragma once

#include <optional>
#include <string>

#include "corrgeo/state.hpp"

namespace corrgeo {

/// Knobs of the multi-start product-basis search.
struct SearchOptions {
  int restarts = 32;           // 8 deterministic seeds + uniform-random rest
  double entropy_tol = 1e-8;   // simplex stop on the objective
  double param_tol = 1e-6;     // simplex stop on the coordinates
  int max_evals = 4000;        // per restart
  std::uint64_t seed = 0;
};

struct OptimizerDiagnostics {
  int restarts_used = 0;
  double best_second_gap = 0.0;  // runner-up restart minimum minus best
  bool converged = true;
};

/// Outcome of the dephasing-entropy minimization: the optimal product
/// basis, the dephased state chi and its entropy.
struct DephasingResult {
  ProductBasis basis;
  MultipartiteState chi;
  double entropy_chi = 0.0;
  OptimizerDiagnostics diagnostics;
};

/// A correlation measure in bits together with the witness achieving it.
struct MeasureValue {
  double value = 0.0;
  std::string method;  // "analytic" | "numeric"
  std::optional<MultipartiteState> witness;
  bool converged = true;
};

/// Pinching in the product basis b: sum_k |k><k| x |k><k|. Trace
/// preserving, entropy non-decreasing, classical in b.
MultipartiteState dephase(const MultipartiteState& x, const ProductBasis& b);

/// Pinching applied to one party only; the other parties are untouched.
MultipartiteState dephase_one_party(const MultipartiteState& x, int party,
                                    const Matrix& local_basis);

/// Eigenvalues of the dephased state without building it: the diagonal of
/// the state in the product basis. Hot path of the basis search.
RealVector dephasing_probabilities(const Matrix& rho,
                                   const std::vector<Matrix>& locals);

/// The closest product state is the tensor product of the marginals; no
/// optimization is involved.
MultipartiteState closest_product_state(const MultipartiteState& x);

/// S(pi_x) - S(x), the distance to the closest product state.
MeasureValue total_mutual_information(const MultipartiteState& x);

/// Minimizes S(dephase(x, b)) over product bases with a multi-start
/// derivative-free simplex search. Non-convergence (no second restart
/// agreeing with the best within 10x the entropy tolerance) is flagged,
/// never thrown.
DephasingResult closest_classical_state(const MultipartiteState& x,
                                        const SearchOptions& opts = {});

/// D = S(chi_x) - S(x) via closest_classical_state.
MeasureValue discord(const MultipartiteState& x, const SearchOptions& opts = {});

/// Q = S(chi_sigma) - S(sigma); same minimization, the input is meant to
/// be a separable state (typically the REE witness).
MeasureValue dissonance(const MultipartiteState& sigma,
                        const SearchOptions& opts = {});

/// C = S(pi_chi) - S(chi) for a classical state chi; closed form, no
/// search.
MeasureValue classical_correlations(const MultipartiteState& chi);

/// L = S(pi_chi) - S(pi_x). Also asserts pi_chi equals the dephasing of
/// pi_x in chi's basis (ConsistencyError beyond 1e-8).
MeasureValue l_quantity(const MultipartiteState& x, const DephasingResult& chi);

struct OriginalDiscordResult {
  MeasureValue delta;
  double identity_gap = 0.0;  // |delta(b) - (T_rho - C(b))| at the optimum
  OptimizerDiagnostics diagnostics;
};

/// One-sided projective discord of a bipartite state: minimizes
/// D(b) - L(b) over the measured party's local basis only.
OriginalDiscordResult original_discord(const MultipartiteState& x,
                                       int measured_party,
                                       const SearchOptions& opts = {});

struct MidResult {
  MeasureValue measure;
  bool degenerate_marginals = false;
};

/// Measurement-induced disturbance S(eta) - S(x), with eta the dephasing
/// in the marginal eigenbases (deterministic eigensolver tie-break). Flags
/// near-degenerate marginals, where the basis choice is ambiguous.
MidResult mid(const MultipartiteState& x);

/// True when any marginal of x has an eigenvalue gap below 1e-10.
bool marginal_degeneracy(const MultipartiteState& x);

namespace detail {

/// Deterministic seed frames for the basis search: computational, Fourier
/// ("x"), phased-Fourier ("y"), marginal eigenbases, alternating patterns.
std::vector<ProductBasis> canonical_frames(const MultipartiteState& x);

Matrix fourier_matrix(int d);
Matrix phased_fourier_matrix(int d);

}  // namespace detail

}  // namespace corrgeo
