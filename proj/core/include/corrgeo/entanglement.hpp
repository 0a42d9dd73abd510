#pragma once

#include <string>
#include <vector>

#include "corrgeo/state.hpp"

namespace corrgeo {

/// Convex mixture of pure product states; separable by construction.
struct SeparableAnsatz {
  struct Term {
    double weight = 0.0;
    std::vector<Vector> kets;  // one unit ket per party
  };
  std::vector<int> dims;
  std::vector<Term> terms;

  /// Throws InvalidDistributionError / NotAStateError when the weights are
  /// not a distribution within 1e-9 or a ket is not unit norm within 1e-9.
  void check() const;

  /// The assembled density matrix sum_i w_i |t_i><t_i|.
  MultipartiteState assemble() const;
};

struct ReeOptions {
  int restarts = 8;
  int terms = 0;            // 0 selects the default (total dim)^2
  int max_sweeps = 500;
  double sweep_tol = 1e-8;  // stop when a sweep improves E by less
  double weight_tol = 1e-10;
  int max_weight_iters = 400;
  int ket_refine_evals = 60;  // simplex budget per ket per sweep
  std::uint64_t seed = 0;
};

struct ReeDiagnostics {
  int terms = 0;
  int sweeps = 0;
  int restarts = 0;
  bool converged = true;
  /// Monitored per run, never asserted: S(sigma) >= -tr(rho log sigma).
  bool sigma_entropy_dominates = true;
  /// Separability is decided exactly only for two qubits; elsewhere a
  /// numeric E below 5e-3 is reported as numerically separable, not as a
  /// certificate.
  bool numerically_separable = false;
};

struct ReeResult {
  double value = 0.0;  // E in bits
  MultipartiteState sigma;
  std::string method;  // analytic-bell-diagonal | analytic-pure-bipartite |
                       // table-w | table-cluster4 | ppt-separable | numeric
  ReeDiagnostics diagnostics;
  /// Distinct optima found within 1e-6 of the best E (best first); more
  /// than one entry flags sigma non-uniqueness.
  std::vector<MultipartiteState> sigma_candidates;
};

/// Transpose of one party's index pair. Exact separability witness for two
/// qubits via the positivity of the result.
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         int party);

/// True when the partial transpose of a two-qubit state is PSD within 1e-9.
bool ppt_two_qubits(const MultipartiteState& x);

/// Relative entropy of entanglement E = min over separable sigma of
/// S(x||sigma). Dispatches to the closed forms for the known families
/// (two-qubit PPT, pure bipartite, Bell diagonal, the W and cluster
/// tables), otherwise to the numeric minimizer.
ReeResult ree(const MultipartiteState& x, const ReeOptions& opts = {});

/// Closed form for pure bipartite states: E is the entanglement entropy of
/// the reduced state and sigma the Schmidt-basis dephasing. Also asserts
/// the additivity T = E + C within 1e-9.
ReeResult ree_pure_bipartite(const MultipartiteState& psi);

/// Alternating minimization over a SeparableAnsatz: convex weight step on
/// the simplex (exponentiated gradient), derivative-free refinement of
/// each product ket, multi-start over seeded initializations.
ReeResult ree_numeric(const MultipartiteState& x, const ReeOptions& opts = {});

/// Squared overlap <psi| rho |psi> with a pure reference.
double fidelity_with_pure(const MultipartiteState& x, const Vector& psi);

}  // namespace corrgeo
