#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "corrgeo/tensor.hpp"
#include "corrgeo/types.hpp"

namespace corrgeo {

/// A validated multipartite density matrix together with its party
/// signature. Construction goes through validate(); every instance is
/// Hermitian within 1e-10, PSD within 1e-9 and unit trace within 1e-9.
struct MultipartiteState {
  std::vector<int> dims;
  Matrix rho;

  int total_dim() const { return static_cast<int>(rho.rows()); }
  int parties() const { return static_cast<int>(dims.size()); }

  /// Reduced state of one party.
  Matrix marginal(int party) const;
};

/// One local orthonormal basis per party; the n-th unitary's columns are
/// the local kets. Dephasing in the basis is a pinching by the product
/// projectors built from these columns.
struct ProductBasis {
  std::vector<Matrix> locals;

  /// The full product unitary (Kronecker product of the locals).
  Matrix joint() const { return tensor_product_all(locals); }

  /// Throws NotAStateError if any local fails |U^dagger U - I| <= 1e-9.
  void check() const;
};

/// Optimization coordinates for a product basis: per party, d(d-1) reals
/// filling the off-diagonal of an anti-Hermitian generator A (zero
/// diagonal); the local unitary is exp(A). For qubits this is the familiar
/// two-angle chart of measurement axes.
struct BasisParameters {
  std::vector<int> dims;
  std::vector<double> values;  // concatenated per-party blocks

  static int party_block_size(int d) { return d * (d - 1); }
  static BasisParameters zeros(const std::vector<int>& dims);

  /// Always yields a valid ProductBasis.
  ProductBasis decode() const;
};

/// exp(A) for the zero-diagonal anti-Hermitian generator encoded by
/// `block` (layout: for each pair j<k, two reals re, im of A_jk).
Matrix decode_local_unitary(int d, const double* block);

/// Unit ket exp(A) e_0 where A has nonzero entries only in the first
/// row/column, encoded by 2(d-1) reals. Chart of the pure-state manifold
/// used by the separable-ansatz refinement.
Vector decode_local_ket(int d, const double* block);

/// Validates dims/matrix into a state: checks Hermiticity, PSD within
/// 1e-9, trace within 1e-9 of one; clips negative eigenvalue noise and
/// renormalizes the trace when needed. Throws NotAStateError or
/// DimensionMismatchError.
MultipartiteState validate(const std::vector<int>& dims, const Matrix& matrix);

/// Bell-diagonal two-qubit state: sum lambda_i |Psi_i><Psi_i| over the
/// Bell basis (Phi+, Phi-, Psi+, Psi-), lambdas sorted non-increasing on
/// entry. Throws InvalidDistributionError unless lambda is a probability
/// 4-vector within 1e-9.
MultipartiteState bell_diagonal(const std::array<double, 4>& lambda);

/// |W> = (|100> + |010> + |001>)/sqrt(3) of three qubits.
MultipartiteState w_state();

/// Four-qubit cluster state (|0+0+> + |1+1+> + |0-1-> + |1-0->)/2.
MultipartiteState cluster_state_4();

/// Closest separable state to |W>:
/// 8/27 |000><000| + 12/27 |W><W| + 6/27 |Wbar><Wbar| + 1/27 |111><111|.
MultipartiteState closest_separable_w();

/// Closest separable state to the cluster state: the uniform mixture of
/// the four product terms, a classical state.
MultipartiteState closest_separable_cluster4();

/// Two-qubit mixture of a z-classical and an x-classical state,
/// (1-q) sum p_ij |ij>_zz<ij| + q sum_i (1/2)|ii>_xx<ii|. Throws
/// InvalidDistributionError on invalid q or p.
MultipartiteState mid_counterexample(double q, const std::array<double, 4>& p);

/// Deterministic seeded sampling. States are drawn by partial-tracing a
/// uniform-measure pure state on a rank-sized ancilla (induced measure;
/// Hilbert-Schmidt when rank = total dim).
MultipartiteState random_state(const std::vector<int>& dims, int rank,
                               std::uint64_t seed);

/// One independent uniform-measure unitary per party.
ProductBasis random_product_basis(const std::vector<int>& dims,
                                  std::uint64_t seed);

/// Seeded random pure product state, one uniform-measure ket per party.
std::vector<Vector> random_product_kets(const std::vector<int>& dims,
                                        std::uint64_t seed);

namespace detail {

/// Deterministic RNG used by all sampling: explicit algorithms only, so
/// identical seeds give identical streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64();
  double next_double();        // uniform [0,1)
  double next_gaussian();      // standard normal, Box-Muller
  Complex next_complex_gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Substream seed derivation for independent restarts/parties.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Matrix haar_unitary(int d, Rng& rng);
Vector haar_ket(int d, Rng& rng);

}  // namespace detail

}  // namespace corrgeo
