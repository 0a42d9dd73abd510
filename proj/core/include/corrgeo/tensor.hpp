#pragma once

#include <vector>

#include "corrgeo/types.hpp"

namespace corrgeo {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// non-increasing; eigenvectors are the matching orthonormal columns with a
/// deterministic phase (first entry of magnitude > 1e-12 made real positive).
struct HermitianEigensystem {
  RealVector eigenvalues;
  Matrix eigenvectors;

  /// V diag(lambda) V^dagger.
  Matrix reconstruct() const;
};

/// Diagonalizes a Hermitian matrix. Ordering is deterministic: eigenvalues
/// non-increasing, exact ties broken by lexicographic comparison of the
/// phase-normalized eigenvector entries.
/// Throws NonHermitianError when max |M - M^dagger| exceeds 1e-10.
HermitianEigensystem eig_hermitian(const Matrix& m);

/// Kronecker product, dim = dimA * dimB.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Kronecker product of a list of factors, left to right.
Matrix tensor_product_all(const std::vector<Matrix>& factors);

/// Kronecker product of kets (column vectors), left to right.
Vector tensor_product_kets(const std::vector<Vector>& kets);

/// Reduced operator on the parties listed in `keep` (indices into `dims`,
/// any order accepted, deduplicated, output party order follows `dims`).
/// The trace is preserved. Throws DimensionMismatchError when the dims do
/// not factor m.rows() or `keep` is empty/out of range.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// Complement convenience: trace out the listed parties.
Matrix trace_out(const Matrix& m, const std::vector<int>& dims,
                 const std::vector<int>& drop);

/// von Neumann entropy -sum lambda_i log2 lambda_i in bits, with
/// 0 log 0 = 0. Eigenvalues inside [-1e-9, 0) are clipped to zero; anything
/// below -1e-9, a non-unit trace, or a non-Hermitian input throws
/// NotAStateError.
double von_neumann_entropy(const Matrix& rho);

/// Relative entropy S(x||y) = -tr(x log2 y) - S(x) in bits. Both arguments
/// must be valid states of equal dimension. Returns +infinity when x has
/// weight > 1e-9 on the clipped-zero eigenspace of y. Small negative results
/// within -1e-9 are clamped to zero.
double relative_entropy(const Matrix& x, const Matrix& y);

/// True when the value is the distinguished infinite relative entropy.
bool is_infinite_divergence(double v);

/// Shannon entropy of a probability vector in bits; entries within
/// [-1e-9, 0) are treated as zero.
double shannon_entropy(const RealVector& p);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Validity checks shared by the state constructors. `hermitian_within`
/// uses max entrywise deviation from the adjoint.
bool is_hermitian(const Matrix& m, double tolerance = tol::hermiticity);
bool is_unitary(const Matrix& m, double tolerance = tol::unitary);

namespace detail {

/// -tr(x log2 y) given the eigensystem of y; eigenvalues of y at or below
/// the clip threshold count as zero support. Returns +infinity on support
/// mismatch. Used by relative_entropy and the separable-state search.
double cross_entropy_bits(const Matrix& x, const HermitianEigensystem& y_eig);

/// Entropy check helpers that skip re-validation on hot paths.
double entropy_of_clipped_spectrum(const RealVector& eigenvalues);

}  // namespace detail

}  // namespace corrgeo
