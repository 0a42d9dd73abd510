#include "corrgeo/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace corrgeo {

namespace {

constexpr double kPhaseTol = 1e-12;
const double kLog2 = std::log(2.0);

void normalize_phase(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > kPhaseTol) {
      v *= std::conj(v[i]) / mag;
      return;
    }
  }
}

// Lexicographic (re, im) comparison of phase-normalized columns; used only
// to break exact eigenvalue ties so the ordering stays a strict weak order.
bool column_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

Matrix HermitianEigensystem::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Matrix gram = m.adjoint() * m;
  return (gram - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
         tolerance;
}

HermitianEigensystem eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols())
    throw NonHermitianError("eig_hermitian: matrix is not square");
  if (!is_hermitian(m))
    throw NonHermitianError("eig_hermitian: max |M - M^dagger| exceeds 1e-10");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NonHermitianError("eig_hermitian: eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  std::vector<Vector> columns(static_cast<size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    columns[static_cast<size_t>(k)] = solver.eigenvectors().col(k);
    normalize_phase(columns[static_cast<size_t>(k)]);
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double li = solver.eigenvalues()[i];
    const double lj = solver.eigenvalues()[j];
    if (li != lj) return li > lj;
    return column_less(columns[static_cast<size_t>(i)],
                       columns[static_cast<size_t>(j)]);
  });

  HermitianEigensystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()[order[static_cast<size_t>(k)]];
    out.eigenvectors.col(k) = columns[static_cast<size_t>(order[static_cast<size_t>(k)])];
  }
  return out;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Matrix tensor_product_all(const std::vector<Matrix>& factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i)
    out = tensor_product(out, factors[i]);
  return out;
}

Vector tensor_product_kets(const std::vector<Vector>& kets) {
  Vector out = Vector::Ones(1);
  for (const Vector& k : kets) {
    Vector next(out.size() * k.size());
    for (Eigen::Index i = 0; i < out.size(); ++i)
      next.segment(i * k.size(), k.size()) = out[i] * k;
    out = std::move(next);
  }
  return out;
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int n_parties = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatchError("partial_trace: party dim < 1");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw DimensionMismatchError(
        "partial_trace: dims do not factor the matrix dimension");
  if (keep.empty())
    throw DimensionMismatchError("partial_trace: keep set is empty");

  std::vector<bool> kept(static_cast<size_t>(n_parties), false);
  for (int k : keep) {
    if (k < 0 || k >= n_parties)
      throw DimensionMismatchError("partial_trace: keep index out of range");
    kept[static_cast<size_t>(k)] = true;
  }

  long keep_dim = 1, drop_dim = 1;
  for (int p = 0; p < n_parties; ++p)
    (kept[static_cast<size_t>(p)] ? keep_dim : drop_dim) *= dims[static_cast<size_t>(p)];

  // Strides of each party in the full row index (row-major party order).
  std::vector<long> stride(static_cast<size_t>(n_parties), 1);
  for (int p = n_parties - 2; p >= 0; --p)
    stride[static_cast<size_t>(p)] =
        stride[static_cast<size_t>(p + 1)] * dims[static_cast<size_t>(p + 1)];

  // The full index splits linearly into a kept part and a dropped part.
  std::vector<long> keep_offset(static_cast<size_t>(keep_dim), 0);
  std::vector<long> drop_offset(static_cast<size_t>(drop_dim), 0);
  const auto fill_offsets = [&](bool want_kept, std::vector<long>& offsets) {
    std::vector<int> parties;
    for (int p = 0; p < n_parties; ++p)
      if (kept[static_cast<size_t>(p)] == want_kept) parties.push_back(p);
    for (long idx = 0; idx < static_cast<long>(offsets.size()); ++idx) {
      long rem = idx, off = 0;
      for (auto it = parties.rbegin(); it != parties.rend(); ++it) {
        const long d = dims[static_cast<size_t>(*it)];
        off += (rem % d) * stride[static_cast<size_t>(*it)];
        rem /= d;
      }
      offsets[static_cast<size_t>(idx)] = off;
    }
  };
  fill_offsets(true, keep_offset);
  fill_offsets(false, drop_offset);

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (long i = 0; i < keep_dim; ++i)
    for (long j = 0; j < keep_dim; ++j) {
      Complex acc(0.0, 0.0);
      for (long t = 0; t < drop_dim; ++t)
        acc += m(keep_offset[static_cast<size_t>(i)] + drop_offset[static_cast<size_t>(t)],
                 keep_offset[static_cast<size_t>(j)] + drop_offset[static_cast<size_t>(t)]);
      out(i, j) = acc;
    }
  return out;
}

Matrix trace_out(const Matrix& m, const std::vector<int>& dims,
                 const std::vector<int>& drop) {
  std::vector<bool> dropped(dims.size(), false);
  for (int d : drop) {
    if (d < 0 || d >= static_cast<int>(dims.size()))
      throw DimensionMismatchError("trace_out: party index out of range");
    dropped[static_cast<size_t>(d)] = true;
  }
  std::vector<int> keep;
  for (int p = 0; p < static_cast<int>(dims.size()); ++p)
    if (!dropped[static_cast<size_t>(p)]) keep.push_back(p);
  return partial_trace(m, dims, keep);
}

double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double v = p[i];
    if (v > 0.0) s -= v * std::log(v);
  }
  return s / kLog2;
}

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
  return s / kLog2;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

namespace detail {

double entropy_of_clipped_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues[i];
    if (v > 0.0) s -= v * std::log(v);
  }
  return s / kLog2;
}

double cross_entropy_bits(const Matrix& x, const HermitianEigensystem& y_eig) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < y_eig.eigenvalues.size(); ++k) {
    const double mu = y_eig.eigenvalues[k];
    const Vector v = y_eig.eigenvectors.col(k);
    const double weight = std::real(v.dot(x * v));
    if (mu <= tol::psd) {
      if (weight > tol::support)
        return std::numeric_limits<double>::infinity();
      continue;
    }
    acc -= weight * std::log(mu);
  }
  return acc / kLog2;
}

}  // namespace detail

namespace {

// Shared precondition for the entropy functions: Hermitian, PSD within
// 1e-9, unit trace within 1e-9. Returns the clipped spectrum.
RealVector state_spectrum(const Matrix& rho, const char* who) {
  if (rho.rows() != rho.cols())
    throw NotAStateError(std::string(who) + ": matrix is not square");
  if (!is_hermitian(rho))
    throw NotAStateError(std::string(who) + ": matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  RealVector lam = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -tol::psd)
      throw NotAStateError(std::string(who) +
                           ": eigenvalue below -1e-9, not positive semidefinite");
    if (lam[i] < 0.0) lam[i] = 0.0;
  }
  if (std::abs(lam.sum() - 1.0) > tol::trace)
    throw NotAStateError(std::string(who) + ": trace differs from 1 beyond 1e-9");
  return lam;
}

}  // namespace

double von_neumann_entropy(const Matrix& rho) {
  return detail::entropy_of_clipped_spectrum(
      state_spectrum(rho, "von_neumann_entropy"));
}

double relative_entropy(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatchError("relative_entropy: dimension mismatch");
  const RealVector x_spec = state_spectrum(x, "relative_entropy(x)");
  state_spectrum(y, "relative_entropy(y)");

  const HermitianEigensystem y_eig = eig_hermitian(y);
  const double cross = detail::cross_entropy_bits(x, y_eig);
  if (is_infinite_divergence(cross)) return cross;

  const double result = cross - detail::entropy_of_clipped_spectrum(x_spec);
  if (result < 0.0 && result >= -tol::psd) return 0.0;
  return result;
}

bool is_infinite_divergence(double v) { return std::isinf(v) && v > 0; }

}  // namespace corrgeo
