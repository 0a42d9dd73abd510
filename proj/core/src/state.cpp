#include "corrgeo/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace corrgeo {

namespace detail {

std::uint64_t Rng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = next_double();
  } while (u <= 0.0);
  const double v = next_double();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Complex Rng::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + (stream << 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix haar_unitary(int d, Rng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.next_complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

Vector haar_ket(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.next_complex_gaussian();
  return v / v.norm();
}

}  // namespace detail

Matrix MultipartiteState::marginal(int party) const {
  return partial_trace(rho, dims, {party});
}

void ProductBasis::check() const {
  for (const Matrix& u : locals)
    if (!is_unitary(u, tol::unitary))
      throw NotAStateError("ProductBasis: local unitary check failed");
}

BasisParameters BasisParameters::zeros(const std::vector<int>& dims) {
  BasisParameters p;
  p.dims = dims;
  int n = 0;
  for (int d : dims) n += party_block_size(d);
  p.values.assign(static_cast<size_t>(n), 0.0);
  return p;
}

Matrix decode_local_unitary(int d, const double* block) {
  if (d == 2) {
    // Closed form for qubits: A = [[0, c], [-conj(c), 0]].
    const Complex c(block[0], block[1]);
    const double r = std::abs(c);
    Matrix u(2, 2);
    if (r < 1e-300) return Matrix::Identity(2, 2);
    const double cr = std::cos(r), sr = std::sin(r) / r;
    u(0, 0) = cr;
    u(0, 1) = sr * c;
    u(1, 0) = -sr * std::conj(c);
    u(1, 1) = cr;
    return u;
  }
  Matrix a = Matrix::Zero(d, d);
  int t = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      const Complex c(block[t], block[t + 1]);
      t += 2;
      a(j, k) = c;
      a(k, j) = -std::conj(c);
    }
  // exp(A) = exp(iH) with H = -iA Hermitian.
  const Matrix h = Complex(0.0, -1.0) * a;
  const HermitianEigensystem es = eig_hermitian(h);
  Vector phases(d);
  for (int k = 0; k < d; ++k)
    phases[k] = std::exp(Complex(0.0, es.eigenvalues[k]));
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

Vector decode_local_ket(int d, const double* block) {
  // A has support only in row/column 0; exp(A) e0 has the closed form
  // cos(r) e0 - (sin(r)/r) (0, conj(c_1), ..., conj(c_{d-1})).
  Vector c(d - 1);
  double r2 = 0.0;
  for (int j = 0; j < d - 1; ++j) {
    c[j] = Complex(block[2 * j], block[2 * j + 1]);
    r2 += std::norm(c[j]);
  }
  const double r = std::sqrt(r2);
  Vector ket = Vector::Zero(d);
  if (r < 1e-300) {
    ket[0] = 1.0;
    return ket;
  }
  ket[0] = std::cos(r);
  const double s = std::sin(r) / r;
  for (int j = 0; j < d - 1; ++j) ket[j + 1] = -s * std::conj(c[j]);
  return ket;
}

ProductBasis BasisParameters::decode() const {
  ProductBasis basis;
  basis.locals.reserve(dims.size());
  size_t off = 0;
  for (int d : dims) {
    basis.locals.push_back(decode_local_unitary(d, values.data() + off));
    off += static_cast<size_t>(party_block_size(d));
  }
  return basis;
}

MultipartiteState validate(const std::vector<int>& dims, const Matrix& matrix) {
  if (dims.empty()) throw DimensionMismatchError("validate: empty dims");
  long total = 1;
  for (int d : dims) {
    if (d < 2) throw DimensionMismatchError("validate: party dimension < 2");
    total *= d;
  }
  if (total > kMaxTotalDim)
    throw DimensionMismatchError("validate: total dimension exceeds 64");
  if (matrix.rows() != matrix.cols() || matrix.rows() != total)
    throw DimensionMismatchError(
        "validate: matrix dimension does not match product of dims");
  if (!is_hermitian(matrix, tol::hermiticity))
    throw NotAStateError("validate: not Hermitian within 1e-10");

  const HermitianEigensystem es = eig_hermitian(matrix);
  RealVector lam = es.eigenvalues;
  bool clipped = false;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -tol::psd)
      throw NotAStateError("validate: negative eigenvalue beyond 1e-9");
    if (lam[i] < 0.0) {
      lam[i] = 0.0;
      clipped = true;
    }
  }
  const double trace = lam.sum();
  if (std::abs(trace - 1.0) > tol::trace)
    throw NotAStateError("validate: trace deviates from 1 beyond 1e-9");

  MultipartiteState state;
  state.dims = dims;
  if (clipped || trace != 1.0) {
    Matrix cleaned = es.eigenvectors * lam.asDiagonal() * es.eigenvectors.adjoint();
    cleaned /= trace;
    state.rho = 0.5 * (cleaned + cleaned.adjoint());
  } else {
    state.rho = matrix;
  }
  return state;
}

namespace {

Vector basis_ket(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return v;
}

// Bell basis columns in the fixed order Phi+, Phi-, Psi+, Psi-.
Matrix bell_basis() {
  Matrix b(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  b.setZero();
  b(0, 0) = s;  b(3, 0) = s;    // Phi+
  b(0, 1) = s;  b(3, 1) = -s;   // Phi-
  b(1, 2) = s;  b(2, 2) = s;    // Psi+
  b(1, 3) = s;  b(2, 3) = -s;   // Psi-
  return b;
}

Matrix projector(const Vector& ket) { return ket * ket.adjoint(); }

}  // namespace

MultipartiteState bell_diagonal(const std::array<double, 4>& lambda) {
  std::array<double, 4> lam = lambda;
  double sum = 0.0;
  for (double v : lam) {
    if (v < -tol::trace)
      throw InvalidDistributionError("bell_diagonal: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw InvalidDistributionError("bell_diagonal: weights do not sum to 1");
  std::sort(lam.begin(), lam.end(), std::greater<double>());

  const Matrix b = bell_basis();
  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    rho += std::max(lam[static_cast<size_t>(i)], 0.0) * projector(b.col(i));
  return validate({2, 2}, rho);
}

MultipartiteState w_state() {
  Vector w = Vector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  w[4] = a;  // |100>
  w[2] = a;  // |010>
  w[1] = a;  // |001>
  return validate({2, 2, 2}, projector(w));
}

namespace {

std::vector<Vector> cluster4_product_terms() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector zero = basis_ket(2, 0), one = basis_ket(2, 1);
  Vector plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  return {
      tensor_product_kets({zero, plus, zero, plus}),
      tensor_product_kets({one, plus, one, plus}),
      tensor_product_kets({zero, minus, one, minus}),
      tensor_product_kets({one, minus, zero, minus}),
  };
}

}  // namespace

MultipartiteState cluster_state_4() {
  const auto terms = cluster4_product_terms();
  Vector c4 = Vector::Zero(16);
  for (const Vector& t : terms) c4 += t;
  c4 *= 0.5;
  return validate({2, 2, 2, 2}, projector(c4));
}

MultipartiteState closest_separable_w() {
  const double a = 1.0 / std::sqrt(3.0);
  Vector w = Vector::Zero(8), wbar = Vector::Zero(8);
  w[4] = a; w[2] = a; w[1] = a;
  wbar[3] = a; wbar[5] = a; wbar[6] = a;  // |011>, |101>, |110>
  Matrix sigma = (8.0 / 27.0) * projector(basis_ket(8, 0)) +
                 (12.0 / 27.0) * projector(w) +
                 (6.0 / 27.0) * projector(wbar) +
                 (1.0 / 27.0) * projector(basis_ket(8, 7));
  return validate({2, 2, 2}, sigma);
}

MultipartiteState closest_separable_cluster4() {
  const auto terms = cluster4_product_terms();
  Matrix sigma = Matrix::Zero(16, 16);
  for (const Vector& t : terms) sigma += 0.25 * projector(t);
  return validate({2, 2, 2, 2}, sigma);
}

MultipartiteState mid_counterexample(double q, const std::array<double, 4>& p) {
  if (q < -tol::trace || q > 1.0 + tol::trace)
    throw InvalidDistributionError("mid_counterexample: q outside [0,1]");
  double sum = 0.0;
  for (double v : p) {
    if (v < -tol::trace)
      throw InvalidDistributionError("mid_counterexample: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw InvalidDistributionError("mid_counterexample: p does not sum to 1");

  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    rho += (1.0 - q) * p[static_cast<size_t>(i)] * projector(basis_ket(4, i));

  const double s = 1.0 / std::sqrt(2.0);
  Vector plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  rho += (q / 2.0) * projector(tensor_product_kets({plus, plus}));
  rho += (q / 2.0) * projector(tensor_product_kets({minus, minus}));
  return validate({2, 2}, rho);
}

MultipartiteState random_state(const std::vector<int>& dims, int rank,
                               std::uint64_t seed) {
  long total = 1;
  for (int d : dims) total *= d;
  if (rank < 1 || rank > total)
    throw DimensionMismatchError("random_state: rank outside [1, total dim]");

  detail::Rng rng(seed);
  // Pure state on system x ancilla, reduced over the ancilla.
  Vector psi(total * rank);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    psi[i] = rng.next_complex_gaussian();
  psi /= psi.norm();

  Matrix full = psi * psi.adjoint();
  std::vector<int> joint_dims{static_cast<int>(total), rank};
  Matrix rho = partial_trace(full, joint_dims, {0});
  return validate(dims, 0.5 * (rho + rho.adjoint()));
}

ProductBasis random_product_basis(const std::vector<int>& dims,
                                  std::uint64_t seed) {
  ProductBasis basis;
  basis.locals.reserve(dims.size());
  for (size_t n = 0; n < dims.size(); ++n) {
    detail::Rng rng(detail::mix_seed(seed, n));
    basis.locals.push_back(detail::haar_unitary(dims[n], rng));
  }
  return basis;
}

std::vector<Vector> random_product_kets(const std::vector<int>& dims,
                                        std::uint64_t seed) {
  std::vector<Vector> kets;
  kets.reserve(dims.size());
  for (size_t n = 0; n < dims.size(); ++n) {
    detail::Rng rng(detail::mix_seed(seed, n));
    kets.push_back(detail::haar_ket(dims[n], rng));
  }
  return kets;
}

}  // namespace corrgeo
