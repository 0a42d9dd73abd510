#include <doctest.h>

#include <cmath>

#include "corrgeo/state.hpp"
#include "corrgeo/tensor.hpp"
#include "support/oracles.hpp"

using namespace corrgeo;

namespace {

Matrix random_hermitian(int d, std::uint64_t seed) {
  detail::Rng rng(seed);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.next_complex_gaussian();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("eig_hermitian diagonal input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  const HermitianEigensystem es = eig_hermitian(m);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(es.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(max_abs_diff(es.eigenvectors, Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("eig_hermitian pauli-x") {
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  const HermitianEigensystem es = eig_hermitian(sx);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(es.eigenvalues[1] == doctest::Approx(-1.0));
  const double s = 1.0 / std::sqrt(2.0);
  // phase normalization makes the first entries real positive
  CHECK(std::abs(es.eigenvectors(0, 0) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(es.eigenvectors(1, 0) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(es.eigenvectors(0, 1) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(es.eigenvectors(1, 1) - Complex(-s, 0)) < 1e-12);
}

TEST_CASE("eig_hermitian random reconstruction and orthonormality") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix m = random_hermitian(4, seed);
    const HermitianEigensystem es = eig_hermitian(m);
    CHECK(max_abs_diff(es.reconstruct(), m) <= 1e-9);
    CHECK(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                       Matrix::Identity(4, 4)) <= 1e-10);
    for (int i = 0; i + 1 < 4; ++i)
      CHECK(es.eigenvalues[i] >= es.eigenvalues[i + 1]);
  }
}

TEST_CASE("eig_hermitian deterministic across calls") {
  const Matrix m = random_hermitian(6, 99);
  const HermitianEigensystem a = eig_hermitian(m);
  const HermitianEigensystem b = eig_hermitian(m);
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
}

TEST_CASE("eig_hermitian rejects non-hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eig_hermitian(m), NonHermitianError);
}

TEST_CASE("tensor_product identities") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(tensor_product(i2, i2), Matrix::Identity(4, 4)) == 0.0);

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(max_abs_diff(tensor_product(a, b), expected) == 0.0);
}

TEST_CASE("tensor_product trace multiplicativity") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const Matrix a = random_hermitian(3, seed);
    const Matrix b = random_hermitian(2, seed + 1000);
    const Complex lhs = tensor_product(a, b).trace();
    const Complex rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("partial_trace recovers factors of a product state") {
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    const MultipartiteState a = random_state({2}, 2, seed);
    const MultipartiteState b = random_state({3}, 3, seed + 77);
    const Matrix joint = tensor_product(a.rho, b.rho);
    CHECK(max_abs_diff(partial_trace(joint, {2, 3}, {0}), a.rho) < 1e-12);
    CHECK(max_abs_diff(partial_trace(joint, {2, 3}, {1}), b.rho) < 1e-12);
  }
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  const MultipartiteState bell = bell_diagonal({1.0, 0.0, 0.0, 0.0});
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs_diff(partial_trace(bell.rho, {2, 2}, {0}), half) < 1e-12);
  CHECK(max_abs_diff(partial_trace(bell.rho, {2, 2}, {1}), half) < 1e-12);
}

TEST_CASE("partial_trace of the W state marginals") {
  // expanding the |W> amplitudes by hand gives diag(2/3, 1/3) per qubit
  const MultipartiteState w = w_state();
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0 / 3.0;
  expected(1, 1) = 1.0 / 3.0;
  for (int p = 0; p < 3; ++p)
    CHECK(max_abs_diff(w.marginal(p), expected) < 1e-12);
}

TEST_CASE("partial_trace composes and preserves trace") {
  const MultipartiteState x = random_state({2, 2, 2}, 8, 1234);
  const Matrix once = partial_trace(x.rho, {2, 2, 2}, {0});
  const Matrix ab = partial_trace(x.rho, {2, 2, 2}, {0, 1});
  const Matrix twice = partial_trace(ab, {2, 2}, {0});
  CHECK(max_abs_diff(once, twice) <= 1e-10);
  CHECK(std::abs(once.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("partial_trace dimension errors") {
  const Matrix m = Matrix::Identity(5, 5);
  CHECK_THROWS_AS(partial_trace(m, {2, 3}, {}), DimensionMismatchError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {0}), DimensionMismatchError);
  CHECK_THROWS_AS(partial_trace(Matrix::Identity(6, 6), {2, 3}, {2}),
                  DimensionMismatchError);
}

TEST_CASE("von_neumann_entropy basics") {
  CHECK(von_neumann_entropy(0.25 * Matrix::Identity(4, 4)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  const MultipartiteState pure = random_state({2, 2}, 1, 7);
  CHECK(von_neumann_entropy(pure.rho) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("von_neumann_entropy of a Bell-diagonal spectrum") {
  // oracle: -sum lambda log2 lambda = 1.3567796494470393 bits
  const MultipartiteState rho = bell_diagonal({0.7, 0.1, 0.1, 0.1});
  CHECK(von_neumann_entropy(rho.rho) ==
        doctest::Approx(1.3567796494470393).epsilon(1e-11));
}

TEST_CASE("von_neumann_entropy rejects invalid states") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  CHECK_THROWS_AS(von_neumann_entropy(m), NotAStateError);

  CHECK_THROWS_AS(von_neumann_entropy(2.0 * Matrix::Identity(2, 2)),
                  NotAStateError);
}

TEST_CASE("relative_entropy of a state with itself vanishes") {
  for (std::uint64_t seed = 60; seed < 65; ++seed) {
    const MultipartiteState x = random_state({2, 2}, 4, seed);
    CHECK(relative_entropy(x.rho, x.rho) == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("relative_entropy detects disjoint supports") {
  Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  const double v = relative_entropy(zero, one);
  CHECK(is_infinite_divergence(v));
}

TEST_CASE("relative_entropy of W against its closest separable state") {
  // log2(27/12): the W projector has weight 12/27 in sigma's spectrum
  const MultipartiteState w = w_state();
  const MultipartiteState sigma = closest_separable_w();
  CHECK(relative_entropy(w.rho, sigma.rho) ==
        doctest::Approx(1.1699250014423124).epsilon(1e-10));
}

TEST_CASE("relative_entropy Klein inequality on random pairs") {
  for (std::uint64_t seed = 70; seed < 85; ++seed) {
    const MultipartiteState x = random_state({2, 2}, 4, seed);
    const MultipartiteState y = random_state({2, 2}, 4, seed + 500);
    const double d = relative_entropy(x.rho, y.rho);
    CHECK(d >= -1e-9);
    if (d <= 1e-10) CHECK(max_abs_diff(x.rho, y.rho) <= 1e-8);
  }
}

TEST_CASE("entropy is unitarily invariant") {
  const MultipartiteState x = random_state({2, 2}, 3, 4242);
  detail::Rng rng(31337);
  const Matrix u = detail::haar_unitary(4, rng);
  const Matrix rotated = u * x.rho * u.adjoint();
  CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(x.rho)) <=
        1e-9);
}

TEST_CASE("entropy is additive over tensor products") {
  const MultipartiteState a = random_state({2}, 2, 11);
  const MultipartiteState b = random_state({3}, 3, 12);
  const double joint = von_neumann_entropy(tensor_product(a.rho, b.rho));
  CHECK(std::abs(joint - von_neumann_entropy(a.rho) -
                 von_neumann_entropy(b.rho)) <= 1e-9);
}

TEST_CASE("grid oracle minimum is an actually attained entropy") {
  // the coarse grid run must return the entropy of the basis it reports
  const MultipartiteState rho = oracles::random_test_state({2, 2}, 4, 321);
  const oracles::GridMinimum g =
      oracles::dephasing_entropy_grid_min(rho.rho, 15.0);
  const auto p = oracles::dephasing_probs_two_qubit(rho.rho, g.theta_a, g.phi_a,
                                                    g.theta_b, g.phi_b);
  double expected = 0.0;
  for (double v : p)
    if (v > 0) expected -= v * std::log2(v);
  CHECK(g.entropy == doctest::Approx(expected).epsilon(1e-9));
}
