#include "oracles.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>

namespace oracles {

using corrgeo::Complex;
using corrgeo::Matrix;
using corrgeo::Vector;

namespace {

const double kLog2 = std::log(2.0);

Matrix pauli(int i) {
  Matrix s(2, 2);
  s.setZero();
  switch (i) {
    case 0: s(0, 0) = 1; s(1, 1) = 1; break;
    case 1: s(0, 1) = 1; s(1, 0) = 1; break;
    case 2: s(0, 1) = Complex(0, -1); s(1, 0) = Complex(0, 1); break;
    default: s(0, 0) = 1; s(1, 1) = -1; break;
  }
  return s;
}

struct PauliCoords {
  double ra[3], rb[3], t[3][3];
};

PauliCoords pauli_coordinates(const Matrix& rho) {
  PauliCoords c{};
  for (int i = 0; i < 3; ++i) {
    Matrix kron_a = Matrix::Zero(4, 4), kron_b = Matrix::Zero(4, 4);
    const Matrix si = pauli(i + 1), id = pauli(0);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) {
        kron_a.block(2 * r, 2 * cc, 2, 2) = si(r, cc) * id;
        kron_b.block(2 * r, 2 * cc, 2, 2) = id(r, cc) * si;
      }
    c.ra[i] = std::real((rho * kron_a).trace());
    c.rb[i] = std::real((rho * kron_b).trace());
    for (int j = 0; j < 3; ++j) {
      Matrix kron_t = Matrix::Zero(4, 4);
      const Matrix sj = pauli(j + 1);
      for (int r = 0; r < 2; ++r)
        for (int cc = 0; cc < 2; ++cc)
          kron_t.block(2 * r, 2 * cc, 2, 2) = si(r, cc) * sj;
      c.t[i][j] = std::real((rho * kron_t).trace());
    }
  }
  return c;
}

struct Direction {
  double n[3];
};

std::vector<Direction> axis_grid(double step_degrees) {
  // Measurement axes are lines, so the closed upper hemisphere (theta in
  // [0, 90], phi in [0, 360)) covers every distinct basis; the equator is
  // double-counted, which is harmless for a minimum.
  std::vector<Direction> dirs;
  const double to_rad = std::numbers::pi / 180.0;
  for (double theta = 0.0; theta <= 90.0 + 1e-9; theta += step_degrees)
    for (double phi = 0.0; phi < 360.0 - 1e-9; phi += step_degrees) {
      Direction d;
      d.n[0] = std::sin(theta * to_rad) * std::cos(phi * to_rad);
      d.n[1] = std::sin(theta * to_rad) * std::sin(phi * to_rad);
      d.n[2] = std::cos(theta * to_rad);
      dirs.push_back(d);
    }
  return dirs;
}

inline double plogp_sum4(double p0, double p1, double p2, double p3) {
  double s = 0.0;
  if (p0 > 0.0) s -= p0 * std::log(p0);
  if (p1 > 0.0) s -= p1 * std::log(p1);
  if (p2 > 0.0) s -= p2 * std::log(p2);
  if (p3 > 0.0) s -= p3 * std::log(p3);
  return s / kLog2;
}

// Branchless log2 for the grid hot loop: exponent from the bit pattern,
// mantissa via the atanh series on [0.5, 1). Absolute error < 1e-9 on
// normal doubles; the value at 0 is a finite garbage number, harmless
// because it is always multiplied by p = 0. Verified against std::log2 in
// the unit tests.
inline double fast_log2(double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof(bits));
  const int e = static_cast<int>((bits >> 52) & 0x7ffULL) - 1022;
  bits = (bits & 0x000fffffffffffffULL) | 0x3fe0000000000000ULL;
  double m;
  std::memcpy(&m, &bits, sizeof(m));
  const double z = (m - 1.0) / (m + 1.0);
  const double z2 = z * z;
  const double atanh =
      z * (1.0 + z2 * (1.0 / 3 + z2 * (1.0 / 5 + z2 * (1.0 / 7 + z2 *
          (1.0 / 9 + z2 * (1.0 / 11 + z2 * (1.0 / 13 + z2 / 15)))))));
  return static_cast<double>(e) + (2.0 / kLog2) * atanh;
}

inline double fast_entropy4(double p0, double p1, double p2, double p3) {
  p0 = p0 > 0.0 ? p0 : 0.0;
  p1 = p1 > 0.0 ? p1 : 0.0;
  p2 = p2 > 0.0 ? p2 : 0.0;
  p3 = p3 > 0.0 ? p3 : 0.0;
  return -(p0 * fast_log2(p0) + p1 * fast_log2(p1) + p2 * fast_log2(p2) +
           p3 * fast_log2(p3));
}

double binary_h(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) / kLog2;
}

}  // namespace

double entropy_bits(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v > 0.0) s -= v * std::log(v);
  }
  return s / kLog2;
}

double relative_entropy_bits(const Matrix& x, const Matrix& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(y);
  double cross = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double mu = es.eigenvalues()[k];
    const Vector v = es.eigenvectors().col(k);
    const double weight = std::real(v.dot(x * v));
    if (mu <= 1e-12) {
      if (weight > 1e-9) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log(mu);
  }
  return cross / kLog2 - entropy_bits(x);
}

std::array<double, 4> dephasing_probs_two_qubit(const Matrix& rho,
                                                double theta_a, double phi_a,
                                                double theta_b, double phi_b) {
  const PauliCoords c = pauli_coordinates(rho);
  const double na[3] = {std::sin(theta_a) * std::cos(phi_a),
                        std::sin(theta_a) * std::sin(phi_a),
                        std::cos(theta_a)};
  const double nb[3] = {std::sin(theta_b) * std::cos(phi_b),
                        std::sin(theta_b) * std::sin(phi_b),
                        std::cos(theta_b)};
  double u = 0.0, v = 0.0, w = 0.0;
  for (int i = 0; i < 3; ++i) {
    u += na[i] * c.ra[i];
    v += nb[i] * c.rb[i];
    for (int j = 0; j < 3; ++j) w += na[i] * c.t[i][j] * nb[j];
  }
  return {0.25 * (1 + u + v + w), 0.25 * (1 + u - v - w),
          0.25 * (1 - u + v - w), 0.25 * (1 - u - v + w)};
}

GridMinimum dephasing_entropy_grid_min(const Matrix& rho, double step_degrees) {
  const PauliCoords c = pauli_coordinates(rho);
  const std::vector<Direction> dirs = axis_grid(step_degrees);
  const size_t n = dirs.size();

  // Per-direction contractions for both parties.
  std::vector<double> ua(n), vb(n), ma0(n), ma1(n), ma2(n);
  std::vector<double> nb0(n), nb1(n), nb2(n);
  for (size_t i = 0; i < n; ++i) {
    const double* d = dirs[i].n;
    ua[i] = d[0] * c.ra[0] + d[1] * c.ra[1] + d[2] * c.ra[2];
    vb[i] = d[0] * c.rb[0] + d[1] * c.rb[1] + d[2] * c.rb[2];
    ma0[i] = d[0] * c.t[0][0] + d[1] * c.t[1][0] + d[2] * c.t[2][0];
    ma1[i] = d[0] * c.t[0][1] + d[1] * c.t[1][1] + d[2] * c.t[2][1];
    ma2[i] = d[0] * c.t[0][2] + d[1] * c.t[1][2] + d[2] * c.t[2][2];
    nb0[i] = d[0];
    nb1[i] = d[1];
    nb2[i] = d[2];
  }

  GridMinimum best;
  best.entropy = std::numeric_limits<double>::infinity();
  size_t best_a = 0, best_b = 0;
  double threshold = 0.0;  // evaluate when sum p^2 > 2^-Hmin (else H >= Hmin)

  const auto evaluate = [&](size_t a, size_t b) {
    const double u = ua[a], v = vb[b];
    const double w = ma0[a] * nb0[b] + ma1[a] * nb1[b] + ma2[a] * nb2[b];
    const double p0 = 0.25 * (1 + u + v + w), p1 = 0.25 * (1 + u - v - w);
    const double p2 = 0.25 * (1 - u + v - w), p3 = 0.25 * (1 - u - v + w);
    const double h = plogp_sum4(std::max(p0, 0.0), std::max(p1, 0.0),
                                std::max(p2, 0.0), std::max(p3, 0.0));
    if (h < best.entropy) {
      best.entropy = h;
      best_a = a;
      best_b = b;
      threshold = std::pow(2.0, -h);
    }
  };

  // Coarse pre-pass seeds the branch-and-bound threshold near the optimum.
  const size_t coarse = std::max<size_t>(1, n / 997);
  for (size_t a = 0; a < n; a += coarse)
    for (size_t b = 0; b < n; b += coarse) evaluate(a, b);

  double max_v2 = 0.0;
  for (size_t b = 0; b < n; ++b) max_v2 = std::max(max_v2, vb[b] * vb[b]);

  constexpr size_t kBlock = 4096;
  std::vector<double> wv(kBlock), score(kBlock);

  for (size_t a = 0; a < n; ++a) {
    const double u = ua[a], m0 = ma0[a], m1 = ma1[a], m2 = ma2[a];
    const double bound_base = 1.0 + u * u;
    // Whole-row bound: w^2 <= |m_a|^2 since the axes are unit vectors.
    const double m_len2 = m0 * m0 + m1 * m1 + m2 * m2;
    if (0.25 * (bound_base + max_v2 + m_len2) <= threshold) continue;

    for (size_t start = 0; start < n; start += kBlock) {
      const size_t len = std::min(kBlock, n - start);
      double cutoff = 4.0 * threshold;

      // Branchless pass: the compiler vectorizes this.
      for (size_t j = 0; j < len; ++j) {
        const size_t b = start + j;
        const double w = m0 * nb0[b] + m1 * nb1[b] + m2 * nb2[b];
        wv[j] = w;
        score[j] = bound_base + vb[b] * vb[b] + w * w;
      }

      for (size_t j = 0; j < len; ++j) {
        if (score[j] <= cutoff) continue;  // collision entropy rules it out
        const size_t b = start + j;
        const double v = vb[b], w = wv[j];
        const double p0 = 0.25 * (1 + u + v + w), p1 = 0.25 * (1 + u - v - w);
        const double p2 = 0.25 * (1 - u + v - w), p3 = 0.25 * (1 - u - v + w);
        const double h = fast_entropy4(p0, p1, p2, p3);  // err below 5e-9
        if (h < best.entropy + 1e-8) {
          const double exact = plogp_sum4(std::max(p0, 0.0), std::max(p1, 0.0),
                                          std::max(p2, 0.0), std::max(p3, 0.0));
          if (exact < best.entropy) {
            best.entropy = exact;
            best_a = a;
            best_b = b;
            threshold = std::pow(2.0, -exact);
            cutoff = 4.0 * threshold;
          }
        }
      }
    }
  }

  const double to_rad = std::numbers::pi / 180.0;
  const size_t per_theta = static_cast<size_t>(std::floor(360.0 / step_degrees));
  best.theta_a = static_cast<double>(best_a / per_theta) * step_degrees * to_rad;
  best.phi_a = static_cast<double>(best_a % per_theta) * step_degrees * to_rad;
  best.theta_b = static_cast<double>(best_b / per_theta) * step_degrees * to_rad;
  best.phi_b = static_cast<double>(best_b % per_theta) * step_degrees * to_rad;
  return best;
}

double original_discord_grid_min(const Matrix& rho, double step_degrees) {
  const PauliCoords c = pauli_coordinates(rho);
  const std::vector<Direction> dirs = axis_grid(step_degrees);

  // S(rho_A) and S(rho) are direction independent.
  const double ra_len =
      std::sqrt(c.ra[0] * c.ra[0] + c.ra[1] * c.ra[1] + c.ra[2] * c.ra[2]);
  const double s_a = binary_h(0.5 * (1.0 + std::min(ra_len, 1.0)));
  const double s_rho = entropy_bits(rho);

  double best = std::numeric_limits<double>::infinity();
  for (const Direction& d : dirs) {
    const double u = d.n[0] * c.ra[0] + d.n[1] * c.ra[1] + d.n[2] * c.ra[2];
    double m[3];
    for (int j = 0; j < 3; ++j)
      m[j] = d.n[0] * c.t[0][j] + d.n[1] * c.t[1][j] + d.n[2] * c.t[2][j];

    const double p_plus = 0.5 * (1.0 + u), p_minus = 0.5 * (1.0 - u);
    double acc = s_a - s_rho;
    for (int sign = 0; sign < 2; ++sign) {
      const double p = sign == 0 ? p_plus : p_minus;
      if (p <= 1e-15) continue;
      const double s = sign == 0 ? 1.0 : -1.0;
      double beta = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double bj = (c.rb[j] + s * m[j]) / (2.0 * p);
        beta += bj * bj;
      }
      beta = std::min(std::sqrt(beta), 1.0);
      acc += p * binary_h(0.5 * (1.0 + beta));
    }
    best = std::min(best, acc);
  }
  return best;
}

corrgeo::MultipartiteState random_test_state(const std::vector<int>& dims,
                                             int rank, std::uint64_t seed) {
  long total = 1;
  for (int d : dims) total *= d;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto gaussian = [&] {
    double u = 0.0;
    do {
      u = unit(gen);
    } while (u <= 0.0);
    const double v = unit(gen);
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * std::numbers::pi * v);
  };

  Eigen::MatrixXcd g(total, rank);
  for (long i = 0; i < total; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(gaussian(), gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return corrgeo::validate(dims, 0.5 * (rho + rho.adjoint()));
}

}  // namespace oracles
