#include "corrgeo/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrgeo/classical.hpp"
#include "corrgeo/nelder_mead.hpp"
#include "corrgeo/parallel.hpp"

namespace corrgeo {

namespace {

const double kLog2 = std::log(2.0);
constexpr double kMixEps = 1e-9;

}  // namespace

void SeparableAnsatz::check() const {
  double sum = 0.0;
  for (const Term& t : terms) {
    if (t.weight < -tol::trace)
      throw InvalidDistributionError("SeparableAnsatz: negative weight");
    sum += t.weight;
    if (t.kets.size() != dims.size())
      throw DimensionMismatchError("SeparableAnsatz: term arity mismatch");
    for (size_t n = 0; n < t.kets.size(); ++n) {
      if (t.kets[n].size() != dims[n])
        throw DimensionMismatchError("SeparableAnsatz: ket dimension mismatch");
      if (std::abs(t.kets[n].norm() - 1.0) > tol::trace)
        throw NotAStateError("SeparableAnsatz: ket is not unit norm");
    }
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw InvalidDistributionError("SeparableAnsatz: weights do not sum to 1");
}

MultipartiteState SeparableAnsatz::assemble() const {
  check();
  long total = 1;
  for (int d : dims) total *= d;
  Matrix rho = Matrix::Zero(total, total);
  for (const Term& t : terms) {
    if (t.weight <= 0.0) continue;
    const Vector full = tensor_product_kets(t.kets);
    rho.noalias() += t.weight * (full * full.adjoint());
  }
  return validate(dims, rho);
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         int party) {
  const int n_parties = static_cast<int>(dims.size());
  if (party < 0 || party >= n_parties)
    throw DimensionMismatchError("partial_transpose: party out of range");
  long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != m.cols() || m.rows() != total)
    throw DimensionMismatchError("partial_transpose: dimension mismatch");

  const int d = dims[static_cast<size_t>(party)];
  long after = 1;
  for (int p = party + 1; p < n_parties; ++p) after *= dims[static_cast<size_t>(p)];

  Matrix out(total, total);
  for (long r = 0; r < total; ++r) {
    const long kr = (r / after) % d;
    for (long c = 0; c < total; ++c) {
      const long kc = (c / after) % d;
      const long r2 = r + (kc - kr) * after;
      const long c2 = c + (kr - kc) * after;
      out(r, c) = m(r2, c2);
    }
  }
  return out;
}

bool ppt_two_qubits(const MultipartiteState& x) {
  if (x.dims != std::vector<int>{2, 2})
    throw WrongArityError("ppt_two_qubits: input is not two qubits");
  const Matrix pt = partial_transpose(x.rho, x.dims, 1);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (pt + pt.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol::psd;
}

double fidelity_with_pure(const MultipartiteState& x, const Vector& psi) {
  return std::real(psi.dot(x.rho * psi));
}

namespace {

MultipartiteState mixed_with_identity(const MultipartiteState& sigma) {
  const long total = sigma.total_dim();
  MultipartiteState out;
  out.dims = sigma.dims;
  out.rho = (1.0 - kMixEps) * sigma.rho +
            (kMixEps / static_cast<double>(total)) *
                Matrix::Identity(total, total);
  return out;
}

Vector pure_reference_w() {
  Vector w = Vector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  w[4] = a; w[2] = a; w[1] = a;
  return w;
}

Vector pure_reference_c4() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector zero(2), one(2), plus(2), minus(2);
  zero << 1, 0;
  one << 0, 1;
  plus << s, s;
  minus << s, -s;
  Vector c4 = tensor_product_kets({zero, plus, zero, plus}) +
              tensor_product_kets({one, plus, one, plus}) +
              tensor_product_kets({zero, minus, one, minus}) +
              tensor_product_kets({one, minus, zero, minus});
  return 0.5 * c4;
}

ReeResult tabulated(const MultipartiteState& x, MultipartiteState sigma,
                    const char* method) {
  ReeResult r;
  r.sigma = std::move(sigma);
  r.value = relative_entropy(x.rho, r.sigma.rho);
  r.method = method;
  r.diagnostics.terms = 0;
  r.diagnostics.converged = true;
  r.sigma_candidates = {r.sigma};
  const double cross = r.value + von_neumann_entropy(x.rho);
  r.diagnostics.sigma_entropy_dominates =
      von_neumann_entropy(r.sigma.rho) + tol::psd >= cross;
  return r;
}

// Bell-basis coordinates; returns true and the diagonal when the state is
// diagonal in the Bell basis within 1e-9.
bool bell_diagonal_coordinates(const MultipartiteState& x, RealVector& lambda,
                               Matrix& bell) {
  const double s = 1.0 / std::sqrt(2.0);
  bell = Matrix::Zero(4, 4);
  bell(0, 0) = s;  bell(3, 0) = s;
  bell(0, 1) = s;  bell(3, 1) = -s;
  bell(1, 2) = s;  bell(2, 2) = s;
  bell(1, 3) = s;  bell(2, 3) = -s;
  const Matrix d = bell.adjoint() * x.rho * bell;
  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off = std::max(off, std::abs(d(i, j)));
  if (off > 1e-9) return false;
  lambda = d.diagonal().real();
  return true;
}

}  // namespace

ReeResult ree_pure_bipartite(const MultipartiteState& psi) {
  if (psi.parties() != 2)
    throw WrongArityError("ree_pure_bipartite: input must be bipartite");
  const double purity = std::real((psi.rho * psi.rho).trace());
  if (purity < 1.0 - 1e-9)
    throw NotPureError("ree_pure_bipartite: purity below 1 - 1e-9");

  const HermitianEigensystem es = eig_hermitian(psi.rho);
  const Vector state = es.eigenvectors.col(0);
  const int da = psi.dims[0], db = psi.dims[1];
  Matrix amplitudes(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) amplitudes(i, j) = state[i * db + j];

  Eigen::JacobiSVD<Matrix> svd(amplitudes,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();

  RealVector schmidt_sq(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) schmidt_sq[k] = s[k] * s[k];
  const double total = schmidt_sq.sum();
  schmidt_sq /= total;

  SeparableAnsatz ansatz;
  ansatz.dims = psi.dims;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (schmidt_sq[k] <= 1e-15) continue;
    SeparableAnsatz::Term term;
    term.weight = schmidt_sq[k];
    term.kets = {svd.matrixU().col(k), svd.matrixV().col(k).conjugate()};
    ansatz.terms.push_back(std::move(term));
  }

  ReeResult r;
  r.sigma = ansatz.assemble();
  r.value = shannon_entropy(schmidt_sq);
  r.method = "analytic-pure-bipartite";
  r.sigma_candidates = {r.sigma};

  // T = E + C must close exactly for pure bipartite states.
  const double t = von_neumann_entropy(closest_product_state(psi).rho) -
                   von_neumann_entropy(psi.rho);
  const double c = von_neumann_entropy(closest_product_state(r.sigma).rho) -
                   von_neumann_entropy(r.sigma.rho);
  if (std::abs(t - (r.value + c)) > 1e-9)
    throw ConsistencyError("ree_pure_bipartite: T = E + C violated beyond 1e-9");

  const double check = relative_entropy(psi.rho, r.sigma.rho);
  if (std::isfinite(check)) r.value = check;
  r.diagnostics.sigma_entropy_dominates =
      von_neumann_entropy(r.sigma.rho) + tol::psd >=
      r.value + von_neumann_entropy(psi.rho);
  return r;
}

namespace {

// ---- numeric path -------------------------------------------------------

struct WorkingAnsatz {
  std::vector<int> dims;
  std::vector<double> weights;
  std::vector<std::vector<Vector>> kets;  // [term][party]
  std::vector<Vector> full;               // cached Kronecker kets

  int terms() const { return static_cast<int>(weights.size()); }

  void refresh_full(int i) {
    full[static_cast<size_t>(i)] = tensor_product_kets(kets[static_cast<size_t>(i)]);
  }
  void refresh_all() {
    full.resize(kets.size());
    for (int i = 0; i < terms(); ++i) refresh_full(i);
  }

  Matrix sigma(long total) const {
    Matrix s = Matrix::Zero(total, total);
    for (int i = 0; i < terms(); ++i) {
      const double w = weights[static_cast<size_t>(i)];
      if (w <= 0.0) continue;
      s.noalias() += w * (full[static_cast<size_t>(i)] *
                          full[static_cast<size_t>(i)].adjoint());
    }
    return s;
  }
};

// -tr(rho log2 sigma_mixed), the part of E that depends on the ansatz.
double cross_term(const Matrix& rho, const Matrix& sigma, long total) {
  Matrix mixed = (1.0 - kMixEps) * sigma +
                 (kMixEps / static_cast<double>(total)) *
                     Matrix::Identity(total, total);
  Eigen::SelfAdjointEigenSolver<Matrix> es(mixed);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double mu = std::max(es.eigenvalues()[k], kMixEps / (10.0 * total));
    const Vector v = es.eigenvectors().col(k);
    acc -= std::real(v.dot(rho * v)) * std::log(mu);
  }
  return acc / kLog2;
}

// Gradient matrix of w -> -tr(rho ln sigma(w)): G in the sigma eigenbasis
// is rho with entries scaled by the divided differences of ln.
Matrix log_gradient_matrix(const Matrix& rho, const Matrix& sigma, long total) {
  Matrix mixed = (1.0 - kMixEps) * sigma +
                 (kMixEps / static_cast<double>(total)) *
                     Matrix::Identity(total, total);
  Eigen::SelfAdjointEigenSolver<Matrix> es(mixed);
  const RealVector mu = es.eigenvalues();
  const Matrix v = es.eigenvectors();
  Matrix rt = v.adjoint() * rho * v;
  const double floor = kMixEps / (10.0 * total);
  for (Eigen::Index a = 0; a < mu.size(); ++a) {
    const double ma = std::max(mu[a], floor);
    for (Eigen::Index b = 0; b < mu.size(); ++b) {
      const double mb = std::max(mu[b], floor);
      double kernel;
      if (std::abs(ma - mb) < 1e-13 * std::max(ma, mb))
        kernel = 1.0 / ma;
      else
        kernel = (std::log(ma) - std::log(mb)) / (ma - mb);
      rt(a, b) *= kernel;
    }
  }
  return v * rt * v.adjoint();
}

void weight_step(const Matrix& rho, WorkingAnsatz& ansatz, long total,
                 const ReeOptions& opts) {
  const int m = ansatz.terms();
  double f = cross_term(rho, ansatz.sigma(total), total);
  double eta = 1.0;
  std::vector<double> trial(static_cast<size_t>(m));

  for (int iter = 0; iter < opts.max_weight_iters; ++iter) {
    const Matrix g = log_gradient_matrix(rho, ansatz.sigma(total), total);
    RealVector ascent(m);
    for (int i = 0; i < m; ++i) {
      const Vector& t = ansatz.full[static_cast<size_t>(i)];
      ascent[i] = std::real(t.dot(g * t));  // = -d f / d w_i up to a constant
    }
    const double top = ascent.maxCoeff();

    bool accepted = false;
    while (eta > 1e-12) {
      double z = 0.0;
      for (int i = 0; i < m; ++i) {
        trial[static_cast<size_t>(i)] =
            ansatz.weights[static_cast<size_t>(i)] * std::exp(eta * (ascent[i] - top));
        z += trial[static_cast<size_t>(i)];
      }
      for (double& w : trial) w /= z;

      std::swap(ansatz.weights, trial);
      const double f_new = cross_term(rho, ansatz.sigma(total), total);
      if (f_new <= f + 1e-15) {
        const double gain = f - f_new;
        f = f_new;
        accepted = true;
        eta = std::min(eta * 1.5, 64.0);
        if (gain < opts.weight_tol) return;
        break;
      }
      std::swap(ansatz.weights, trial);  // reject, restore
      eta *= 0.5;
    }
    if (!accepted) return;
  }
}

// Unitary whose first column is the given unit ket; frames the local chart
// of the ket refinement at the current point.
Matrix frame_from_ket(const Vector& ket) {
  const int d = static_cast<int>(ket.size());
  Eigen::HouseholderQR<Matrix> qr(ket);
  Matrix q = qr.householderQ();
  const Complex overlap = q.col(0).dot(ket);  // conj(q0) . ket
  const double mag = std::abs(overlap);
  if (mag > 1e-12) q.col(0) *= overlap / mag;
  return q;
}

double ket_sweep(const Matrix& rho, WorkingAnsatz& ansatz, long total,
                 const ReeOptions& opts, double current_cross) {
  const int m = ansatz.terms();
  const int parties = static_cast<int>(ansatz.dims.size());
  double cross = current_cross;

  for (int i = 0; i < m; ++i) {
    const double w = ansatz.weights[static_cast<size_t>(i)];
    if (w < 1e-9) continue;  // dead term, not worth a simplex run
    Matrix sigma_rest = ansatz.sigma(total);
    sigma_rest.noalias() -= w * (ansatz.full[static_cast<size_t>(i)] *
                                 ansatz.full[static_cast<size_t>(i)].adjoint());

    for (int n = 0; n < parties; ++n) {
      const int d = ansatz.dims[static_cast<size_t>(n)];
      if (d < 2) continue;
      const Matrix frame = frame_from_ket(ansatz.kets[static_cast<size_t>(i)][static_cast<size_t>(n)]);

      std::vector<Vector> kets = ansatz.kets[static_cast<size_t>(i)];
      const auto objective = [&](const std::vector<double>& p) {
        kets[static_cast<size_t>(n)] = frame * decode_local_ket(d, p.data());
        const Vector full = tensor_product_kets(kets);
        Matrix sigma = sigma_rest;
        sigma.noalias() += w * (full * full.adjoint());
        return cross_term(rho, sigma, total);
      };

      SimplexOptions sopts;
      sopts.initial_step = 0.2;
      sopts.f_tol = opts.sweep_tol * 0.1;
      sopts.x_tol = 1e-6;
      sopts.max_evals = opts.ket_refine_evals;
      const SimplexResult r = nelder_mead(
          objective, std::vector<double>(static_cast<size_t>(2 * (d - 1)), 0.0), sopts);

      if (r.f < cross) {
        cross = r.f;
        ansatz.kets[static_cast<size_t>(i)][static_cast<size_t>(n)] =
            frame * decode_local_ket(d, r.x.data());
        ansatz.refresh_full(i);
      }
    }
  }
  return cross;
}

WorkingAnsatz seed_ansatz(const MultipartiteState& x, int m, int restart,
                          std::uint64_t seed) {
  WorkingAnsatz ansatz;
  ansatz.dims = x.dims;
  const long total = x.total_dim();

  std::vector<double> weights;
  std::vector<std::vector<Vector>> kets;

  const auto add_term = [&](double w, std::vector<Vector> local_kets) {
    weights.push_back(w);
    kets.push_back(std::move(local_kets));
  };

  const auto add_basis_dephasing = [&](const ProductBasis& b) {
    const RealVector p = dephasing_probabilities(x.rho, b.locals);
    for (long k = 0; k < total && static_cast<int>(weights.size()) < m; ++k) {
      std::vector<Vector> local_kets;
      long rem = k;
      long block = total;
      for (size_t n = 0; n < x.dims.size(); ++n) {
        block /= x.dims[n];
        const long idx = rem / block;
        rem %= block;
        local_kets.push_back(b.locals[n].col(idx));
      }
      add_term(p[k], std::move(local_kets));
    }
  };

  if (restart == 0) {
    // Eigen-ensemble of x, each eigenvector replaced by its closest
    // product representative (per-party leading marginal eigenvectors).
    const HermitianEigensystem es = eig_hermitian(x.rho);
    for (Eigen::Index k = 0;
         k < es.eigenvalues.size() && static_cast<int>(weights.size()) < m; ++k) {
      if (es.eigenvalues[k] < 1e-12) break;
      const Matrix proj = es.eigenvectors.col(k) * es.eigenvectors.col(k).adjoint();
      std::vector<Vector> local_kets;
      for (int n = 0; n < x.parties(); ++n)
        local_kets.push_back(
            eig_hermitian(partial_trace(proj, x.dims, {n})).eigenvectors.col(0));
      add_term(es.eigenvalues[k], std::move(local_kets));
    }
  } else if (restart == 1) {
    ProductBasis b;
    for (int d : x.dims) b.locals.push_back(Matrix::Identity(d, d));
    add_basis_dephasing(b);
  } else if (restart == 2) {
    ProductBasis b;
    for (int d : x.dims) b.locals.push_back(detail::fourier_matrix(d));
    add_basis_dephasing(b);
  } else if (restart == 3) {
    ProductBasis b;
    for (int p = 0; p < x.parties(); ++p) {
      const int d = x.dims[static_cast<size_t>(p)];
      b.locals.push_back(p % 2 == 0 ? Matrix::Identity(d, d)
                                    : detail::fourier_matrix(d));
    }
    add_basis_dephasing(b);
  } else {
    add_basis_dephasing(
        random_product_basis(x.dims, detail::mix_seed(seed, 3000 + restart)));
  }

  // Pad with random product states up to m terms.
  int fill = 0;
  while (static_cast<int>(weights.size()) < m) {
    add_term(0.5 / static_cast<double>(m),
             random_product_kets(
                 x.dims, detail::mix_seed(seed, 4000 + restart * 977 + fill)));
    ++fill;
  }

  // Floor and normalize so the multiplicative weight updates can reach
  // every term.
  double z = 0.0;
  for (double& w : weights) {
    w = std::max(w, 1e-6);
    z += w;
  }
  for (double& w : weights) w /= z;

  ansatz.weights = std::move(weights);
  ansatz.kets = std::move(kets);
  ansatz.refresh_all();
  return ansatz;
}

struct NumericRun {
  double e = std::numeric_limits<double>::infinity();
  WorkingAnsatz ansatz;
  int sweeps = 0;
  bool hit_sweep_cap = false;
};

NumericRun run_restart(const MultipartiteState& x, int m, int restart,
                       const ReeOptions& opts) {
  const long total = x.total_dim();
  const double s_rho = von_neumann_entropy(x.rho);

  NumericRun run;
  run.ansatz = seed_ansatz(x, m, restart, opts.seed);

  weight_step(x.rho, run.ansatz, total, opts);
  double cross = cross_term(x.rho, run.ansatz.sigma(total), total);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double cross_before = cross;
    cross = ket_sweep(x.rho, run.ansatz, total, opts, cross);
    weight_step(x.rho, run.ansatz, total, opts);
    cross = cross_term(x.rho, run.ansatz.sigma(total), total);
    run.sweeps = sweep + 1;
    if (cross_before - cross < opts.sweep_tol) break;
    if (sweep + 1 == opts.max_sweeps) run.hit_sweep_cap = true;
  }

  run.e = std::max(cross - s_rho, 0.0);
  return run;
}

}  // namespace

ReeResult ree_numeric(const MultipartiteState& x, const ReeOptions& opts) {
  const long total = x.total_dim();
  const int m = opts.terms > 0 ? opts.terms
                               : static_cast<int>(std::min<long>(
                                     total * total, 4096));
  const int restarts = std::max(1, opts.restarts);

  std::vector<NumericRun> runs(static_cast<size_t>(restarts));
  detail::parallel_for_indexed(restarts, [&](int r) {
    runs[static_cast<size_t>(r)] = run_restart(x, m, r, opts);
  });

  size_t best = 0;
  for (size_t r = 1; r < runs.size(); ++r)
    if (runs[r].e < runs[best].e) best = r;

  // Report sigma without the identity admixture when that leaves E
  // unchanged within 1e-9; otherwise keep the mixed (still separable) one.
  SeparableAnsatz reported;
  reported.dims = x.dims;
  for (int i = 0; i < runs[best].ansatz.terms(); ++i) {
    SeparableAnsatz::Term term;
    term.weight = runs[best].ansatz.weights[static_cast<size_t>(i)];
    term.kets = runs[best].ansatz.kets[static_cast<size_t>(i)];
    if (term.weight > 0.0) reported.terms.push_back(std::move(term));
  }
  double z = 0.0;
  for (const auto& t : reported.terms) z += t.weight;
  for (auto& t : reported.terms) t.weight /= z;

  const MultipartiteState bare = reported.assemble();
  const MultipartiteState mixed = validate(x.dims, mixed_with_identity(bare).rho);
  const double e_mixed = relative_entropy(x.rho, mixed.rho);
  const double e_bare = relative_entropy(x.rho, bare.rho);

  ReeResult result;
  if (std::isfinite(e_bare) && std::abs(e_bare - e_mixed) <= 1e-9) {
    result.sigma = bare;
    result.value = e_bare;
  } else {
    result.sigma = mixed;
    result.value = e_mixed;
  }
  if (result.value < 0.0 && result.value >= -tol::psd) result.value = 0.0;
  result.method = "numeric";

  result.diagnostics.terms = m;
  result.diagnostics.restarts = restarts;
  result.diagnostics.sweeps = runs[best].sweeps;
  double runner_up = std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < runs.size(); ++r)
    if (r != best) runner_up = std::min(runner_up, runs[r].e);
  result.diagnostics.converged =
      restarts == 1 ? !runs[best].hit_sweep_cap
                    : (runner_up - runs[best].e) <= 1e-4;

  // Distinct optima within 1e-6 of the best flag sigma non-uniqueness.
  result.sigma_candidates.push_back(result.sigma);
  for (size_t r = 0; r < runs.size(); ++r) {
    if (r == best || runs[r].e - runs[best].e > 1e-6) continue;
    const Matrix candidate = runs[r].ansatz.sigma(total);
    bool distinct = true;
    for (const MultipartiteState& seen : result.sigma_candidates)
      if (max_abs_diff(candidate, seen.rho) <= 1e-4) distinct = false;
    if (distinct)
      result.sigma_candidates.push_back(
          validate(x.dims, mixed_with_identity(
                               validate(x.dims, candidate)).rho));
  }

  const double cross = result.value + von_neumann_entropy(x.rho);
  result.diagnostics.sigma_entropy_dominates =
      von_neumann_entropy(result.sigma.rho) + tol::psd >= cross;
  result.diagnostics.numerically_separable =
      x.dims != std::vector<int>{2, 2} && result.value < 5e-3;
  return result;
}

ReeResult ree(const MultipartiteState& x, const ReeOptions& opts) {
  // Two qubits: PPT decides separability exactly.
  if (x.dims == std::vector<int>{2, 2} && ppt_two_qubits(x)) {
    ReeResult r;
    r.value = 0.0;
    r.sigma = x;
    r.method = "ppt-separable";
    r.sigma_candidates = {x};
    r.diagnostics.sigma_entropy_dominates = true;
    return r;
  }

  if (x.parties() == 2) {
    const double purity = std::real((x.rho * x.rho).trace());
    if (purity >= 1.0 - 1e-9) return ree_pure_bipartite(x);
    if (x.dims == std::vector<int>{2, 2}) {
      RealVector lambda;
      Matrix bell;
      if (bell_diagonal_coordinates(x, lambda, bell)) {
        int top = 0;
        for (int i = 1; i < 4; ++i)
          if (lambda[i] > lambda[top]) top = i;
        // PPT was already ruled out, so lambda_max > 1/2 here.
        Matrix sigma = Matrix::Zero(4, 4);
        for (int i = 0; i < 4; ++i) {
          const double p = i == top
                               ? 0.5
                               : std::max(lambda[i], 0.0) /
                                     (2.0 * (1.0 - lambda[top]));
          sigma += p * (bell.col(i) * bell.col(i).adjoint());
        }
        return tabulated(x, validate(x.dims, sigma), "analytic-bell-diagonal");
      }
    }
  }

  if (x.dims == std::vector<int>{2, 2, 2} &&
      fidelity_with_pure(x, pure_reference_w()) >= 1.0 - 1e-9)
    return tabulated(x, closest_separable_w(), "table-w");

  if (x.dims == std::vector<int>{2, 2, 2, 2} &&
      fidelity_with_pure(x, pure_reference_c4()) >= 1.0 - 1e-9)
    return tabulated(x, closest_separable_cluster4(), "table-cluster4");

  return ree_numeric(x, opts);
}

}  // namespace corrgeo
