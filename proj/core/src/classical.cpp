#include "corrgeo/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "corrgeo/nelder_mead.hpp"
#include "corrgeo/parallel.hpp"

namespace corrgeo {

namespace detail {

Matrix fourier_matrix(int d) {
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      f(j, k) = norm * std::exp(Complex(0.0, 2.0 * std::numbers::pi * j * k / d));
  return f;
}

Matrix phased_fourier_matrix(int d) {
  // Row phases i^j turn the Fourier columns into the "y"-like basis; for
  // qubits the columns are (|0> + i|1>)/sqrt2 and (|0> - i|1>)/sqrt2.
  Matrix f = fourier_matrix(d);
  for (int j = 0; j < d; ++j)
    f.row(j) *= std::exp(Complex(0.0, std::numbers::pi * j / 2.0));
  return f;
}

std::vector<ProductBasis> canonical_frames(const MultipartiteState& x) {
  const int n = x.parties();
  std::vector<Matrix> identity, fourier, phased, marg_eig;
  for (int p = 0; p < n; ++p) {
    const int d = x.dims[static_cast<size_t>(p)];
    identity.push_back(Matrix::Identity(d, d));
    fourier.push_back(fourier_matrix(d));
    phased.push_back(phased_fourier_matrix(d));
    marg_eig.push_back(eig_hermitian(x.marginal(p)).eigenvectors);
  }

  const auto alternating = [&](const std::vector<Matrix>& even,
                               const std::vector<Matrix>& odd) {
    ProductBasis b;
    for (int p = 0; p < n; ++p)
      b.locals.push_back(p % 2 == 0 ? even[static_cast<size_t>(p)]
                                    : odd[static_cast<size_t>(p)]);
    return b;
  };
  const auto composed = [&](const std::vector<Matrix>& lhs,
                            const std::vector<Matrix>& rhs) {
    ProductBasis b;
    for (int p = 0; p < n; ++p)
      b.locals.push_back(lhs[static_cast<size_t>(p)] * rhs[static_cast<size_t>(p)]);
    return b;
  };

  std::vector<ProductBasis> frames;
  frames.push_back(ProductBasis{identity});
  frames.push_back(ProductBasis{fourier});
  frames.push_back(ProductBasis{phased});
  frames.push_back(ProductBasis{marg_eig});
  frames.push_back(alternating(identity, fourier));
  frames.push_back(alternating(fourier, identity));
  frames.push_back(composed(marg_eig, fourier));
  frames.push_back(alternating(identity, phased));
  return frames;
}

}  // namespace detail

RealVector dephasing_probabilities(const Matrix& rho,
                                   const std::vector<Matrix>& locals) {
  const Matrix joint = tensor_product_all(locals);
  const Matrix m = rho * joint;
  RealVector p(joint.cols());
  for (Eigen::Index k = 0; k < joint.cols(); ++k) {
    double v = std::real(joint.col(k).dot(m.col(k)));
    p[k] = v > 0.0 ? v : 0.0;
  }
  return p;
}

MultipartiteState dephase(const MultipartiteState& x, const ProductBasis& b) {
  if (static_cast<int>(b.locals.size()) != x.parties())
    throw DimensionMismatchError("dephase: party count mismatch");
  for (int p = 0; p < x.parties(); ++p)
    if (b.locals[static_cast<size_t>(p)].rows() != x.dims[static_cast<size_t>(p)])
      throw DimensionMismatchError("dephase: local dimension mismatch");

  const Matrix joint = b.joint();
  Vector diag = (joint.adjoint() * x.rho * joint).diagonal();
  Matrix chi = joint * diag.real().cast<Complex>().asDiagonal() * joint.adjoint();
  MultipartiteState out;
  out.dims = x.dims;
  out.rho = 0.5 * (chi + chi.adjoint());
  return out;
}

MultipartiteState dephase_one_party(const MultipartiteState& x, int party,
                                    const Matrix& local_basis) {
  if (party < 0 || party >= x.parties())
    throw DimensionMismatchError("dephase_one_party: party out of range");
  const int d = x.dims[static_cast<size_t>(party)];
  if (local_basis.rows() != d || local_basis.cols() != d)
    throw DimensionMismatchError("dephase_one_party: local dimension mismatch");

  std::vector<Matrix> ops;
  for (int p = 0; p < x.parties(); ++p)
    ops.push_back(p == party ? local_basis
                             : Matrix::Identity(x.dims[static_cast<size_t>(p)],
                                                x.dims[static_cast<size_t>(p)]));
  const Matrix w = tensor_product_all(ops);
  Matrix y = w.adjoint() * x.rho * w;

  // Zero every element whose party index differs between row and column.
  long after = 1;
  for (int p = party + 1; p < x.parties(); ++p)
    after *= x.dims[static_cast<size_t>(p)];
  const long total = x.total_dim();
  for (long r = 0; r < total; ++r) {
    const long kr = (r / after) % d;
    for (long c = 0; c < total; ++c) {
      const long kc = (c / after) % d;
      if (kr != kc) y(r, c) = Complex(0.0, 0.0);
    }
  }

  Matrix chi = w * y * w.adjoint();
  MultipartiteState out;
  out.dims = x.dims;
  out.rho = 0.5 * (chi + chi.adjoint());
  return out;
}

MultipartiteState closest_product_state(const MultipartiteState& x) {
  std::vector<Matrix> marginals;
  marginals.reserve(static_cast<size_t>(x.parties()));
  for (int p = 0; p < x.parties(); ++p) marginals.push_back(x.marginal(p));
  MultipartiteState out;
  out.dims = x.dims;
  out.rho = tensor_product_all(marginals);
  return out;
}

MeasureValue total_mutual_information(const MultipartiteState& x) {
  const MultipartiteState pi = closest_product_state(x);
  MeasureValue m;
  m.value = von_neumann_entropy(pi.rho) - von_neumann_entropy(x.rho);
  if (m.value < 0.0 && m.value >= -tol::psd) m.value = 0.0;
  m.method = "analytic";
  m.witness = pi;
  return m;
}

namespace {

struct RestartOutcome {
  double entropy = std::numeric_limits<double>::infinity();
  std::vector<Matrix> locals;
  bool converged = false;
};

// One local search in the frame V: the basis is V_n * exp(A_n(p)) per
// party, started at p = 0. Carrying the seed frame this way lets any
// basis seed the search while the chart stays the exponential one.
RestartOutcome refine_in_frame(const MultipartiteState& x,
                               const ProductBasis& frame,
                               const SearchOptions& opts) {
  const std::vector<int>& dims = x.dims;
  std::vector<int> offsets;
  int n_params = 0;
  for (int d : dims) {
    offsets.push_back(n_params);
    n_params += BasisParameters::party_block_size(d);
  }

  std::vector<Matrix> locals(dims.size());
  const auto decode_into = [&](const std::vector<double>& p) {
    for (size_t i = 0; i < dims.size(); ++i)
      locals[i] = frame.locals[i] *
                  decode_local_unitary(dims[i], p.data() + offsets[i]);
  };
  const auto objective = [&](const std::vector<double>& p) {
    decode_into(p);
    return shannon_entropy(dephasing_probabilities(x.rho, locals));
  };

  SimplexOptions sopts;
  sopts.initial_step = 0.35;
  sopts.f_tol = opts.entropy_tol;
  sopts.x_tol = opts.param_tol;
  sopts.max_evals = opts.max_evals;
  const SimplexResult best =
      nelder_mead(objective, std::vector<double>(static_cast<size_t>(n_params), 0.0), sopts);

  RestartOutcome out;
  out.entropy = best.f;
  decode_into(best.x);
  out.locals = locals;
  out.converged = best.converged;
  return out;
}

OptimizerDiagnostics merge_diagnostics(const std::vector<RestartOutcome>& runs,
                                       size_t best_index, double entropy_tol) {
  OptimizerDiagnostics diag;
  diag.restarts_used = static_cast<int>(runs.size());
  double second = std::numeric_limits<double>::infinity();
  int agreeing = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].entropy - runs[best_index].entropy <= 10.0 * entropy_tol)
      ++agreeing;
    if (i != best_index) second = std::min(second, runs[i].entropy);
  }
  diag.best_second_gap =
      runs.size() > 1 ? second - runs[best_index].entropy : 0.0;
  diag.converged = (runs.size() == 1 && runs[best_index].converged) || agreeing >= 2;
  return diag;
}

}  // namespace

DephasingResult closest_classical_state(const MultipartiteState& x,
                                        const SearchOptions& opts) {
  const int restarts = std::max(1, opts.restarts);
  std::vector<ProductBasis> frames = detail::canonical_frames(x);
  if (static_cast<int>(frames.size()) > restarts)
    frames.resize(static_cast<size_t>(restarts));
  while (static_cast<int>(frames.size()) < restarts)
    frames.push_back(random_product_basis(
        x.dims, detail::mix_seed(opts.seed, 1000 + frames.size())));

  std::vector<RestartOutcome> runs(static_cast<size_t>(restarts));
  detail::parallel_for_indexed(restarts, [&](int i) {
    runs[static_cast<size_t>(i)] =
        refine_in_frame(x, frames[static_cast<size_t>(i)], opts);
  });

  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i)
    if (runs[i].entropy < runs[best].entropy) best = i;

  DephasingResult result;
  result.basis.locals = runs[best].locals;
  result.chi = dephase(x, result.basis);
  result.entropy_chi = von_neumann_entropy(result.chi.rho);
  result.diagnostics = merge_diagnostics(runs, best, opts.entropy_tol);
  return result;
}

MeasureValue discord(const MultipartiteState& x, const SearchOptions& opts) {
  const DephasingResult chi = closest_classical_state(x, opts);
  MeasureValue m;
  m.value = chi.entropy_chi - von_neumann_entropy(x.rho);
  if (m.value < 0.0 && m.value >= -tol::psd) m.value = 0.0;
  m.method = "numeric";
  m.witness = chi.chi;
  m.converged = chi.diagnostics.converged;
  return m;
}

MeasureValue dissonance(const MultipartiteState& sigma,
                        const SearchOptions& opts) {
  MeasureValue m = discord(sigma, opts);
  return m;
}

MeasureValue classical_correlations(const MultipartiteState& chi) {
  const MultipartiteState pi = closest_product_state(chi);
  MeasureValue m;
  m.value = von_neumann_entropy(pi.rho) - von_neumann_entropy(chi.rho);
  if (m.value < 0.0 && m.value >= -tol::psd) m.value = 0.0;
  m.method = "analytic";
  m.witness = pi;
  return m;
}

MeasureValue l_quantity(const MultipartiteState& x, const DephasingResult& chi) {
  const MultipartiteState pi_x = closest_product_state(x);
  const MultipartiteState pi_chi = closest_product_state(chi.chi);
  const MultipartiteState pinched = dephase(pi_x, chi.basis);
  if (max_abs_diff(pi_chi.rho, pinched.rho) > 1e-8)
    throw ConsistencyError(
        "l_quantity: marginals of chi do not match the dephased marginals of x");

  MeasureValue m;
  m.value = von_neumann_entropy(pi_chi.rho) - von_neumann_entropy(pi_x.rho);
  if (m.value < 0.0 && m.value >= -tol::psd) m.value = 0.0;
  m.method = "analytic";
  m.witness = pi_chi;
  return m;
}

namespace {

// Spectrum of the one-party-dephased state: block diagonal over the
// measured outcomes, so the entropy is the union of the block spectra.
double one_sided_dephasing_entropy(const MultipartiteState& x, int party,
                                   const Matrix& local_basis) {
  const int d = x.dims[static_cast<size_t>(party)];
  long before = 1, after = 1;
  for (int p = 0; p < party; ++p) before *= x.dims[static_cast<size_t>(p)];
  for (int p = party + 1; p < x.parties(); ++p)
    after *= x.dims[static_cast<size_t>(p)];
  const long rest = before * after;

  std::vector<Matrix> ops;
  for (int p = 0; p < x.parties(); ++p)
    ops.push_back(p == party ? local_basis
                             : Matrix::Identity(x.dims[static_cast<size_t>(p)],
                                                x.dims[static_cast<size_t>(p)]));
  const Matrix w = tensor_product_all(ops);
  const Matrix y = w.adjoint() * x.rho * w;

  double entropy = 0.0;
  Matrix block(rest, rest);
  for (int k = 0; k < d; ++k) {
    for (long rb = 0; rb < before; ++rb)
      for (long ra = 0; ra < after; ++ra)
        for (long cb = 0; cb < before; ++cb)
          for (long ca = 0; ca < after; ++ca)
            block(rb * after + ra, cb * after + ca) =
                y((rb * d + k) * after + ra, (cb * d + k) * after + ca);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (block + block.adjoint()),
                                             Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = es.eigenvalues()[i];
      if (v > 0.0) entropy -= v * std::log(v);
    }
  }
  return entropy / std::log(2.0);
}

}  // namespace

OriginalDiscordResult original_discord(const MultipartiteState& x,
                                       int measured_party,
                                       const SearchOptions& opts) {
  if (x.parties() != 2)
    throw WrongArityError("original_discord: input must be bipartite");
  if (measured_party != 0 && measured_party != 1)
    throw WrongArityError("original_discord: measured party must be 0 or 1");

  const int d = x.dims[static_cast<size_t>(measured_party)];
  const double s_rho = von_neumann_entropy(x.rho);
  const MultipartiteState pi_x = closest_product_state(x);
  const double s_pi = von_neumann_entropy(pi_x.rho);

  // delta(b) = S(chi_b) - S(rho) - [S(pi_chi_b) - S(pi_rho)]. The pinched
  // marginal entropies have closed forms: the measured marginal dephases
  // in b, the other marginal is untouched.
  const Matrix measured_marginal = x.marginal(measured_party);
  const Matrix other_marginal = x.marginal(1 - measured_party);
  const double s_other = von_neumann_entropy(other_marginal);

  const auto delta_of = [&](const Matrix& u) {
    const double s_chi = one_sided_dephasing_entropy(x, measured_party, u);
    const RealVector p = dephasing_probabilities(measured_marginal, {u});
    const double s_pinched_marginal = shannon_entropy(p);
    const double s_pi_chi = s_pinched_marginal + s_other;
    return s_chi - s_rho - (s_pi_chi - s_pi);
  };

  std::vector<Matrix> seeds{
      Matrix::Identity(d, d), detail::fourier_matrix(d),
      detail::phased_fourier_matrix(d),
      eig_hermitian(measured_marginal).eigenvectors};
  const int restarts = std::max(static_cast<int>(seeds.size()),
                                std::min(opts.restarts, 16));
  while (static_cast<int>(seeds.size()) < restarts) {
    detail::Rng rng(detail::mix_seed(opts.seed, 2000 + seeds.size()));
    seeds.push_back(detail::haar_unitary(d, rng));
  }

  const int blk = BasisParameters::party_block_size(d);
  std::vector<RestartOutcome> runs(seeds.size());
  detail::parallel_for_indexed(static_cast<int>(seeds.size()), [&](int i) {
    const Matrix frame = seeds[static_cast<size_t>(i)];
    const auto objective = [&](const std::vector<double>& p) {
      return delta_of(frame * decode_local_unitary(d, p.data()));
    };
    SimplexOptions sopts;
    sopts.f_tol = opts.entropy_tol;
    sopts.x_tol = opts.param_tol;
    sopts.max_evals = opts.max_evals;
    const SimplexResult r =
        nelder_mead(objective, std::vector<double>(static_cast<size_t>(blk), 0.0), sopts);
    RestartOutcome& out = runs[static_cast<size_t>(i)];
    out.entropy = r.f;
    out.locals = {frame * decode_local_unitary(d, r.x.data())};
    out.converged = r.converged;
  });

  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i)
    if (runs[i].entropy < runs[best].entropy) best = i;

  const Matrix u_best = runs[best].locals[0];
  const MultipartiteState chi = dephase_one_party(x, measured_party, u_best);
  const double s_chi = von_neumann_entropy(chi.rho);
  const MultipartiteState pi_chi = closest_product_state(chi);
  const double s_pi_chi = von_neumann_entropy(pi_chi.rho);

  OriginalDiscordResult result;
  result.delta.value = runs[best].entropy;
  if (result.delta.value < 0.0 && result.delta.value >= -tol::psd)
    result.delta.value = 0.0;
  result.delta.method = "numeric";
  result.delta.witness = chi;

  const double t_rho = s_pi - s_rho;
  const double c_b = s_pi_chi - s_chi;
  const double delta_direct = (s_chi - s_rho) - (s_pi_chi - s_pi);
  result.identity_gap = std::abs(delta_direct - (t_rho - c_b));
  result.diagnostics = merge_diagnostics(runs, best, opts.entropy_tol);
  result.delta.converged = result.diagnostics.converged;
  return result;
}

bool marginal_degeneracy(const MultipartiteState& x) {
  for (int p = 0; p < x.parties(); ++p) {
    const HermitianEigensystem es = eig_hermitian(x.marginal(p));
    for (Eigen::Index i = 0; i + 1 < es.eigenvalues.size(); ++i)
      if (es.eigenvalues[i] - es.eigenvalues[i + 1] < 1e-10) return true;
  }
  return false;
}

MidResult mid(const MultipartiteState& x) {
  if (x.parties() != 2) throw WrongArityError("mid: input must be bipartite");

  ProductBasis basis;
  for (int p = 0; p < 2; ++p)
    basis.locals.push_back(eig_hermitian(x.marginal(p)).eigenvectors);

  const MultipartiteState eta = dephase(x, basis);
  MidResult result;
  result.measure.value =
      von_neumann_entropy(eta.rho) - von_neumann_entropy(x.rho);
  if (result.measure.value < 0.0 && result.measure.value >= -tol::psd)
    result.measure.value = 0.0;
  result.measure.method = "analytic";
  result.measure.witness = eta;
  result.degenerate_marginals = marginal_degeneracy(x);
  return result;
}

}  // namespace corrgeo
