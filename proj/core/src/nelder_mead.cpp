#include "corrgeo/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corrgeo {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start,
                          const SimplexOptions& options) {
  const size_t n = start.size();
  SimplexResult result;
  if (n == 0) {
    result.x = start;
    result.f = f(start);
    result.evals = 1;
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> verts(n + 1, start);
  for (size_t i = 0; i < n; ++i) verts[i + 1][i] += options.initial_step;

  std::vector<double> fv(n + 1);
  int evals = 0;
  for (size_t i = 0; i <= n; ++i) {
    fv[i] = f(verts[i]);
    ++evals;
  }

  std::vector<size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  while (evals < options.max_evals) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    const size_t best = order[0], worst = order[n], second_worst = order[n - 1];

    double spread = fv[worst] - fv[best];
    double x_spread = 0.0;
    for (size_t i = 0; i < n; ++i)
      x_spread = std::max(x_spread,
                          std::abs(verts[worst][i] - verts[best][i]));
    if (spread <= options.f_tol && x_spread <= options.x_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (size_t v = 0; v <= n; ++v) {
      if (v == worst) continue;
      for (size_t i = 0; i < n; ++i) centroid[i] += verts[v][i];
    }
    for (size_t i = 0; i < n; ++i) centroid[i] /= static_cast<double>(n);

    for (size_t i = 0; i < n; ++i)
      trial[i] = centroid[i] + (centroid[i] - verts[worst][i]);
    const double f_reflect = f(trial);
    ++evals;

    if (f_reflect < fv[best]) {
      for (size_t i = 0; i < n; ++i)
        trial2[i] = centroid[i] + 2.0 * (centroid[i] - verts[worst][i]);
      const double f_expand = f(trial2);
      ++evals;
      if (f_expand < f_reflect) {
        verts[worst] = trial2;
        fv[worst] = f_expand;
      } else {
        verts[worst] = trial;
        fv[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < fv[second_worst]) {
      verts[worst] = trial;
      fv[worst] = f_reflect;
      continue;
    }

    const bool outside = f_reflect < fv[worst];
    for (size_t i = 0; i < n; ++i) {
      const double toward = outside ? trial[i] : verts[worst][i];
      trial2[i] = centroid[i] + 0.5 * (toward - centroid[i]);
    }
    const double f_contract = f(trial2);
    ++evals;
    if (f_contract < std::min(f_reflect, fv[worst])) {
      verts[worst] = trial2;
      fv[worst] = f_contract;
      continue;
    }

    // Shrink toward the best vertex.
    for (size_t v = 0; v <= n; ++v) {
      if (v == best) continue;
      for (size_t i = 0; i < n; ++i)
        verts[v][i] = verts[best][i] + 0.5 * (verts[v][i] - verts[best][i]);
      fv[v] = f(verts[v]);
      ++evals;
    }
  }

  size_t best = 0;
  for (size_t v = 1; v <= n; ++v)
    if (fv[v] < fv[best]) best = v;
  result.x = verts[best];
  result.f = fv[best];
  result.evals = evals;
  return result;
}

}  // namespace corrgeo
