#pragma once

#include <functional>
#include <vector>

#include "corrgeo/types.hpp"

namespace corrgeo {

struct SimplexOptions {
  double initial_step = 0.35;
  double f_tol = 1e-10;
  double x_tol = 1e-7;
  int max_evals = 4000;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Classic Nelder-Mead downhill simplex (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Stops when the simplex function spread
/// falls below f_tol and the vertex spread below x_tol, or at max_evals.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start,
                          const SimplexOptions& options = {});

}  // namespace corrgeo
