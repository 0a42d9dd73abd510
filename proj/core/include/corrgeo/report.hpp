#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "corrgeo/classical.hpp"
#include "corrgeo/entanglement.hpp"

namespace corrgeo {

/// Measure selection tokens: "all", "E", "D", "Q", "C", "T", "L", "delta",
/// "mid". "C"/"T"/"L" cover both the rho and sigma sides when the sigma
/// chain is computed.
struct AnalysisOptions {
  SearchOptions basis_search;
  ReeOptions ree;
  std::vector<std::string> measures;  // empty means all
};

struct ReportFlags {
  bool non_convergence = false;
  bool sigma_non_unique = false;
  bool marginal_degeneracy = false;
};

struct ReportDiagnostics {
  OptimizerDiagnostics discord_search;
  OptimizerDiagnostics dissonance_search;
  ReeDiagnostics ree;
};

/// All quantities of the correlation diagram for one input state, plus the
/// closed-path residuals and the subadditivity gap. Fields are present when
/// the requested measure set covers them.
struct CorrelationReport {
  std::vector<int> dims;

  std::optional<MeasureValue> t_rho, d, c_rho, l_rho;
  std::optional<MeasureValue> e, t_sigma, q, c_sigma, l_sigma;
  std::optional<MeasureValue> delta, mid_measure;  // bipartite extras
  std::optional<double> delta_identity_gap;

  std::optional<double> residual_rho;    // |T_rho - (D + C_rho - L_rho)|
  std::optional<double> residual_sigma;  // |T_sigma - (Q + C_sigma - L_sigma)|
  std::optional<double> subadditivity_gap;  // T_rho - (E + Q + C_sigma)

  /// Q per candidate sigma when the separable optimum is not unique.
  std::vector<double> q_candidates;

  ReportFlags flags;
  ReportDiagnostics diagnostics;
};

/// Runs the full pipeline: the classical chain of x, the closest separable
/// state, the classical chain of sigma, residuals and the audit gap; for
/// bipartite inputs also the one-sided discord and MID.
CorrelationReport full_analysis(const MultipartiteState& x,
                                const AnalysisOptions& opts = {});

struct AuditRecord {
  double gap = 0.0;
  bool violation = false;  // gap < -1e-3, a finding against the conjecture
};

/// Records the subadditivity gap of a report. A violation is surfaced,
/// never suppressed.
AuditRecord subadditivity_audit(const CorrelationReport& report);

struct SweepAxis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

struct SweepSpec {
  std::string family;
  std::vector<SweepAxis> grid;
  std::vector<std::string> measures;
  std::uint64_t seed = 0;
};

/// Parses a sweep spec JSON document:
///   {"family": "...", "grid": [{"min":..,"max":..,"steps":..}, ...],
///    "measures": [...], "seed": n}
SweepSpec parse_sweep_spec(const std::string& text);

/// Expands one grid point into the family parameter vector (see README for
/// the per-family axis conventions). Throws on invalid families or
/// parameter values.
std::vector<double> sweep_point_params(const SweepSpec& spec,
                                       const std::vector<double>& axis_values);

/// Builds the state for one grid point.
MultipartiteState sweep_point_state(const SweepSpec& spec,
                                    const std::vector<double>& axis_values);

/// Streams one CSV row per grid point in row-major order (last axis
/// fastest). Returns the number of rows written. The header row is fixed;
/// see sweep_csv_header().
long sweep(const SweepSpec& spec, std::ostream& out,
           const AnalysisOptions& opts = {});

std::string sweep_csv_header();
std::string analyze_csv_header();

std::string report_to_json(const CorrelationReport& report);
std::string report_to_csv_row(const CorrelationReport& report);
std::string report_to_table(const CorrelationReport& report);

/// Rounds to 12 significant digits; report serialization uses this so
/// output is reproducible across runs and thread counts.
double round_12sig(double v);

}  // namespace corrgeo
