#include "corrgeo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace corrgeo {

namespace {

using nlohmann::ordered_json;

bool wants(const std::vector<std::string>& measures, const std::string& token) {
  if (measures.empty()) return true;
  for (const std::string& m : measures)
    if (m == token || m == "all") return true;
  return false;
}

std::string format_12sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

double round_12sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_12sig(v).c_str(), nullptr);
}

CorrelationReport full_analysis(const MultipartiteState& x,
                                const AnalysisOptions& opts) {
  const auto& measures = opts.measures;
  CorrelationReport report;
  report.dims = x.dims;

  const bool need_rho_chain = wants(measures, "D") || wants(measures, "C") ||
                              wants(measures, "L") || wants(measures, "T");
  const bool need_sigma_chain = wants(measures, "Q") || wants(measures, "C") ||
                                wants(measures, "L") || wants(measures, "T");
  const bool need_e = wants(measures, "E") || need_sigma_chain;

  const double s_rho = von_neumann_entropy(x.rho);

  if (wants(measures, "T")) report.t_rho = total_mutual_information(x);

  if (need_rho_chain && (wants(measures, "D") || wants(measures, "C") ||
                         wants(measures, "L"))) {
    const DephasingResult chi = closest_classical_state(x, opts.basis_search);
    report.diagnostics.discord_search = chi.diagnostics;
    if (wants(measures, "D")) {
      MeasureValue d;
      d.value = std::max(chi.entropy_chi - s_rho, 0.0);
      d.method = "numeric";
      d.witness = chi.chi;
      d.converged = chi.diagnostics.converged;
      report.d = d;
    }
    if (wants(measures, "C")) report.c_rho = classical_correlations(chi.chi);
    if (wants(measures, "L")) report.l_rho = l_quantity(x, chi);
    if (!chi.diagnostics.converged) report.flags.non_convergence = true;
  }

  std::optional<ReeResult> sigma_result;
  if (need_e) {
    sigma_result = ree(x, opts.ree);
    report.diagnostics.ree = sigma_result->diagnostics;
    if (wants(measures, "E")) {
      MeasureValue e;
      e.value = sigma_result->value;
      e.method = sigma_result->method == "numeric" ? "numeric" : "analytic";
      e.witness = sigma_result->sigma;
      e.converged = sigma_result->diagnostics.converged;
      report.e = e;
    }
    if (!sigma_result->diagnostics.converged) report.flags.non_convergence = true;
    if (sigma_result->sigma_candidates.size() > 1)
      report.flags.sigma_non_unique = true;
  }

  if (need_sigma_chain && sigma_result) {
    const MultipartiteState& sigma = sigma_result->sigma;
    const double s_sigma = von_neumann_entropy(sigma.rho);

    if (wants(measures, "T")) {
      MeasureValue t = total_mutual_information(sigma);
      report.t_sigma = t;
    }
    if (wants(measures, "Q") || wants(measures, "C") || wants(measures, "L")) {
      const DephasingResult chi_sigma =
          closest_classical_state(sigma, opts.basis_search);
      report.diagnostics.dissonance_search = chi_sigma.diagnostics;
      if (wants(measures, "Q")) {
        MeasureValue q;
        q.value = std::max(chi_sigma.entropy_chi - s_sigma, 0.0);
        q.method = "numeric";
        q.witness = chi_sigma.chi;
        q.converged = chi_sigma.diagnostics.converged;
        report.q = q;
      }
      if (wants(measures, "C"))
        report.c_sigma = classical_correlations(chi_sigma.chi);
      if (wants(measures, "L")) report.l_sigma = l_quantity(sigma, chi_sigma);
      if (!chi_sigma.diagnostics.converged) report.flags.non_convergence = true;

      // Q per distinct candidate sigma when the optimum is not unique.
      if (report.flags.sigma_non_unique && wants(measures, "Q")) {
        for (const MultipartiteState& cand : sigma_result->sigma_candidates) {
          const DephasingResult cc =
              closest_classical_state(cand, opts.basis_search);
          report.q_candidates.push_back(
              std::max(cc.entropy_chi - von_neumann_entropy(cand.rho), 0.0));
        }
      }
    }
  }

  if (report.t_rho && report.d && report.c_rho && report.l_rho)
    report.residual_rho = std::abs(report.t_rho->value -
                                   (report.d->value + report.c_rho->value -
                                    report.l_rho->value));
  if (report.t_sigma && report.q && report.c_sigma && report.l_sigma)
    report.residual_sigma = std::abs(report.t_sigma->value -
                                     (report.q->value + report.c_sigma->value -
                                      report.l_sigma->value));
  if (report.t_rho && report.e && report.q && report.c_sigma)
    report.subadditivity_gap =
        report.t_rho->value -
        (report.e->value + report.q->value + report.c_sigma->value);

  if (x.parties() == 2) {
    report.flags.marginal_degeneracy = marginal_degeneracy(x);
    if (wants(measures, "delta")) {
      const OriginalDiscordResult od = original_discord(x, 0, opts.basis_search);
      report.delta = od.delta;
      report.delta_identity_gap = od.identity_gap;
      if (!od.diagnostics.converged) report.flags.non_convergence = true;
    }
    if (wants(measures, "mid")) {
      const MidResult m = mid(x);
      report.mid_measure = m.measure;
      if (m.degenerate_marginals) report.flags.marginal_degeneracy = true;
    }
  }

  return report;
}

AuditRecord subadditivity_audit(const CorrelationReport& report) {
  AuditRecord audit;
  if (!report.subadditivity_gap)
    throw Error("subadditivity_audit: report lacks the gap (need T, E, Q, C)");
  audit.gap = *report.subadditivity_gap;
  audit.violation = audit.gap < -1e-3;
  return audit;
}

// ---- sweeps --------------------------------------------------------------

SweepSpec parse_sweep_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  SweepSpec spec;
  try {
    spec.family = doc.at("family").get<std::string>();
    if (spec.family != "bell_diagonal" && spec.family != "w" &&
        spec.family != "cluster4" && spec.family != "mid_counterexample")
      throw Error("unknown sweep family: " + spec.family);
    if (doc.contains("grid")) {
      for (const auto& axis : doc["grid"]) {
        SweepAxis a;
        a.min = axis.at("min").get<double>();
        a.max = axis.at("max").get<double>();
        a.steps = axis.at("steps").get<int>();
        if (a.steps < 1) throw Error("sweep spec: axis steps must be >= 1");
        spec.grid.push_back(a);
      }
    }
    if (doc.contains("measures"))
      spec.measures = doc["measures"].get<std::vector<std::string>>();
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("sweep spec schema error: ") + e.what());
  }
  long points = 1;
  for (const SweepAxis& a : spec.grid) points *= a.steps;
  if (points > 1000000) throw Error("sweep spec: more than 1e6 grid points");
  return spec;
}

std::vector<double> sweep_point_params(const SweepSpec& spec,
                                       const std::vector<double>& v) {
  if (spec.family == "bell_diagonal") {
    if (v.size() == 1)  // Werner-like line, remaining weights equal
      return {v[0], (1.0 - v[0]) / 3.0, (1.0 - v[0]) / 3.0,
              (1.0 - v[0]) / 3.0};
    if (v.size() == 4) return v;
    throw Error("bell_diagonal sweep takes 1 or 4 axes");
  }
  if (spec.family == "mid_counterexample") {
    if (v.size() == 1) return {v[0], 0.3, 0.25, 0.25, 0.2};
    if (v.size() == 2) {
      const double rest = (1.0 - v[1]) / 3.0;
      return {v[0], v[1], rest, rest, rest};
    }
    if (v.size() == 5) return v;
    throw Error("mid_counterexample sweep takes 1, 2 or 5 axes");
  }
  if (spec.family == "w" || spec.family == "cluster4") {
    if (!v.empty()) throw Error(spec.family + " sweep takes no axes");
    return {};
  }
  throw Error("unknown sweep family: " + spec.family);
}

MultipartiteState sweep_point_state(const SweepSpec& spec,
                                    const std::vector<double>& v) {
  const std::vector<double> p = sweep_point_params(spec, v);
  if (spec.family == "bell_diagonal")
    return bell_diagonal({p[0], p[1], p[2], p[3]});
  if (spec.family == "mid_counterexample")
    return mid_counterexample(p[0], {p[1], p[2], p[3], p[4]});
  if (spec.family == "w") return w_state();
  return cluster_state_4();
}

namespace {

constexpr int kParamColumns = 5;

std::string measure_columns() {
  return "T_rho,D,C_rho,L_rho,E,T_sigma,Q,C_sigma,L_sigma,delta,mid,"
         "residual_rho,residual_sigma,subadd_gap,"
         "flag_nonconvergence,flag_sigma_nonunique,flag_marginal_degeneracy";
}

void append_optional(std::ostream& out, const std::optional<MeasureValue>& m) {
  out << ',';
  if (m) out << format_12sig(round_12sig(m->value));
}

void append_optional(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << format_12sig(round_12sig(*v));
}

void append_report_columns(std::ostream& out, const CorrelationReport& r) {
  std::ostringstream row;
  append_optional(row, r.t_rho);
  append_optional(row, r.d);
  append_optional(row, r.c_rho);
  append_optional(row, r.l_rho);
  append_optional(row, r.e);
  append_optional(row, r.t_sigma);
  append_optional(row, r.q);
  append_optional(row, r.c_sigma);
  append_optional(row, r.l_sigma);
  append_optional(row, r.delta);
  append_optional(row, r.mid_measure);
  append_optional(row, r.residual_rho);
  append_optional(row, r.residual_sigma);
  append_optional(row, r.subadditivity_gap);
  row << ',' << (r.flags.non_convergence ? 1 : 0) << ','
      << (r.flags.sigma_non_unique ? 1 : 0) << ','
      << (r.flags.marginal_degeneracy ? 1 : 0);
  const std::string s = row.str();
  out << s.substr(1);  // first append added a leading comma
}

}  // namespace

std::string sweep_csv_header() {
  std::string header = "index,family";
  for (int i = 0; i < kParamColumns; ++i)
    header += ",param_" + std::to_string(i);
  return header + "," + measure_columns();
}

std::string analyze_csv_header() { return measure_columns(); }

long sweep(const SweepSpec& spec, std::ostream& out,
           const AnalysisOptions& opts) {
  out << sweep_csv_header() << '\n';

  const int axes = static_cast<int>(spec.grid.size());
  long points = 1;
  for (const SweepAxis& a : spec.grid) points *= a.steps;

  AnalysisOptions row_opts = opts;
  if (!spec.measures.empty()) row_opts.measures = spec.measures;

  for (long index = 0; index < points; ++index) {
    std::vector<double> values(static_cast<size_t>(axes));
    long rem = index;
    for (int a = axes - 1; a >= 0; --a) {
      const SweepAxis& axis = spec.grid[static_cast<size_t>(a)];
      const long i = rem % axis.steps;
      rem /= axis.steps;
      values[static_cast<size_t>(a)] =
          axis.steps == 1
              ? axis.min
              : axis.min + (axis.max - axis.min) * static_cast<double>(i) /
                               static_cast<double>(axis.steps - 1);
    }

    const std::vector<double> params = sweep_point_params(spec, values);
    const MultipartiteState state = sweep_point_state(spec, values);

    row_opts.basis_search.seed = detail::mix_seed(spec.seed, static_cast<std::uint64_t>(index));
    row_opts.ree.seed = row_opts.basis_search.seed;
    const CorrelationReport report = full_analysis(state, row_opts);

    out << index << ',' << spec.family;
    for (int c = 0; c < kParamColumns; ++c) {
      out << ',';
      if (c < static_cast<int>(params.size()))
        out << format_12sig(round_12sig(params[static_cast<size_t>(c)]));
    }
    out << ',';
    append_report_columns(out, report);
    out << '\n';
  }
  return points;
}

// ---- serialization -------------------------------------------------------

namespace {

ordered_json state_json(const MultipartiteState& s) {
  ordered_json j;
  j["dims"] = s.dims;
  const Eigen::Index n = s.rho.rows();
  std::vector<std::vector<double>> re(static_cast<size_t>(n)),
      im(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    re[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    im[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (Eigen::Index jj = 0; jj < n; ++jj) {
      re[static_cast<size_t>(i)][static_cast<size_t>(jj)] =
          round_12sig(s.rho(i, jj).real());
      im[static_cast<size_t>(i)][static_cast<size_t>(jj)] =
          round_12sig(s.rho(i, jj).imag());
    }
  }
  j["matrix"]["re"] = re;
  j["matrix"]["im"] = im;
  return j;
}

ordered_json measure_json(const MeasureValue& m, bool with_witness) {
  ordered_json j;
  j["value"] = round_12sig(m.value);
  j["method"] = m.method;
  j["converged"] = m.converged;
  if (with_witness && m.witness) j["witness"] = state_json(*m.witness);
  return j;
}

}  // namespace

std::string report_to_json(const CorrelationReport& r) {
  ordered_json j;
  j["dims"] = r.dims;

  ordered_json measures;
  const auto put = [&](const char* name, const std::optional<MeasureValue>& m,
                       bool witness) {
    if (m) measures[name] = measure_json(*m, witness);
  };
  put("T_rho", r.t_rho, false);
  put("D", r.d, true);
  put("C_rho", r.c_rho, false);
  put("L_rho", r.l_rho, false);
  put("E", r.e, true);
  put("T_sigma", r.t_sigma, false);
  put("Q", r.q, true);
  put("C_sigma", r.c_sigma, false);
  put("L_sigma", r.l_sigma, false);
  put("delta", r.delta, false);
  put("mid", r.mid_measure, false);
  j["measures"] = measures;

  ordered_json residuals;
  if (r.residual_rho) residuals["rho_path"] = round_12sig(*r.residual_rho);
  if (r.residual_sigma) residuals["sigma_path"] = round_12sig(*r.residual_sigma);
  j["identity_residuals"] = residuals;
  if (r.subadditivity_gap)
    j["subadditivity_gap"] = round_12sig(*r.subadditivity_gap);
  if (r.delta_identity_gap)
    j["delta_identity_gap"] = round_12sig(*r.delta_identity_gap);

  if (!r.q_candidates.empty()) {
    ordered_json q;
    for (double v : r.q_candidates) q.push_back(round_12sig(v));
    j["q_candidates"] = q;
  }

  j["flags"]["non_convergence"] = r.flags.non_convergence;
  j["flags"]["sigma_non_unique"] = r.flags.sigma_non_unique;
  j["flags"]["marginal_degeneracy"] = r.flags.marginal_degeneracy;

  ordered_json diag;
  diag["discord_search"] = {
      {"restarts", r.diagnostics.discord_search.restarts_used},
      {"best_second_gap", round_12sig(r.diagnostics.discord_search.best_second_gap)},
      {"converged", r.diagnostics.discord_search.converged}};
  diag["dissonance_search"] = {
      {"restarts", r.diagnostics.dissonance_search.restarts_used},
      {"best_second_gap", round_12sig(r.diagnostics.dissonance_search.best_second_gap)},
      {"converged", r.diagnostics.dissonance_search.converged}};
  diag["ree"] = {{"terms", r.diagnostics.ree.terms},
                 {"sweeps", r.diagnostics.ree.sweeps},
                 {"restarts", r.diagnostics.ree.restarts},
                 {"converged", r.diagnostics.ree.converged},
                 {"sigma_entropy_dominates",
                  r.diagnostics.ree.sigma_entropy_dominates},
                 {"numerically_separable",
                  r.diagnostics.ree.numerically_separable}};
  j["diagnostics"] = diag;

  return j.dump(2);
}

std::string report_to_csv_row(const CorrelationReport& r) {
  std::ostringstream out;
  append_report_columns(out, r);
  return out.str();
}

std::string report_to_table(const CorrelationReport& r) {
  std::ostringstream out;
  const auto row = [&](const char* name, const std::optional<MeasureValue>& m) {
    if (!m) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-8s %14.9f  %s%s\n", name, m->value,
                  m->method.c_str(), m->converged ? "" : "  [not converged]");
    out << buf;
  };
  out << "correlations (bits)\n";
  row("T_rho", r.t_rho);
  row("D", r.d);
  row("C_rho", r.c_rho);
  row("L_rho", r.l_rho);
  row("E", r.e);
  row("T_sigma", r.t_sigma);
  row("Q", r.q);
  row("C_sigma", r.c_sigma);
  row("L_sigma", r.l_sigma);
  row("delta", r.delta);
  row("mid", r.mid_measure);
  const auto scalar = [&](const char* name, const std::optional<double>& v) {
    if (!v) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-14s %.3e\n", name, *v);
    out << buf;
  };
  out << "checks\n";
  scalar("residual_rho", r.residual_rho);
  scalar("residual_sigma", r.residual_sigma);
  scalar("subadd_gap", r.subadditivity_gap);
  scalar("delta_gap", r.delta_identity_gap);
  out << "flags: non_convergence=" << r.flags.non_convergence
      << " sigma_non_unique=" << r.flags.sigma_non_unique
      << " marginal_degeneracy=" << r.flags.marginal_degeneracy << "\n";
  return out.str();
}

}  // namespace corrgeo
