#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrgeo/report.hpp"
#include "corrgeo/state_io.hpp"

namespace {

using namespace corrgeo;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNonConverged = 3;

std::vector<std::string> parse_measures(const std::string& arg) {
  std::vector<std::string> out;
  std::stringstream ss(arg);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    static const std::vector<std::string> known{
        "all", "E", "D", "Q", "C", "T", "L", "delta", "mid"};
    if (std::find(known.begin(), known.end(), token) == known.end())
      throw Error("unknown measure token: " + token);
    out.push_back(token);
  }
  return out;
}

int run_analyze(const std::string& statefile, const std::string& measures,
                int restarts, double tolerance, int ree_terms, int ree_restarts,
                std::uint64_t seed, const std::string& format) {
  MultipartiteState state = load_state_file(statefile);

  AnalysisOptions opts;
  opts.measures = parse_measures(measures);
  opts.basis_search.restarts = restarts;
  opts.basis_search.entropy_tol = tolerance;
  opts.basis_search.seed = seed;
  opts.ree.terms = ree_terms;
  opts.ree.restarts = ree_restarts;
  opts.ree.sweep_tol = tolerance;
  opts.ree.seed = seed;

  const CorrelationReport report = full_analysis(state, opts);

  if (format == "json") {
    std::cout << report_to_json(report) << "\n";
  } else if (format == "csv") {
    std::cout << analyze_csv_header() << "\n"
              << report_to_csv_row(report) << "\n";
  } else {
    std::cout << report_to_table(report);
  }

  if (report.subadditivity_gap) {
    const AuditRecord audit = subadditivity_audit(report);
    if (audit.violation)
      std::cerr << "FINDING: subadditivity violated, T_rho - (E + Q + C_sigma) = "
                << audit.gap << " < -1e-3 (witnesses in the report)\n";
  }
  return report.flags.non_convergence ? kExitNonConverged : kExitOk;
}

int run_sweep(const std::string& specfile, const std::string& outfile,
              int restarts, double tolerance, int ree_terms, int ree_restarts) {
  std::ifstream in(specfile);
  if (!in) throw Error("cannot open sweep spec: " + specfile);
  std::ostringstream buf;
  buf << in.rdbuf();
  const SweepSpec spec = parse_sweep_spec(buf.str());

  AnalysisOptions opts;
  opts.basis_search.restarts = restarts;
  opts.basis_search.entropy_tol = tolerance;
  opts.ree.terms = ree_terms;
  opts.ree.restarts = ree_restarts;
  opts.ree.sweep_tol = tolerance;

  std::ofstream out(outfile);
  if (!out) throw Error("cannot open output file: " + outfile);
  const long rows = sweep(spec, out, opts);
  std::cerr << "wrote " << rows << " rows to " << outfile << "\n";
  return kExitOk;
}

struct SelfTestCase {
  std::string name;
  bool pass = false;
  double got = 0.0;
  double want = 0.0;
  double tolerance = 0.0;
};

int run_selftest() {
  std::vector<SelfTestCase> cases;
  const auto check = [&](const std::string& name, double got, double want,
                         double tolerance) {
    cases.push_back({name, std::abs(got - want) <= tolerance, got, want,
                     tolerance});
  };

  {
    const MultipartiteState rho = bell_diagonal({0.7, 0.1, 0.1, 0.1});
    const ReeResult e = ree(rho);
    check("bell_diagonal(0.7) E = 1 - h(0.7)", e.value, 0.118709100769307,
          1e-9);
    SearchOptions sopts;
    const DephasingResult chi = closest_classical_state(rho, sopts);
    check("bell_diagonal(0.7) S(chi) = h(0.8) + 1", chi.entropy_chi,
          1.721928094887362, 1e-6);
  }
  {
    AnalysisOptions opts;
    const CorrelationReport w = full_analysis(w_state(), opts);
    check("W-state E", w.e->value, 1.17, 0.02);
    check("W-state D", w.d->value, 1.58, 0.01);
    check("W-state Q", w.q->value, 0.94, 0.02);
    check("W-state C_rho", w.c_rho->value, 1.17, 0.01);
    check("W-state C_sigma", w.c_sigma->value, 0.36, 0.02);
    check("W-state L_rho", w.l_rho->value, 0.0, 0.01);
    check("W-state L_sigma", w.l_sigma->value, 0.24, 0.02);
    check("W-state residual rho path", *w.residual_rho, 0.0, 1e-7);
    check("W-state residual sigma path", *w.residual_sigma, 0.0, 1e-7);
  }
  {
    AnalysisOptions opts;
    const CorrelationReport c4 = full_analysis(cluster_state_4(), opts);
    check("cluster E", c4.e->value, 2.0, 5e-3);
    check("cluster Q", c4.q->value, 0.0, 5e-3);
    check("cluster C_rho", c4.c_rho->value, 2.0, 1e-3);
    check("cluster T_rho = E + C_rho", c4.t_rho->value,
          c4.e->value + c4.c_rho->value, 1e-2);
  }

  bool all = true;
  std::printf("%-36s %14s %14s %10s  %s\n", "check", "value", "expected",
              "tol", "status");
  for (const SelfTestCase& c : cases) {
    all = all && c.pass;
    std::printf("%-36s %14.9f %14.9f %10.2e  %s\n", c.name.c_str(), c.got,
                c.want, c.tolerance, c.pass ? "PASS" : "FAIL");
  }
  return all ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation geometry of multipartite quantum states"};
  app.require_subcommand(1);

  std::string statefile, specfile, outfile;
  std::string measures = "all";
  std::string format = "table";
  int restarts = 32;
  int ree_terms = 0;
  int ree_restarts = 8;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;

  CLI::App* analyze = app.add_subcommand("analyze", "full correlation report");
  analyze->add_option("statefile", statefile, "state JSON file")->required();
  analyze->add_option("--measures", measures,
                      "comma list of all,E,D,Q,C,T,L,delta,mid");
  analyze->add_option("--restarts", restarts, "basis-search restarts");
  analyze->add_option("--tol", tolerance, "optimizer entropy tolerance");
  analyze->add_option("--ree-terms", ree_terms,
                      "separable ansatz terms (0 = dim^2)");
  analyze->add_option("--ree-restarts", ree_restarts, "REE restarts");
  analyze->add_option("--seed", seed, "RNG seed");
  analyze->add_option("--format", format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep_cmd->add_option("specfile", specfile, "sweep spec JSON file")
      ->required();
  sweep_cmd->add_option("--out", outfile, "output CSV path")->required();
  sweep_cmd->add_option("--restarts", restarts, "basis-search restarts");
  sweep_cmd->add_option("--tol", tolerance, "optimizer entropy tolerance");
  sweep_cmd->add_option("--ree-terms", ree_terms,
                        "separable ansatz terms (0 = dim^2)");
  sweep_cmd->add_option("--ree-restarts", ree_restarts, "REE restarts");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in golden checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return run_analyze(statefile, measures, restarts, tolerance, ree_terms,
                         ree_restarts, seed, format);
    if (sweep_cmd->parsed())
      return run_sweep(specfile, outfile, restarts, tolerance, ree_terms,
                       ree_restarts);
    if (selftest->parsed()) return run_selftest();
  } catch (const corrgeo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
