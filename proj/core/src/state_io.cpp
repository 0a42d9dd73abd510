#include "corrgeo/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corrgeo {

namespace {

using nlohmann::json;

MultipartiteState from_family(const json& doc) {
  const std::string family = doc.at("family").get<std::string>();
  std::vector<double> params;
  if (doc.contains("params")) params = doc["params"].get<std::vector<double>>();

  if (family == "bell_diagonal") {
    if (params.size() != 4)
      throw InvalidDistributionError("bell_diagonal expects 4 params");
    return bell_diagonal({params[0], params[1], params[2], params[3]});
  }
  if (family == "w") {
    if (!params.empty()) throw Error("family 'w' takes no params");
    return w_state();
  }
  if (family == "cluster4") {
    if (!params.empty()) throw Error("family 'cluster4' takes no params");
    return cluster_state_4();
  }
  if (family == "mid_counterexample") {
    if (params.size() != 5)
      throw InvalidDistributionError(
          "mid_counterexample expects 5 params (q, p00, p01, p10, p11)");
    return mid_counterexample(params[0],
                              {params[1], params[2], params[3], params[4]});
  }
  throw Error("unknown state family: " + family);
}

MultipartiteState from_matrix(const json& doc) {
  const std::vector<int> dims = doc.at("dims").get<std::vector<int>>();
  const json& m = doc.at("matrix");
  const auto re = m.at("re").get<std::vector<std::vector<double>>>();
  const auto im = m.at("im").get<std::vector<std::vector<double>>>();

  const size_t n = re.size();
  if (im.size() != n)
    throw DimensionMismatchError("state file: re/im row counts differ");
  Matrix rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    if (re[i].size() != n || im[i].size() != n)
      throw DimensionMismatchError("state file: matrix is not square");
    for (size_t j = 0; j < n; ++j)
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(re[i][j], im[i][j]);
  }
  return validate(dims, rho);
}

}  // namespace

MultipartiteState load_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("state file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.contains("family")) return from_family(doc);
    if (doc.contains("dims")) return from_matrix(doc);
  } catch (const json::exception& e) {
    throw Error(std::string("state file schema error: ") + e.what());
  }
  throw Error("state file must contain either 'family' or 'dims'+'matrix'");
}

MultipartiteState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_state_json(buf.str());
}

std::string state_to_json(const MultipartiteState& state) {
  json doc;
  doc["dims"] = state.dims;
  const Eigen::Index n = state.rho.rows();
  std::vector<std::vector<double>> re(static_cast<size_t>(n)),
      im(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    re[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    im[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      re[static_cast<size_t>(i)][static_cast<size_t>(j)] = state.rho(i, j).real();
      im[static_cast<size_t>(i)][static_cast<size_t>(j)] = state.rho(i, j).imag();
    }
  }
  doc["matrix"]["re"] = re;
  doc["matrix"]["im"] = im;
  return doc.dump(2);
}

}  // namespace corrgeo
