#include "eigendist/json_io.hpp"

#include <fstream>
#include <sstream>

#include "eigendist/errors.hpp"

namespace eigendist {

using nlohmann::json;

std::string report_schema_version() { return "1.0.0"; }

namespace {

Mat matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ValidationError("matrix rows have unequal lengths");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json chain_to_json(const MarkovChain& chain) {
  return json{{"labels", chain.labels}, {"matrix", matrix_to_json(chain.P)}};
}

MarkovChain chain_from_json(const json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return validate_chain(matrix_from_json(j.at("matrix")), std::move(labels));
}

json metric_to_json(const PseudoMetric& metric) { return json{{"matrix", matrix_to_json(metric.d)}}; }

PseudoMetric metric_from_json(const json& j, const Tolerances& tol) {
  return validate_metric(matrix_from_json(j.at("matrix")), tol);
}

json partition_to_json(const Partition& partition) { return json{{"blocks", partition.blocks}}; }

Partition partition_from_json(const json& j) {
  Partition p;
  p.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  for (const auto& b : p.blocks)
    if (b.empty()) throw ValidationError("partition blocks must be nonempty");
  return p;
}

json coupling_to_json(const CouplingOperator& coupling) {
  json records = json::array();
  const int n = coupling.n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [uv, mass] : coupling.row(x, y))
        records.push_back(json{{"from", {x, y}}, {"to", {uv / n, uv % n}}, {"mass", mass}});
  return json{{"n", n},      {"kappa", coupling.kappa}, {"p", coupling.p},
              {"kernel", std::move(records)}};
}

json eigendistance_to_json(const EigendistanceResult& result) {
  return json{{"rho", matrix_to_json(result.rho.d)},
              {"kappa", result.kappa},
              {"p", result.p},
              {"residual", result.residual},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"trace", result.trace}};
}

json tail_report_to_json(const TailReport& report) {
  return json{{"r", report.r}, {"empirical", report.empirical}, {"bound", report.bound},
              {"mc_stderr", report.mc_stderr}};
}

json tolerances_to_json(const Tolerances& tol) {
  return json{{"metric_tol", tol.metric_tol}, {"fp_tol", tol.fp_tol}, {"ot_tol", tol.ot_tol},
              {"max_iter", tol.max_iter}};
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MarkovChain load_chain(const std::string& path) { return chain_from_json(json::parse(read_file(path))); }

PseudoMetric load_metric(const std::string& path, const Tolerances& tol) {
  return metric_from_json(json::parse(read_file(path)), tol);
}

Partition load_partition(const std::string& path) { return partition_from_json(json::parse(read_file(path))); }

}  // namespace eigendist
