#pragma once

#include <string>

#include <json.hpp>

#include "eigendist/concentration.hpp"
#include "eigendist/coupling.hpp"
#include "eigendist/eigendistance.hpp"
#include "eigendist/structure.hpp"

namespace eigendist {

/// Stable identifier embedded in every emitted report.
std::string report_schema_version();

nlohmann::json chain_to_json(const MarkovChain& chain);
MarkovChain chain_from_json(const nlohmann::json& j);

nlohmann::json metric_to_json(const PseudoMetric& metric);
PseudoMetric metric_from_json(const nlohmann::json& j, const Tolerances& tol = {});

nlohmann::json partition_to_json(const Partition& partition);
Partition partition_from_json(const nlohmann::json& j);

/// Sparse list of {from:[x,y], to:[u,v], mass} records.
nlohmann::json coupling_to_json(const CouplingOperator& coupling);

nlohmann::json eigendistance_to_json(const EigendistanceResult& result);
nlohmann::json tail_report_to_json(const TailReport& report);
nlohmann::json tolerances_to_json(const Tolerances& tol);

/// FNV-1a over the raw bytes, as a hex string; used to stamp reports
/// with their inputs.
std::string fnv1a_hex(const std::string& bytes);

MarkovChain load_chain(const std::string& path);
PseudoMetric load_metric(const std::string& path, const Tolerances& tol = {});
Partition load_partition(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace eigendist
