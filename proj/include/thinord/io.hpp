#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "thinord/metrics.hpp"
#include "thinord/models.hpp"
#include "thinord/pmf.hpp"
#include "thinord/reports.hpp"

namespace thinord {

// Pmf wire format: {offset, weights, tail_mass}. Emission writes the stored
// weights verbatim and parsing rebuilds the same window, so a round trip is
// bit-exact. Parsing checks that retained mass plus tail is 1 within 1e-9.
nlohmann::json pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const nlohmann::json& j);

// CSV rows "index,probability" (a header row and '#' comments are skipped).
// Indices may be sparse and unordered; the gaps are filled with zeros.
Pmf pmf_from_csv(std::istream& in);
std::string pmf_to_csv(const Pmf& p);

nlohmann::json metric_value_to_json(const MetricValue& v);
nlohmann::json ordering_report_to_json(const OrderingReport& r);
nlohmann::json bound_report_to_json(const BoundReport& r);
nlohmann::json flow_report_to_json(const FlowReport& r);
std::string flow_report_to_csv(const FlowReport& r);

// Wire format {n, probs: {bitmask_string: probability}} with decimal-string
// masks; absent outcomes carry zero probability.
nlohmann::json joint_table_to_json(const JointIndicatorTable& t);
JointIndicatorTable joint_table_from_json(const nlohmann::json& j);

}  // namespace thinord
