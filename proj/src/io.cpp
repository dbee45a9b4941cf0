#include "thinord/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include "thinord/numeric.hpp"

namespace thinord {

namespace {

std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void bad_input(const std::string& what) {
  fail(Errc::invalid_parameter, what);
}

}  // namespace

nlohmann::json pmf_to_json(const Pmf& p) {
  return nlohmann::json{{"offset", p.offset()},
                        {"weights", p.weights()},
                        {"tail_mass", p.tail_mass()}};
}

Pmf pmf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("offset") || !j.contains("weights")) {
    bad_input("pmf json needs offset and weights");
  }
  if (!j["offset"].is_number_integer()) bad_input("pmf offset must be an integer");
  if (!j["weights"].is_array() || j["weights"].empty()) {
    bad_input("pmf weights must be a nonempty array");
  }
  const long long offset = j["offset"].get<long long>();
  std::vector<double> weights;
  weights.reserve(j["weights"].size());
  for (const auto& w : j["weights"]) {
    if (!w.is_number()) bad_input("pmf weights must be numbers");
    weights.push_back(w.get<double>());
  }
  double tail = 0.0;
  if (j.contains("tail_mass")) {
    if (!j["tail_mass"].is_number()) bad_input("pmf tail_mass must be a number");
    tail = j["tail_mass"].get<double>();
    if (tail < 0.0 || tail > 1.0) bad_input("pmf tail_mass must lie in [0, 1]");
  }
  const double total = kahan_total(weights) + tail;
  if (std::abs(total - 1.0) > 1e-9) {
    fail(Errc::not_normalized, "pmf mass plus tail is " + std::to_string(total));
  }
  return Pmf::raw(offset, std::move(weights), tail);
}

Pmf pmf_from_csv(std::istream& in) {
  std::map<long long, double> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) bad_input("csv row without a comma: " + line);
    const std::string key = line.substr(0, comma);
    const std::string val = line.substr(comma + 1);
    if (key == "index") continue;  // header row
    try {
      std::size_t used = 0;
      const long long idx = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      const double w = std::stod(val, &used);
      if (idx < 0) fail(Errc::negative_support, "csv index must be >= 0");
      if (!entries.emplace(idx, w).second) {
        bad_input("csv repeats index " + std::to_string(idx));
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      bad_input("unparsable csv row: " + line);
    }
  }
  if (entries.empty()) bad_input("csv holds no probability rows");
  const long long lo = entries.begin()->first;
  const long long hi = entries.rbegin()->first;
  std::vector<double> weights(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [idx, w] : entries) {
    weights[static_cast<std::size_t>(idx - lo)] = w;
  }
  const double total = kahan_total(weights);
  if (std::abs(total - 1.0) > 1e-9) {
    fail(Errc::not_normalized, "csv mass is " + std::to_string(total));
  }
  return Pmf::raw(lo, std::move(weights), 0.0);
}

std::string pmf_to_csv(const Pmf& p) {
  std::ostringstream out;
  out << "index,probability\n";
  for (long long i = 0; i < p.size(); ++i) {
    out << (p.offset() + i) << ',' << full_precision(p.weights()[static_cast<std::size_t>(i)])
        << '\n';
  }
  return out.str();
}

nlohmann::json metric_value_to_json(const MetricValue& v) {
  return nlohmann::json{{"value", v.value}, {"uncertainty", v.uncertainty}};
}

nlohmann::json ordering_report_to_json(const OrderingReport& r) {
  nlohmann::json j{{"relation", relation_name(r.relation)},
                   {"s", r.s},
                   {"holds", r.holds},
                   {"max_violation", r.max_violation},
                   {"tolerance", r.tolerance}};
  if (r.witness) j["witness"] = *r.witness;
  else j["witness"] = nullptr;
  return j;
}

nlohmann::json bound_report_to_json(const BoundReport& r) {
  nlohmann::json j{{"bound", r.bound},
                   {"uncertainty", r.uncertainty},
                   {"source", r.source}};
  j["exact"] = r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
  j["holds"] = r.holds ? nlohmann::json(*r.holds) : nlohmann::json(nullptr);
  j["hypothesis_holds"] =
      r.hypothesis_holds ? nlohmann::json(*r.hypothesis_holds) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json flow_report_to_json(const FlowReport& r) {
  return nlohmann::json{{"grid", r.grid},
                        {"values", r.values},
                        {"monotone_decreasing", r.monotone_decreasing},
                        {"concave", r.concave},
                        {"max_first_diff", r.max_first_diff},
                        {"max_second_diff", r.max_second_diff}};
}

std::string flow_report_to_csv(const FlowReport& r) {
  std::ostringstream out;
  out << "grid_value,entropy\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out << full_precision(r.grid[i]) << ',' << full_precision(r.values[i]) << '\n';
  }
  return out.str();
}

nlohmann::json joint_table_to_json(const JointIndicatorTable& t) {
  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t mask = 0; mask < t.probs.size(); ++mask) {
    if (t.probs[mask] != 0.0) probs[std::to_string(mask)] = t.probs[mask];
  }
  return nlohmann::json{{"n", t.n}, {"probs", std::move(probs)}};
}

JointIndicatorTable joint_table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("probs")) {
    bad_input("joint table json needs n and probs");
  }
  if (!j["n"].is_number_integer()) bad_input("joint table n must be an integer");
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > 20) fail(Errc::too_large, "joint table needs 1 <= n <= 20");
  if (!j["probs"].is_object()) bad_input("joint table probs must be an object");
  std::vector<double> probs(static_cast<std::size_t>(1) << n, 0.0);
  for (const auto& [key, val] : j["probs"].items()) {
    std::size_t used = 0;
    long long mask = -1;
    try {
      mask = std::stoll(key, &used);
    } catch (const std::exception&) {
      bad_input("joint table mask is not a decimal string: " + key);
    }
    if (used != key.size() || mask < 0 ||
        mask >= static_cast<long long>(probs.size())) {
      bad_input("joint table mask out of range: " + key);
    }
    if (!val.is_number()) bad_input("joint table probability must be a number");
    probs[static_cast<std::size_t>(mask)] = val.get<double>();
  }
  return joint_table(n, std::move(probs));
}

}  // namespace thinord
