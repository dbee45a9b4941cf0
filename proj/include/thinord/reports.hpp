#pragma once

#include <optional>
#include <string>
#include <vector>

namespace thinord {

enum class Relation { st, icx, cx, s_cx, tnd, nr };

std::string relation_name(Relation r);

struct OrderingReport {
  Relation relation;
  int s = 1;  // order of the s_cx cone; 1 for st, 2 for icx/cx
  bool holds = false;
  double max_violation = 0.0;             // largest positive excess, clamped at 0
  std::optional<long long> witness;       // index attaining the worst violation
  double tolerance = 0.0;
};

struct BoundReport {
  double bound = 0.0;
  std::optional<double> exact;
  double uncertainty = 0.0;               // truncation slack on both sides
  std::optional<bool> holds;              // bound + uncertainty >= exact; absent when
                                          // no exact value or hypothesis failed
  std::string source;
  std::optional<bool> hypothesis_holds;   // attached when the bound has a hypothesis
};

struct FlowReport {
  std::vector<double> grid;      // strictly increasing
  std::vector<double> values;
  bool monotone_decreasing = false;
  bool concave = false;
  double max_first_diff = 0.0;   // max divided first difference
  double max_second_diff = 0.0;  // max difference of consecutive divided diffs
};

}  // namespace thinord
