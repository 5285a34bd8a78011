#pragma once

#include <string>
#include <vector>

#include "rbp/instance.hpp"

namespace rbp {

// Dense all-pairs distance table.
struct DenseMetric {
  int n = 0;
  std::vector<double> d;  // n*n row-major

  double at(int u, int v) const { return d[static_cast<size_t>(u) * n + v]; }
  double& at(int u, int v) { return d[static_cast<size_t>(u) * n + v]; }
};

// Distances induced by an instance: tree distances when the instance is a
// tree, otherwise shortest paths over the edge list.  Throws if the graph is
// disconnected.
DenseMetric metric_from_instance(const RbpInstance& inst);

// Checks symmetry, zero diagonal, positive off-diagonal entries and the
// triangle inequality; throws with the violating pair or triple.
void validate_metric(const DenseMetric& metric);

// Text format:
//   METRIC <n>
//   n rows of n distances
DenseMetric parse_metric_file(const std::string& text);
std::string serialize_metric(const DenseMetric& metric);

}  // namespace rbp
