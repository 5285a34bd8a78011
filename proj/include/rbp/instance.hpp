#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rbp {

// Error raised by the instance parser; carries the 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

// A reordering-buffer instance: a weighted graph (usually a tree), a request
// sequence over its vertices, a buffer capacity k, and a start vertex.
// Vertex ids are 0-based in memory; the file format uses 1-based ids.
struct RbpInstance {
  int vertex_count = 0;
  std::vector<EdgeSpec> edges;
  std::vector<int> requests;  // vertex per request, in arrival order
  int k = 1;
  int start_vertex = 0;
  bool is_tree = true;
  // Number of requests before padding; equals requests.size() until
  // pad_to_window_multiple has run.
  int original_request_count = 0;

  int window_size() const { return 2 * k + 1; }
  int request_count() const { return static_cast<int>(requests.size()); }
};

// Fixed-size windows W_1..W_m of 2k+1 consecutive requests (0-based inside).
struct WindowPartition {
  int window_size = 0;
  int m = 0;

  int window_of(int request_index) const { return request_index / window_size; }
  int window_begin(int window) const { return window * window_size; }
  int window_end(int window) const { return (window + 1) * window_size; }
};

// Parses the textual instance format:
//   RBP 1
//   k <int>
//   start <vertex>
//   vertices <int>
//   edge <u> <v> <length>      (one per edge)
//   requests <v> <v> ...       (may repeat; sequences are concatenated)
// '#' starts a comment line.  An optional "tree 0|1" line overrides the
// default inference (a graph is treated as a tree iff it has exactly
// vertices-1 edges and is connected); declaring "tree 1" for a graph that
// is not a tree is an error.
RbpInstance parse_instance(const std::string& text);

std::string serialize_instance(const RbpInstance& inst);

// Appends copies of the last real request until the length is a multiple of
// 2k+1.  The returned instance records the original length.  Padding is
// cost-neutral: the extra requests sit at an already-visited vertex.
RbpInstance pad_to_window_multiple(const RbpInstance& inst);

// Requires request_count to be a positive multiple of 2k+1.
WindowPartition partition_windows(const RbpInstance& inst);

}  // namespace rbp
