#include "rbp/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

namespace rbp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string& tok, int line) {
  size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return value;
}

double parse_real(const std::string& tok, int line) {
  size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, "expected a number, got '" + tok + "'");
  return value;
}

int parse_vertex(const std::string& tok, int vertex_count, int line) {
  int id = parse_int(tok, line);
  if (id < 1 || id > vertex_count)
    throw ParseError(line, "unknown vertex id " + std::to_string(id) +
                               " (instance has " + std::to_string(vertex_count) +
                               " vertices)");
  return id - 1;
}

// Connected and acyclic over all vertex_count vertices?
bool forms_tree(int vertex_count, const std::vector<EdgeSpec>& edges) {
  if (static_cast<int>(edges.size()) != vertex_count - 1) return false;
  std::vector<std::vector<int>> adj(vertex_count);
  for (const EdgeSpec& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(vertex_count, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
  }
  return visited == vertex_count;
}

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

RbpInstance parse_instance(const std::string& text) {
  RbpInstance inst;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false, saw_k = false, saw_start = false, saw_vertices = false;
  bool saw_tree_flag = false, declared_tree = false;
  int start_token = -1, start_line = -1;
  std::vector<std::pair<std::string, int>> request_tokens;  // token, line

  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    const std::string& head = tokens[0];

    if (!saw_header) {
      if (head != "RBP" || tokens.size() != 2 || tokens[1] != "1")
        throw ParseError(lineno, "expected header 'RBP 1'");
      saw_header = true;
      continue;
    }

    if (head == "k") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'k <int>'");
      inst.k = parse_int(tokens[1], lineno);
      if (inst.k < 1) throw ParseError(lineno, "k must be at least 1");
      saw_k = true;
    } else if (head == "start") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'start <vertex>'");
      start_token = parse_int(tokens[1], lineno);
      start_line = lineno;
      saw_start = true;
    } else if (head == "vertices") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'vertices <int>'");
      inst.vertex_count = parse_int(tokens[1], lineno);
      if (inst.vertex_count < 1)
        throw ParseError(lineno, "vertex count must be positive");
      saw_vertices = true;
    } else if (head == "tree") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'tree 0|1'");
      declared_tree = parse_int(tokens[1], lineno) != 0;
      saw_tree_flag = true;
    } else if (head == "edge") {
      if (!saw_vertices)
        throw ParseError(lineno, "'edge' before 'vertices'");
      if (tokens.size() != 4)
        throw ParseError(lineno, "expected 'edge <u> <v> <length>'");
      EdgeSpec e;
      e.u = parse_vertex(tokens[1], inst.vertex_count, lineno);
      e.v = parse_vertex(tokens[2], inst.vertex_count, lineno);
      e.length = parse_real(tokens[3], lineno);
      if (e.u == e.v) throw ParseError(lineno, "self-loop edge");
      if (e.length < 0) throw ParseError(lineno, "negative edge length");
      inst.edges.push_back(e);
    } else if (head == "requests") {
      for (size_t t = 1; t < tokens.size(); ++t)
        request_tokens.emplace_back(tokens[t], lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }

  if (!saw_header) throw ParseError(lineno + 1, "missing header 'RBP 1'");
  if (!saw_vertices) throw ParseError(lineno + 1, "missing 'vertices' line");
  if (!saw_k) throw ParseError(lineno + 1, "missing 'k' line");
  if (!saw_start) throw ParseError(lineno + 1, "missing 'start' line");

  if (start_token < 1 || start_token > inst.vertex_count)
    throw ParseError(start_line, "unknown vertex id " + std::to_string(start_token) +
                                     " (instance has " +
                                     std::to_string(inst.vertex_count) + " vertices)");
  inst.start_vertex = start_token - 1;

  for (const auto& [tok, ln] : request_tokens)
    inst.requests.push_back(parse_vertex(tok, inst.vertex_count, ln));
  inst.original_request_count = inst.request_count();

  bool tree_shape = forms_tree(inst.vertex_count, inst.edges);
  if (saw_tree_flag) {
    if (declared_tree && !tree_shape) {
      if (static_cast<int>(inst.edges.size()) == inst.vertex_count - 1)
        throw ParseError(lineno + 1, "not a tree: graph is disconnected");
      throw ParseError(lineno + 1, "not a tree: edge count does not match");
    }
    inst.is_tree = declared_tree;
  } else {
    // A connected graph on V vertices with V-1 edges is a tree; with V-1
    // edges but disconnected it must contain a cycle, which we reject rather
    // than silently treating as a general metric.
    if (static_cast<int>(inst.edges.size()) == inst.vertex_count - 1 && !tree_shape)
      throw ParseError(lineno + 1, "not a tree: graph is disconnected");
    inst.is_tree = tree_shape;
  }
  return inst;
}

std::string serialize_instance(const RbpInstance& inst) {
  std::ostringstream out;
  out << "RBP 1\n";
  out << "k " << inst.k << "\n";
  out << "start " << inst.start_vertex + 1 << "\n";
  out << "vertices " << inst.vertex_count << "\n";
  bool inferred = static_cast<int>(inst.edges.size()) == inst.vertex_count - 1;
  if (inst.is_tree != inferred) out << "tree " << (inst.is_tree ? 1 : 0) << "\n";
  for (const EdgeSpec& e : inst.edges)
    out << "edge " << e.u + 1 << " " << e.v + 1 << " " << fmt_real(e.length) << "\n";
  for (size_t i = 0; i < inst.requests.size(); i += 16) {
    out << "requests";
    for (size_t t = i; t < std::min(inst.requests.size(), i + 16); ++t)
      out << " " << inst.requests[t] + 1;
    out << "\n";
  }
  return out.str();
}

RbpInstance pad_to_window_multiple(const RbpInstance& inst) {
  if (inst.requests.empty())
    throw std::invalid_argument("cannot pad an empty request sequence");
  RbpInstance padded = inst;
  padded.original_request_count = inst.request_count();
  int w = inst.window_size();
  int remainder = padded.request_count() % w;
  if (remainder != 0) {
    int last = padded.requests.back();
    for (int i = remainder; i < w; ++i) padded.requests.push_back(last);
  }
  return padded;
}

WindowPartition partition_windows(const RbpInstance& inst) {
  int n = inst.request_count();
  int w = inst.window_size();
  if (n == 0 || n % w != 0)
    throw std::invalid_argument(
        "request count " + std::to_string(n) +
        " is not a positive multiple of the window size " + std::to_string(w));
  WindowPartition part;
  part.window_size = w;
  part.m = n / w;
  return part;
}

}  // namespace rbp
