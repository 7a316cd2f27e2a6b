#pragma once

// Line-oriented graph text format and DOT export.
//
//   n <count>            vertex count, required, exactly once, first
//   e <u> <v> [mult]     parallel edges between distinct vertices
//   loop <v> [count]     loops
//
// '#' starts a comment; blank lines are ignored. Repeated e/loop lines for
// the same pair accumulate. The writer emits one line per adjacent pair
// (u < v, ascending) and one per looped vertex, omitting unit counts, so
// output is canonical for equal graphs.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "multigraph.hpp"

namespace twodom {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream is(body);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

inline int parse_int(const std::string& tok, int lineno, const std::string& what) {
  if (tok.empty() || tok.size() > 9)
    throw error(errc::parse, "line " + std::to_string(lineno) + ": bad " + what + " '" + tok + "'", lineno);
  long long val = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw error(errc::parse, "line " + std::to_string(lineno) + ": bad " + what + " '" + tok + "'", lineno);
    val = val * 10 + (c - '0');
  }
  return int(val);
}

}  // namespace detail

inline MultiGraph parse_graph(std::istream& in) {
  MultiGraph g;
  bool have_n = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw error(errc::parse, "line " + std::to_string(lineno) + ": " + msg, lineno);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const std::string& dir = toks[0];
    if (dir == "n") {
      if (have_n) fail("duplicate 'n' directive");
      if (toks.size() != 2) fail("'n' takes exactly one argument");
      g = MultiGraph(detail::parse_int(toks[1], lineno, "vertex count"));
      have_n = true;
    } else if (dir == "e") {
      if (!have_n) fail("'e' before 'n'");
      if (toks.size() != 3 && toks.size() != 4) fail("'e' takes two or three arguments");
      int u = detail::parse_int(toks[1], lineno, "vertex id");
      int v = detail::parse_int(toks[2], lineno, "vertex id");
      if (u >= g.vertex_count() || v >= g.vertex_count()) fail("vertex id out of range");
      if (u == v) fail("'e' endpoints must differ; use 'loop'");
      int mult = toks.size() == 4 ? detail::parse_int(toks[3], lineno, "multiplicity") : 1;
      if (mult < 1) fail("multiplicity must be positive");
      g.add_edge(u, v, mult);
    } else if (dir == "loop") {
      if (!have_n) fail("'loop' before 'n'");
      if (toks.size() != 2 && toks.size() != 3) fail("'loop' takes one or two arguments");
      int v = detail::parse_int(toks[1], lineno, "vertex id");
      if (v >= g.vertex_count()) fail("vertex id out of range");
      int count = toks.size() == 3 ? detail::parse_int(toks[2], lineno, "loop count") : 1;
      if (count < 1) fail("loop count must be positive");
      g.add_loop(v, count);
    } else {
      fail("unknown directive '" + dir + "'");
    }
  }
  if (!have_n) throw error(errc::parse, "missing 'n' directive", lineno);
  return g;
}

inline MultiGraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  return parse_graph(is);
}

inline std::string write_graph(const MultiGraph& g) {
  std::ostringstream os;
  os << "n " << g.vertex_count() << "\n";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (int m = g.multiplicity(u, v)) {
        os << "e " << u << " " << v;
        if (m > 1) os << " " << m;
        os << "\n";
      }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (int c = g.loop_count(v)) {
      os << "loop " << v;
      if (c > 1) os << " " << c;
      os << "\n";
    }
  return os.str();
}

inline std::string to_dot(const MultiGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      for (int i = 0; i < g.multiplicity(u, v); ++i) os << "  " << u << " -- " << v << ";\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < g.loop_count(v); ++i) os << "  " << v << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace twodom
