#pragma once

// Command-line dispatch. run_cli is parameterized over streams so tests and
// the determinism self-check can drive every command in-process.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domination.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "multigraph.hpp"
#include "recognition.hpp"
#include "selfcheck.hpp"
#include "transform.hpp"

namespace twodom {

inline CheckResult check_cli_determinism();

namespace detail {

inline MultiGraph load_graph(const std::string& path, std::istream& in) {
  if (path == "-") return parse_graph(in);
  std::ifstream file(path);
  if (!file) throw error(errc::io, "cannot open " + path);
  return parse_graph(file);
}

inline Certificate load_certificate(const std::string& path, std::istream& in) {
  if (path == "-") return parse_certificate(in);
  std::ifstream file(path);
  if (!file) throw error(errc::io, "cannot open " + path);
  return parse_certificate(file);
}

inline std::string graph_summary(const MultiGraph& g) {
  std::ostringstream os;
  os << "graph: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges";
  if (g.vertex_count() > 0) {
    int lo = g.degree(0), hi = g.degree(0);
    for (int v = 1; v < g.vertex_count(); ++v) {
      lo = std::min(lo, g.degree(v));
      hi = std::max(hi, g.degree(v));
    }
    os << ", degrees " << lo << ".." << hi;
  }
  return os.str();
}

inline std::string vertex_list(const VertexSet& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int v : s.members()) {
    if (!first) os << ", ";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

// Empty string means the graph is connected and structurally minimal.
inline std::string not_minimal_reason(const MultiGraph& g) {
  if (g.vertex_count() == 0) return "empty graph";
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < 2)
      return "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
             " < 2";
  if (!bipartition(g)) return "not bipartite";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.multiplicity(u, v) > 0 && g.degree(u) >= 3 && g.degree(v) >= 3)
        return "edge " + std::to_string(u) + "-" + std::to_string(v) +
               " has both endpoints of degree >= 3";
  if (!is_connected(g)) return "not connected";
  return "";
}

inline std::vector<std::vector<int>> parse_block_lists(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::string segment;
  std::istringstream segments(text);
  while (std::getline(segments, segment, ';')) {
    std::vector<int> block;
    std::istringstream words(segment);
    std::string word;
    while (words >> word) {
      size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(word, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != word.size() || v < 0)
        throw error(errc::parse, "bad vertex '" + word + "' in --blocks");
      block.push_back(v);
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  if (blocks.empty()) throw error(errc::parse, "--blocks lists no vertices");
  return blocks;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"minimal (2,2)-domination toolkit"};
  app.name("twodom");
  app.require_subcommand(1);

  std::string file = "-";
  int k = 2, l = 2;
  bool oracle = false;
  std::string out_path;
  std::uint64_t seed = 0;
  int max_n = 0;
  std::string format = "text";
  std::string spec_text;
  int center = 0;
  std::string blocks_text;
  bool full = false;

  auto format_option = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "dot"}))
        ->capture_default_str();
  };
  auto file_argument = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("file", file, what);
  };

  auto* c_check = app.add_subcommand("check", "decide whether the graph is (k,l)-dominated");
  file_argument(c_check, "graph file, or - for standard input");
  c_check->add_option("--k", k, "first domination order")->capture_default_str();
  c_check->add_option("--l", l, "second domination order")->capture_default_str();
  c_check->add_option("--max-n", max_n, "override the solver vertex limit");

  auto* c_minimal =
      app.add_subcommand("minimal", "decide whether the graph is a minimal (2,2)-dominated graph");
  file_argument(c_minimal, "graph file, or - for standard input");
  c_minimal->add_flag("--oracle", oracle, "cross-check against the deletion oracle");
  c_minimal->add_option("--max-n", max_n, "override the oracle vertex limit");

  auto* c_decompose =
      app.add_subcommand("decompose", "decompose a minimal graph into a certificate");
  file_argument(c_decompose, "graph file, or - for standard input");
  c_decompose->add_option("--out", out_path, "certificate destination (- for standard output)");

  auto* c_subdivide = app.add_subcommand("subdivide", "emit the subdivision graph");
  file_argument(c_subdivide, "graph file, or - for standard input");
  format_option(c_subdivide);

  auto* c_contract = app.add_subcommand("contract", "apply one P-contraction");
  file_argument(c_contract, "graph file, or - for standard input");
  c_contract->add_option("--center", center, "contraction center")->required();
  c_contract->add_option("--blocks", blocks_text, "semicolon-separated vertex lists")->required();
  format_option(c_contract);

  auto* c_replay = app.add_subcommand("replay", "replay a certificate and emit the result");
  file_argument(c_replay, "certificate file, or - for standard input");
  format_option(c_replay);

  auto* c_generate = app.add_subcommand("generate", "build a graph from a generator expression");
  c_generate->add_option("spec", spec_text, "generator expression, e.g. random_f(complete(4))")
      ->required();
  c_generate->add_option("--seed", seed, "seed for random families")->capture_default_str();
  c_generate->add_option("--out", out_path, "certificate destination (- for standard output)");
  format_option(c_generate);

  auto* c_export = app.add_subcommand("export-dot", "emit the graph in DOT format");
  file_argument(c_export, "graph file, or - for standard input");

  auto* c_selftest = app.add_subcommand("selftest", "run the cross-validation suites");
  c_selftest->add_flag("--full", full, "acceptance-grade limits instead of the quick ones");
  c_selftest->add_option("--max-n", max_n, "cap the enumeration order");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  auto emit = [&](const MultiGraph& g) {
    if (format == "dot")
      out << to_dot(g);
    else
      out << write_graph(g);
  };

  try {
    if (app.got_subcommand(c_check)) {
      MultiGraph g = detail::load_graph(file, in);
      out << detail::graph_summary(g) << "\n";
      auto pair = find_kl_pair(g, k, l, max_n > 0 ? max_n : kSolverVertexLimit);
      out << "(" << k << "," << l << ")-dominated: " << (pair ? "yes" : "no") << "\n";
      if (!pair) return 1;
      out << "D1 = " << detail::vertex_list(pair->d1) << "\n";
      out << "D2 = " << detail::vertex_list(pair->d2) << "\n";
      return 0;
    }

    if (app.got_subcommand(c_minimal)) {
      MultiGraph g = detail::load_graph(file, in);
      out << detail::graph_summary(g) << "\n";
      std::string reason = detail::not_minimal_reason(g);
      out << "minimal (2,2)-dominated: " << (reason.empty() ? "yes" : "no");
      if (!reason.empty()) out << " (" << reason << ")";
      out << "\n";
      if (oracle) {
        if (!is_connected(g)) {
          out << "oracle: skipped (requires a connected graph)\n";
        } else {
          bool o = is_minimal_22_oracle(g, max_n > 0 ? max_n : kOracleVertexLimit);
          out << "oracle: " << (o ? "yes" : "no") << "\n";
          if (o != reason.empty()) {
            err << "internal error: structural recognizer disagrees with the oracle\n";
            return 2;
          }
          out << "recognizers agree\n";
        }
      }
      return reason.empty() ? 0 : 1;
    }

    if (app.got_subcommand(c_decompose)) {
      MultiGraph g = detail::load_graph(file, in);
      std::string reason = detail::not_minimal_reason(g);
      if (!reason.empty()) {
        out << detail::graph_summary(g) << "\n";
        out << "not a minimal (2,2)-dominated graph (" << reason << ")\n";
        return 1;
      }
      Certificate cert = decompose(g);
      if (!are_isomorphic(replay(cert), g)) {
        err << "internal error: certificate replay is not isomorphic to the input\n";
        return 2;
      }
      bool to_stdout = out_path.empty() || out_path == "-";
      std::ostream& info = to_stdout ? err : out;
      info << detail::graph_summary(g) << "\n";
      info << "seed: " << cert.seed.vertex_count() << " vertices, " << cert.seed.edge_count()
           << " edges (subdivision graph)\n";
      info << "steps: " << cert.steps.size() << "\n";
      info << "replay: isomorphic to input\n";
      if (to_stdout) {
        out << write_certificate(cert);
      } else {
        std::ofstream cert_file(out_path);
        if (!cert_file) throw error(errc::io, "cannot write " + out_path);
        cert_file << write_certificate(cert);
        info << "certificate written to " << out_path << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_subdivide)) {
      emit(subdivide(detail::load_graph(file, in)));
      return 0;
    }

    if (app.got_subcommand(c_contract)) {
      MultiGraph g = detail::load_graph(file, in);
      Partition p = make_partition(g, center, detail::parse_block_lists(blocks_text));
      emit(p_contraction(g, p));
      return 0;
    }

    if (app.got_subcommand(c_replay)) {
      Certificate cert = detail::load_certificate(file, in);
      try {
        emit(replay(cert));
      } catch (const error& e) {
        if (e.kind() != errc::bad_certificate) throw;
        err << "certificate invalid: " << e.what() << "\n";
        return 1;
      }
      return 0;
    }

    if (app.got_subcommand(c_generate)) {
      GenSpec spec = parse_genspec(spec_text);
      spec.seed = seed;
      Generated made = build_genspec(spec);
      if (out_path.empty()) {
        emit(made.graph);
        return 0;
      }
      if (!made.certificate)
        throw error(errc::invalid_parameter,
                    "generator '" + spec.family + "' produces no certificate");
      if (out_path == "-") {
        out << write_certificate(*made.certificate);
      } else {
        emit(made.graph);
        std::ofstream cert_file(out_path);
        if (!cert_file) throw error(errc::io, "cannot write " + out_path);
        cert_file << write_certificate(*made.certificate);
      }
      return 0;
    }

    if (app.got_subcommand(c_export)) {
      out << to_dot(detail::load_graph(file, in));
      return 0;
    }

    if (app.got_subcommand(c_selftest)) {
      CheckLimits lim = full ? CheckLimits{} : quick_limits();
      if (max_n > 0) {
        lim.simple_enum_n = std::min(lim.simple_enum_n, max_n);
        lim.multi_enum_n = std::min(lim.multi_enum_n, max_n);
        lim.lemma_vertex_cap = std::min(lim.lemma_vertex_cap, max_n);
      }
      std::vector<CheckResult> results = run_library_checks(lim);
      results.push_back(check_cli_determinism());
      int passed = 0;
      for (const CheckResult& r : results) {
        out << (r.pass ? "ok   " : "FAIL ") << r.name << " (" << r.details << ")\n";
        if (r.pass) ++passed;
      }
      bool all = passed == int(results.size());
      out << (all ? "selftest passed" : "selftest FAILED") << " (" << passed << "/"
          << results.size() << " checks)\n";
      return all ? 0 : 1;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// Every command run twice on identical input must produce identical exit
// codes and identical bytes on both streams.
inline CheckResult check_cli_determinism() {
  struct Fixture {
    std::vector<std::string> args;
    std::string input;
  };
  std::vector<Fixture> fixtures = {
      {{"check", "-"}, write_graph(cycle(6))},
      {{"check", "-", "--k", "2", "--l", "2"}, write_graph(cycle(5))},
      {{"check", "-", "--k", "3", "--l", "3"},
       write_graph(cartesian_product(complete(2), complete(4)))},
      {{"minimal", "-"}, write_graph(complete_bipartite(3, 3))},
      {{"minimal", "-", "--oracle"}, write_graph(complete_bipartite(2, 3))},
      {{"minimal", "-"}, "n 1\n"},
      {{"subdivide", "-"}, write_graph(complete(3))},
      {{"subdivide", "-", "--format", "dot"}, write_graph(cycle(2))},
      {{"contract", "-", "--center", "0", "--blocks", "1 5"}, write_graph(cycle(6))},
      {{"generate", "complete_bipartite(2,3)"}, ""},
      {{"generate", "random(6,mult=2,mindeg2=1)", "--seed", "7"}, ""},
      {{"generate", "random_f(complete(4),steps=2)", "--seed", "5", "--out", "-"}, ""},
      {{"export-dot", "-"}, write_graph(complete_bipartite(2, 3))},
      {{"check", "-"}, "n 2\ne 0 3\n"},
  };
  {
    auto sample = random_f_graph(complete(4), 2, 11);
    fixtures.push_back({{"decompose", "-"}, write_graph(sample.first)});
    fixtures.push_back({{"replay", "-"}, write_certificate(sample.second)});
  }
  long long mismatches = 0;
  for (const Fixture& f : fixtures) {
    std::string out1, err1, out2, err2;
    int rc1 = 0, rc2 = 0;
    {
      std::istringstream is(f.input);
      std::ostringstream os, es;
      rc1 = run_cli(f.args, is, os, es);
      out1 = os.str();
      err1 = es.str();
    }
    {
      std::istringstream is(f.input);
      std::ostringstream os, es;
      rc2 = run_cli(f.args, is, os, es);
      out2 = os.str();
      err2 = es.str();
    }
    if (rc1 != rc2 || out1 != out2 || err1 != err2) ++mismatches;
  }
  std::ostringstream os;
  os << fixtures.size() << " commands run twice, " << mismatches << " mismatches";
  return {"cli-determinism", mismatches == 0, os.str()};
}

}  // namespace twodom
