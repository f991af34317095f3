#include "semeq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semeq/census.hpp"
#include "semeq/error.hpp"
#include "semeq/map_io.hpp"
#include "semeq/symmetry.hpp"
#include "semeq/transforms.hpp"

namespace semeq {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FilterFlags {
  bool no_x3 = false;
  bool no_closed_star = false;
  bool no_prop1 = false;
  std::optional<int> min_vertices;

  void add_to(CLI::App* cmd) {
    cmd->add_flag("--no-x3-filter", no_x3, "Allow face counts x_q below 3");
    cmd->add_flag("--no-closed-star-filter", no_closed_star,
                  "Drop the closed-star-fits-in-n requirement");
    cmd->add_flag("--no-prop1", no_prop1, "Drop the Datta-Maity exclusions");
    cmd->add_option("--min-vertices", min_vertices, "Smallest vertex count considered (default 7)");
  }
  FilterOptions get() const {
    FilterOptions f;
    if (no_x3) f.min_face_count = 1;
    if (no_closed_star) f.closed_star = false;
    if (no_prop1) f.prop1 = false;
    if (min_vertices) f.min_vertices = *min_vertices;
    return f;
  }
};

struct RunFlags {
  unsigned threads = 1;
  std::string checkpoint;
  bool long_runs = false;
  std::optional<std::uint64_t> node_budget;
  int split_depth = 2;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App* cmd, const char* checkpoint_help) {
    cmd->add_option("--threads", threads, "Worker threads, 0 for all cores")
        ->envname("SEMEQ_THREADS");
    cmd->add_option("--checkpoint", checkpoint, checkpoint_help);
    cmd->add_flag("--long", long_runs, "Allow runs with n >= 40 (may take hours)");
    cmd->add_option("--node-budget", node_budget, "Stop after this many face placements");
    cmd->add_option("--split-depth", split_depth, "Faces below the root fan per work unit")
        ->check(CLI::Range(0, 64));
    cmd->add_option("--seed", seed, "Shuffle branch order with this seed");
  }
  EnumerationOptions get() const {
    EnumerationOptions o;
    o.threads = threads;
    o.node_budget = node_budget;
    o.split_depth = split_depth;
    o.shuffle_seed = seed;
    return o;
  }
};

CombMap load(const std::string& path) { return build_from_faces(read_map_file(path)); }

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

std::string face_counts_text(const std::map<int, std::int64_t>& counts) {
  std::ostringstream s;
  bool first = true;
  for (auto [q, x] : counts) {
    s << (first ? "" : " ") << q << ':' << x;
    first = false;
  }
  return s.str();
}

// Vertex permutation in cycle notation, fixed points omitted.
std::string cycles(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::ostringstream s;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s << '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      if (j != i) s << ' ';
      s << j;
    }
    s << ')';
  }
  const std::string r = s.str();
  return r.empty() ? "()" : r;
}

void print_json(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

// ----------------------------------------------------------------- classify

int cmd_classify(int chi, const FilterFlags& ff, bool json, std::ostream& out) {
  const FilterOptions filters = ff.get();
  if (chi == 0) throw UsageError("classify needs chi != 0: chi 0 has infinite families of types");
  const auto pairs = admissible_types(chi, filters);
  if (json) {
    ojson j;
    j["schema"] = kCensusSchema;
    j["chi"] = chi;
    j["filters"] = filters_to_json(filters);
    ojson rows = ojson::array();
    for (const auto& p : pairs) rows.push_back(pair_to_json(p));
    j["pairs"] = std::move(rows);
    print_json(out, j);
    return kExitOk;
  }
  out << "# chi " << chi << ", " << pairs.size() << " admissible (n, type) pairs\n";
  out << "# n\ttype\tface counts\n";
  for (const auto& p : pairs) {
    out << p.n << '\t' << p.type.to_string() << '\t' << face_counts_text(p.face_counts) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- enumerate

void check_long(int n, bool long_runs) {
  if (n >= 40 && !long_runs) {
    throw UsageError("runs with n >= 40 can take hours; pass --long (and ideally --checkpoint)");
  }
}

int cmd_first(const VertexType& type, int n, int chi, const EnumerationOptions& opts, bool json,
              std::ostream& out) {
  const auto m = exists_any(type, n, chi, opts);
  if (json) {
    ojson j;
    j["schema"] = kCensusSchema;
    j["type"] = type.to_string();
    j["n"] = n;
    j["chi"] = chi;
    j["exists"] = m.has_value();
    if (m) {
      j["report"] = to_json(analyze_map(*m));
      j["map"] = map_to_json(*m);
    }
    print_json(out, j);
  } else if (m) {
    out << "a map of type " << type.to_string() << " on " << n << " vertices exists:\n"
        << format_map_text(*m);
  } else {
    out << "no map of type " << type.to_string() << " on " << n << " vertices\n";
  }
  return kExitOk;
}

int cmd_enumerate(const std::string& type_text, int n, int chi, const RunFlags& rf, bool first,
                  const std::string& out_dir, bool json, std::ostream& out, std::ostream& err) {
  const VertexType type = parse_type(type_text);
  check_long(n, rf.long_runs);
  EnumerationOptions opts = rf.get();
  if (first) return cmd_first(type, n, chi, opts, json, out);
  opts.checkpoint_path = rf.checkpoint;
  const EnumerationResult res = enumerate(type, n, chi, opts);

  std::vector<MapReport> reports;
  for (const CombMap& m : res.maps) reports.push_back(analyze_map(m));

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t k = 0; k < res.maps.size(); ++k) {
      const std::string name = type_slug(type) + "-n" + std::to_string(n) + "-" +
                               std::to_string(k + 1) + ".map";
      write_map_file((std::filesystem::path(out_dir) / name).string(), res.maps[k],
                     "type " + type.to_string() + ", chi " + std::to_string(chi) +
                         "\ncanonical digest " + reports[k].digest);
    }
  }

  if (json) {
    ojson j;
    j["schema"] = kCensusSchema;
    j["type"] = type.to_string();
    j["n"] = n;
    j["chi"] = chi;
    j["complete"] = res.complete;
    j["map_count"] = res.maps.size();
    if (!res.diagnostic.empty()) j["diagnostic"] = res.diagnostic;
    ojson maps = ojson::array();
    for (std::size_t k = 0; k < res.maps.size(); ++k) {
      ojson m = to_json(reports[k]);
      m["map"] = map_to_json(res.maps[k]);
      maps.push_back(std::move(m));
    }
    j["maps"] = std::move(maps);
    print_json(out, j);
  } else {
    out << type.to_string() << " on " << n << " vertices, chi " << chi << ": " << res.maps.size()
        << (res.maps.size() == 1 ? " map" : " maps") << (res.complete ? "" : " so far (incomplete)")
        << '\n';
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const MapReport& r = reports[k];
      out << "  " << k + 1 << ". " << r.digest << "  |Aut| " << r.aut_order << " ("
          << r.aut_structure << "), orbits " << join(r.orbit_sizes, "+")
          << (r.vertex_transitive ? ", vertex-transitive" : "") << '\n';
    }
    out << "  nodes " << res.stats.nodes << ", leaves " << res.stats.leaves << ", "
        << res.stats.wall_seconds << " s\n";
  }
  if (!res.diagnostic.empty()) err << res.diagnostic << '\n';
  return res.complete ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------ map commands

int cmd_verify(const std::string& path, bool json, std::ostream& out) {
  const CombMap m = load(path);
  const PolyhedralityReport poly = validate_polyhedral(m);
  const SurfaceSignature sig = surface_signature(m);
  const auto type = semi_equivelar_type(m);
  if (json) {
    ojson j;
    j["vertices"] = m.f0();
    j["edges"] = m.f1();
    j["faces"] = m.f2();
    j["chi"] = sig.chi;
    j["orientable"] = sig.orientable;
    j["euler_genus"] = sig.euler_genus;
    j["type"] = type ? ojson(type->to_string()) : ojson(nullptr);
    j["polyhedral"] = poly.ok;
    ojson v = ojson::array();
    for (const Violation& x : poly.violations) {
      ojson e;
      e["kind"] = to_string(x.kind);
      e["witnesses"] = x.witnesses;
      v.push_back(std::move(e));
    }
    j["violations"] = std::move(v);
    print_json(out, j);
  } else {
    out << "vertices " << m.f0() << ", edges " << m.f1() << ", faces " << m.f2() << '\n';
    out << "chi " << sig.chi << ", " << (sig.orientable ? "orientable" : "non-orientable")
        << ", euler genus " << sig.euler_genus << '\n';
    out << "type " << (type ? type->to_string() : std::string("none (not semi-equivelar)")) << '\n';
    out << (poly.ok ? "polyhedral" : "not polyhedral") << '\n';
    for (const Violation& x : poly.violations) {
      out << "  " << to_string(x.kind) << ": " << join(x.witnesses) << '\n';
    }
  }
  return poly.ok ? kExitOk : kExitFailure;
}

int cmd_aut(const std::string& path, bool json, std::ostream& out) {
  const CombMap m = load(path);
  const PermGroup g = automorphism_group(m);
  const auto orbits = vertex_orbits(m, g);
  if (json) {
    ojson j;
    j["order"] = g.order;
    j["structure"] = g.structure;
    j["vertex_action_faithful"] = g.vertex_action_faithful;
    ojson gens = ojson::array();
    for (const auto& p : g.vertex_action) gens.push_back(cycles(p));
    j["generators"] = std::move(gens);
    j["orbits"] = orbits;
    j["vertex_transitive"] = orbits.size() == 1;
    print_json(out, j);
  } else {
    out << "order " << g.order << ", " << g.structure << '\n';
    for (std::size_t i = 0; i < g.vertex_action.size(); ++i) {
      out << "  generator " << i + 1 << ": " << cycles(g.vertex_action[i]) << '\n';
    }
    out << orbits.size() << (orbits.size() == 1 ? " vertex orbit" : " vertex orbits") << '\n';
    for (const auto& o : orbits) out << "  {" << join(o, ",") << "}\n";
    if (!g.vertex_action_faithful) out << "warning: vertex action is not faithful\n";
  }
  return kExitOk;
}

int cmd_iso(const std::string& a, const std::string& b, bool json, std::ostream& out) {
  const CombMap m1 = load(a);
  const CombMap m2 = load(b);
  const auto phi = isomorphic(m1, m2);
  if (json) {
    ojson j;
    j["isomorphic"] = phi.has_value();
    if (phi) {
      ojson map = ojson::object();
      for (std::size_t v = 1; v < phi->size(); ++v) map[std::to_string(v)] = (*phi)[v];
      j["bijection"] = std::move(map);
    }
    print_json(out, j);
  } else if (phi) {
    out << "isomorphic\n";
    for (std::size_t v = 1; v < phi->size(); ++v) out << v << " -> " << (*phi)[v] << '\n';
  } else {
    out << "not isomorphic\n";
  }
  return phi ? kExitOk : kExitFailure;
}

int cmd_gi(const std::string& path, std::optional<int> only, bool json, std::ostream& out) {
  const CombMap m = load(path);
  std::vector<GiGraph> graphs;
  if (only) {
    graphs.push_back(gi_graph(m, *only));
  } else {
    for (const GiSummary& s : analyze_map(m).gi) graphs.push_back(gi_graph(m, s.i));
  }
  if (json) {
    ojson arr = ojson::array();
    for (const GiGraph& g : graphs) {
      ojson j;
      j["i"] = g.i;
      ojson edges = ojson::array();
      for (auto [u, v] : g.edges) edges.push_back({u, v});
      j["edges"] = std::move(edges);
      j["degree_multiset"] = g.degree_multiset();
      j["regular"] = g.degree_regular();
      arr.push_back(std::move(j));
    }
    print_json(out, arr);
  } else {
    for (const GiGraph& g : graphs) {
      out << "G_" << g.i << ": " << g.edges.size() << " edges, degrees "
          << join(g.degree_multiset(), ",") << (g.degree_regular() ? " (regular)" : "") << '\n';
      out << " ";
      for (auto [u, v] : g.edges) out << " [" << u << ',' << v << ']';
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_transform(bool truncation, const std::string& path, const std::string& output, bool json,
                  std::ostream& out, std::ostream& err) {
  const CombMap m = load(path);
  const CombMap t = truncation ? truncate(m) : rectify(m);
  const auto type = semi_equivelar_type(t);
  const std::string note = std::string(truncation ? "truncation" : "rectification") + " of " +
                           path + "\ntype " +
                           (type ? type->to_string() : std::string("none")) + ", chi " +
                           std::to_string(euler_characteristic(t));
  if (!output.empty()) {
    write_map_file(output, t, note);
    err << note.substr(note.find('\n') + 1) << '\n';
  } else if (json) {
    print_json(out, map_to_json(t));
  } else {
    out << format_map_text(t, note);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ census

int cmd_census(int chi, const FilterFlags& ff, const RunFlags& rf, bool json, std::ostream& out,
               std::ostream& err) {
  CensusOptions opts;
  opts.filters = ff.get();
  opts.enumeration = rf.get();
  opts.long_runs = rf.long_runs;
  opts.checkpoint_dir = rf.checkpoint;
  const CensusReport report = run_census(chi, opts);
  if (json) {
    print_json(out, to_json(report));
  } else {
    out << "# census for chi " << chi << (opts.long_runs ? "" : " (long runs skipped)") << '\n';
    out << "# n\ttype\tstatus\tmaps\n";
    for (const TypeRecord& r : report.records) {
      out << r.pair.n << '\t' << r.pair.type.to_string() << '\t' << to_string(r.status) << '\t';
      if (r.status == CensusStatus::not_run) {
        out << '-';
      } else {
        out << r.maps.size();
      }
      out << '\n';
    }
  }
  bool incomplete = false;
  for (const TypeRecord& r : report.records) {
    if (r.status == CensusStatus::incomplete) {
      err << r.pair.type.to_string() << " n=" << r.pair.n << ": " << r.diagnostic << '\n';
      incomplete = true;
    }
  }
  return incomplete ? kExitFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-equivelar polyhedral maps: admissible types, enumeration, symmetry"};
  app.name("semeq");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output")->configurable(false);

  int chi = 0;
  std::string type_text;
  int n = 0;
  std::string file_a;
  std::string file_b;
  std::string out_path;
  std::optional<int> gi_index;
  FilterFlags classify_filters;
  FilterFlags census_filters;
  RunFlags enumerate_run;
  RunFlags census_run;

  auto* classify = app.add_subcommand("classify", "List admissible (n, type) pairs for chi");
  classify->add_option("--chi", chi, "Euler characteristic")->required();
  classify_filters.add_to(classify);
  classify->add_flag("--json", json, "Machine-readable output");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "All maps of one type and vertex count");
  enumerate_cmd->add_option("--type", type_text, "Vertex type, e.g. \"[4^3,5^1]\"")->required();
  enumerate_cmd->add_option("--n", n, "Vertex count")->required();
  enumerate_cmd->add_option("--chi", chi, "Euler characteristic")->required();
  enumerate_run.add_to(enumerate_cmd, "Checkpoint file; resumed when present");
  enumerate_cmd->add_option("--out-dir", out_path, "Write every map found as a map file here");
  bool first_only = false;
  enumerate_cmd->add_flag("--first", first_only, "Stop at the first map (existence check)");
  enumerate_cmd->add_flag("--json", json, "Machine-readable output");

  auto* verify = app.add_subcommand("verify", "Check a map file and report its invariants");
  verify->add_option("file", file_a, "Map file")->required();
  verify->add_flag("--json", json, "Machine-readable output");

  auto* aut = app.add_subcommand("aut", "Automorphism group of a map");
  aut->add_option("file", file_a, "Map file")->required();
  aut->add_flag("--json", json, "Machine-readable output");

  auto* iso = app.add_subcommand("iso", "Test two maps for isomorphism");
  iso->add_option("first", file_a, "Map file")->required();
  iso->add_option("second", file_b, "Map file")->required();
  iso->add_flag("--json", json, "Machine-readable output");

  auto* gi = app.add_subcommand("gi", "G_i graphs of a map");
  gi->add_option("file", file_a, "Map file")->required();
  gi->add_option("--i", gi_index, "Only this i; default every i with an edge");
  gi->add_flag("--json", json, "Machine-readable output");

  auto* trunc = app.add_subcommand("truncate", "Truncation of a map");
  auto* rect = app.add_subcommand("rectify", "Rectification of a map");
  for (auto* cmd : {trunc, rect}) {
    cmd->add_option("file", file_a, "Map file")->required();
    cmd->add_option("-o,--output", out_path, "Write the result here instead of stdout");
    cmd->add_flag("--json", json, "Machine-readable output");
  }

  auto* census = app.add_subcommand("census", "Classify, enumerate and analyze every pair");
  census->add_option("--chi", chi, "Euler characteristic")->required();
  census_filters.add_to(census);
  census_run.add_to(census, "Directory for per-type checkpoints");
  census->add_flag("--json", json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const CLI::App* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "semeq: " << e.what() << '\n' << "run 'semeq --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*classify) return cmd_classify(chi, classify_filters, json, out);
    if (*enumerate_cmd) return cmd_enumerate(type_text, n, chi, enumerate_run, first_only, out_path, json, out, err);
    if (*verify) return cmd_verify(file_a, json, out);
    if (*aut) return cmd_aut(file_a, json, out);
    if (*iso) return cmd_iso(file_a, file_b, json, out);
    if (*gi) return cmd_gi(file_a, gi_index, json, out);
    if (*trunc) return cmd_transform(true, file_a, out_path, json, out, err);
    if (*rect) return cmd_transform(false, file_a, out_path, json, out, err);
    if (*census) return cmd_census(chi, census_filters, census_run, json, out, err);
  } catch (const UsageError& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeTooSmall& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegreeTooSmall& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "semeq: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace semeq
