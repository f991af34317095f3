#include "semeq/census.hpp"

#include <algorithm>
#include <filesystem>

#include "semeq/symmetry.hpp"

namespace semeq {

MapReport analyze_map(const CombMap& m) {
  MapReport r;
  r.digest = canonical_code(m).digest();
  r.surface = surface_signature(m);
  const PermGroup g = automorphism_group(m);
  r.aut_order = g.order;
  r.aut_structure = g.structure;
  for (const auto& orbit : vertex_orbits(m, g)) r.orbit_sizes.push_back(static_cast<int>(orbit.size()));
  std::sort(r.orbit_sizes.rbegin(), r.orbit_sizes.rend());
  r.vertex_transitive = r.orbit_sizes.size() == 1;

  std::size_t link = 0;
  for (int v = 0; v < m.f0(); ++v) {
    link = std::max(link, link_cycle(m, m.label_of_vertex(v)).boundary.size());
  }
  for (int i = 0; i <= static_cast<int>(link); ++i) {
    const GiGraph gi = gi_graph(m, i);
    if (gi.edges.empty()) continue;
    r.gi.push_back({i, static_cast<int>(gi.edges.size()), gi.degree_multiset(), gi.degree_regular()});
  }
  return r;
}

std::string_view to_string(CensusStatus status) {
  switch (status) {
    case CensusStatus::exists: return "exists";
    case CensusStatus::empty: return "empty";
    case CensusStatus::not_run: return "not-run";
    case CensusStatus::incomplete: return "incomplete";
  }
  return "unknown";
}

std::string type_slug(const VertexType& type) {
  std::string s;
  for (int p : type.cycle()) {
    if (!s.empty()) s += '-';
    s += std::to_string(p);
  }
  return s;
}

CensusReport run_census(int chi, const CensusOptions& opts) {
  CensusReport report;
  report.chi = chi;
  report.options = opts;
  for (const AdmissiblePair& pair : admissible_types(chi, opts.filters)) {
    TypeRecord rec;
    rec.pair = pair;
    const bool is_long = pair.n >= opts.long_threshold;
    if (is_long && !opts.long_runs) {
      rec.status = CensusStatus::not_run;
      rec.diagnostic = "long run; needs --long";
      report.records.push_back(std::move(rec));
      continue;
    }
    EnumerationOptions eo = opts.enumeration;
    if (!opts.checkpoint_dir.empty()) {
      std::filesystem::create_directories(opts.checkpoint_dir);
      eo.checkpoint_path = (std::filesystem::path(opts.checkpoint_dir) /
                            (type_slug(pair.type) + "-" + std::to_string(pair.n) + ".ckpt"))
                               .string();
    }
    EnumerationResult res = enumerate(pair.type, static_cast<int>(pair.n), chi, eo);
    rec.diagnostic = res.diagnostic;
    if (!res.complete) {
      rec.status = CensusStatus::incomplete;
    } else {
      rec.status = res.maps.empty() ? CensusStatus::empty : CensusStatus::exists;
    }
    for (const CombMap& m : res.maps) rec.maps.push_back(analyze_map(m));
    rec.map_data = std::move(res.maps);
    report.records.push_back(std::move(rec));
  }
  return report;
}

nlohmann::ordered_json filters_to_json(const FilterOptions& f) {
  nlohmann::ordered_json j;
  j["prop1"] = f.prop1;
  j["min_vertices"] = f.min_vertices;
  j["min_face_count"] = f.min_face_count;
  j["closed_star"] = f.closed_star;
  j["p_max"] = f.p_max;
  return j;
}

nlohmann::ordered_json pair_to_json(const AdmissiblePair& p) {
  nlohmann::ordered_json j;
  j["type"] = p.type.to_string();
  j["n"] = p.n;
  j["degree"] = p.type.degree();
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (auto [q, x] : p.face_counts) counts[std::to_string(q)] = x;
  j["face_counts"] = counts;
  j["closed_star"] = closed_star_size(p.type);
  return j;
}

nlohmann::ordered_json to_json(const MapReport& r) {
  nlohmann::ordered_json j;
  j["digest"] = r.digest;
  j["chi"] = r.surface.chi;
  j["orientable"] = r.surface.orientable;
  j["euler_genus"] = r.surface.euler_genus;
  j["aut_order"] = r.aut_order;
  j["aut_structure"] = r.aut_structure;
  j["orbit_count"] = r.orbit_sizes.size();
  j["orbit_sizes"] = r.orbit_sizes;
  j["vertex_transitive"] = r.vertex_transitive;
  nlohmann::ordered_json gi = nlohmann::ordered_json::array();
  for (const GiSummary& g : r.gi) {
    nlohmann::ordered_json e;
    e["i"] = g.i;
    e["edges"] = g.edges;
    e["degree_multiset"] = g.degree_multiset;
    e["regular"] = g.regular;
    gi.push_back(std::move(e));
  }
  j["gi"] = std::move(gi);
  return j;
}

nlohmann::ordered_json to_json(const TypeRecord& r) {
  nlohmann::ordered_json j = pair_to_json(r.pair);
  j["status"] = to_string(r.status);
  if (r.status == CensusStatus::exists || r.status == CensusStatus::empty ||
      r.status == CensusStatus::incomplete) {
    j["map_count"] = r.maps.size();
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  nlohmann::ordered_json maps = nlohmann::ordered_json::array();
  for (const MapReport& m : r.maps) maps.push_back(to_json(m));
  j["maps"] = std::move(maps);
  return j;
}

nlohmann::ordered_json to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kCensusSchema;
  j["chi"] = r.chi;
  j["filters"] = filters_to_json(r.options.filters);
  j["long_runs"] = r.options.long_runs;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const TypeRecord& t : r.records) recs.push_back(to_json(t));
  j["types"] = std::move(recs);
  return j;
}

}  // namespace semeq
