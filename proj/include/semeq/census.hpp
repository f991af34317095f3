#pragma once

// Census of semi-equivelar maps on one surface: admissible pairs, their
// enumeration, and per-map symmetry data, reported as versioned JSON.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semeq/comb_map.hpp"
#include "semeq/enumerator.hpp"
#include "semeq/vertex_type.hpp"

namespace semeq {

inline constexpr const char* kCensusSchema = "semeq-census/1";

struct GiSummary {
  int i = 0;
  int edges = 0;
  std::vector<int> degree_multiset;
  bool regular = true;
};

struct MapReport {
  std::string digest;
  SurfaceSignature surface;
  std::int64_t aut_order = 1;
  std::string aut_structure;
  std::vector<int> orbit_sizes;  // descending
  bool vertex_transitive = false;
  // Every i between 0 and the link size for which G_i has an edge.
  std::vector<GiSummary> gi;
};

MapReport analyze_map(const CombMap& m);

enum class CensusStatus { exists, empty, not_run, incomplete };

std::string_view to_string(CensusStatus status);

struct TypeRecord {
  AdmissiblePair pair;
  CensusStatus status = CensusStatus::not_run;
  std::vector<MapReport> maps;
  std::vector<CombMap> map_data;  // parallel to maps, canonical form
  std::string diagnostic;
};

struct CensusOptions {
  FilterOptions filters;
  EnumerationOptions enumeration;
  // Pairs with n at or above the threshold run only when long_runs is set.
  bool long_runs = false;
  int long_threshold = 40;
  // When set, long runs checkpoint to <dir>/<type>-<n>.ckpt.
  std::string checkpoint_dir;
};

struct CensusReport {
  int chi = 0;
  CensusOptions options;
  std::vector<TypeRecord> records;
};

CensusReport run_census(int chi, const CensusOptions& opts = {});

// File-name friendly type spelling: "4-4-4-5".
std::string type_slug(const VertexType& type);

nlohmann::ordered_json filters_to_json(const FilterOptions& f);
nlohmann::ordered_json pair_to_json(const AdmissiblePair& p);
nlohmann::ordered_json to_json(const MapReport& r);
nlohmann::ordered_json to_json(const TypeRecord& r);
nlohmann::ordered_json to_json(const CensusReport& r);

}  // namespace semeq
