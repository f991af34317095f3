#pragma once

// Exhaustive generation of semi-equivelar polyhedral maps of one vertex type
// and vertex count, up to isomorphism.
//
// The search fixes the fan of vertex 1, then repeatedly completes the fan of
// the lowest-labeled vertex whose fan is still open, one face at a time. Each
// still unknown vertex of the new face is either an existing open vertex or
// the single next fresh label. Duplicates that survive this labeling rule are
// removed by canonical code.
//
// The tree is cut at a fixed depth into independent subtrees. They are the
// unit of parallel work and of checkpointing.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semeq/comb_map.hpp"
#include "semeq/symmetry.hpp"
#include "semeq/vertex_type.hpp"

namespace semeq {

struct EnumerationOptions {
  unsigned threads = 1;
  // Face placements allowed in this run; unset means unlimited.
  std::optional<std::uint64_t> node_budget;
  // When set, an interrupted run saves its frontier here and a run that finds
  // a matching checkpoint resumes from it.
  std::string checkpoint_path;
  double checkpoint_interval_seconds = 60.0;
  // Faces placed after the root fan at which the tree is split.
  int split_depth = 2;
  // Shuffles the branch order; the result set must not change.
  std::optional<std::uint64_t> shuffle_seed;
  PolyhedralOptions polyhedral;
};

struct EnumerationStats {
  std::uint64_t nodes = 0;   // faces placed, root fan excluded
  std::uint64_t leaves = 0;  // complete labeled maps reached
  std::map<std::string, std::uint64_t> prunes;
  std::uint64_t subtrees = 0;
  double wall_seconds = 0.0;
};

struct EnumerationResult {
  std::vector<CombMap> maps;         // canonical form, sorted by code
  std::vector<CanonicalCode> codes;  // parallel to maps
  EnumerationStats stats;
  bool complete = true;
  std::string diagnostic;
};

// Throws InconsistentParameters when n vertices of this type do not have
// Euler characteristic chi.
EnumerationResult enumerate(const VertexType& type, int n, int chi,
                            const EnumerationOptions& opts = {});

// First map in the deterministic search order, or nullopt once the whole
// tree is exhausted. Throws BudgetExhausted when the budget runs out first.
std::optional<CombMap> exists_any(const VertexType& type, int n, int chi,
                                  const EnumerationOptions& opts = {});

// Remaining work of a search: subtree roots (faces placed after the root fan)
// and canonical forms of the maps found so far.
struct SearchFrontier {
  VertexType type;
  int n = 0;
  int chi = 0;
  int split_depth = 0;
  std::vector<std::vector<Face>> pending;
  std::vector<FaceListMap> found;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;

  friend bool operator==(const SearchFrontier&, const SearchFrontier&);
};

// Expands the tree down to the split depth. Throws InconsistentParameters.
SearchFrontier initial_frontier(const VertexType& type, int n, int chi,
                                const EnumerationOptions& opts = {});

// Runs pending subtrees until done or out of budget. Completed subtrees leave
// `frontier.pending`; their maps join `frontier.found`.
EnumerationResult run_frontier(SearchFrontier& frontier, const EnumerationOptions& opts = {});

// Binary checkpoint: "SEMQCKPT", u16 version, u64 payload length, payload,
// u64 FNV-1a of the payload. Layout in docs/checkpoint.md.
std::vector<std::uint8_t> checkpoint_save(const SearchFrontier& frontier);
SearchFrontier checkpoint_load(std::span<const std::uint8_t> blob);  // throws CorruptCheckpoint

void write_checkpoint(const std::string& path, const SearchFrontier& frontier);
SearchFrontier read_checkpoint(const std::string& path);

inline constexpr std::uint16_t kCheckpointVersion = 1;

}  // namespace semeq
