#pragma once

// Canonical forms, isomorphism and automorphisms of maps.
//
// A breadth-first traversal of the flag graph from a start flag, visiting the
// images under s0, s1, s2 in that order and numbering flags on first visit,
// describes the map completely in terms of the numbering. The least such
// description over all start flags is the canonical code; start flags that
// reach it differ by exactly one automorphism each.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semeq/comb_map.hpp"

namespace semeq {

struct CanonicalCode {
  // flag count, then for each flag in canonical order the canonical numbers
  // of its s0-, s1- and s2-images.
  std::vector<std::uint32_t> words;

  // 64-bit FNV-1a of `words` as 16 hex digits.
  std::string digest() const;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    return a.words <=> b.words;
  }
};

CanonicalCode canonical_code(const CombMap& m);

// The map relabeled so that vertices are numbered in the order the canonical
// traversal first meets them. Isomorphic maps give identical face lists.
FaceListMap canonical_form(const CombMap& m);

// Vertex bijection (indexed by m1 label, entry 0 unused) carrying faces of m1
// to faces of m2, or nullopt when the maps are not isomorphic.
std::optional<std::vector<int>> isomorphic(const CombMap& m1, const CombMap& m2);

using Permutation = std::vector<int>;

struct PermGroup {
  int degree = 0;                      // number of flags
  std::vector<Permutation> generators;  // flag level
  std::vector<Permutation> elements;    // flag level, identity first
  // Projection of each generator / element to vertex labels (index 0 unused).
  std::vector<Permutation> vertex_action;
  std::vector<Permutation> vertex_elements;
  bool vertex_action_faithful = true;
  std::int64_t order = 1;
  std::string structure;
};

PermGroup automorphism_group(const CombMap& m);

enum class GroupKind { trivial, cyclic, dihedral, elementary_abelian, unrecognized };

struct GroupStructure {
  GroupKind kind = GroupKind::unrecognized;
  std::int64_t order = 1;
  // Z_n / D_n index, or rank for elementary abelian groups.
  int n = 0;
  // "trivial", "Z_2", "D_4", "D_2 (Klein four)", "Z2^3", "unrecognized(24)"
  std::string label;
};

// Recognizes groups of order <= 16 as trivial, cyclic, dihedral or
// elementary abelian. The dihedral group of order 2n is written D_n, so the
// Klein four-group is D_2.
GroupStructure recognize_group(const PermGroup& group);

// Vertex orbits as sorted label lists, ordered by smallest label.
std::vector<std::vector<int>> vertex_orbits(const CombMap& m);
std::vector<std::vector<int>> vertex_orbits(const CombMap& m, const PermGroup& group);
bool is_vertex_transitive(const CombMap& m);

// u ~ v when the vertex sets of their link cycles share exactly i vertices.
struct GiGraph {
  int i = 0;
  std::vector<int> vertices;                 // labels
  std::vector<std::pair<int, int>> edges;    // u < v, sorted
  std::vector<int> degrees;                  // parallel to `vertices`

  std::vector<int> degree_multiset() const;  // sorted
  bool degree_regular() const;
};

GiGraph gi_graph(const CombMap& m, int i);

}  // namespace semeq
