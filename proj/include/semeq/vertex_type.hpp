#pragma once

// Vertex types of semi-equivelar maps and the Euler-characteristic arithmetic
// that decides which (vertex count, type) pairs can occur on a surface.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semeq {

// One maximal block p^n of equal consecutive face sizes in a type.
struct Run {
  int size = 0;
  int count = 0;
  friend bool operator==(const Run&, const Run&) = default;
};

// Lexicographically least linearization of a cyclic sequence over all its
// rotations and both reading directions.
std::vector<int> normalize_cycle(std::span<const int> raw);

// A cyclic sequence of face sizes around a vertex, stored in canonical form.
//
// Two vertex types are equal iff their face-size cycles agree up to rotation
// and reflection; the canonical cycle makes that plain vector equality.
class VertexType {
 public:
  VertexType() = default;

  // Validates (every size >= 3, degree >= 3) and normalizes.
  static VertexType from_cycle(std::span<const int> raw);

  const std::vector<int>& cycle() const { return cycle_; }
  int degree() const { return static_cast<int>(cycle_.size()); }

  // Cyclic run-length view [p1^n1, ..., pk^nk] with p_i != p_{i+1}
  // cyclically. A single run is returned when all sizes are equal.
  std::vector<Run> runs() const;

  // Distinct sizes q with their total multiplicity m_q.
  std::map<int, int> collapsed() const;

  // "[4^3,5^1]"
  std::string to_string() const;

  // True when `raw` reads as this type after rotation and/or reflection.
  bool matches(std::span<const int> raw) const;

  friend bool operator==(const VertexType&, const VertexType&) = default;
  friend auto operator<=>(const VertexType& a, const VertexType& b) {
    return a.cycle_ <=> b.cycle_;
  }

 private:
  std::vector<int> cycle_;
};

// Accepts "[3^1,4^1,3^1,4^2]", "[4^3,5]" or a bare list "3,4,8,4";
// whitespace is ignored.
VertexType parse_type(std::string_view text);

enum class DattaMaityRule { none, i, ii, iii };

std::string_view to_string(DattaMaityRule rule);

struct DattaMaityVerdict {
  bool admissible = true;
  DattaMaityRule rule = DattaMaityRule::none;
};

// Three run-structure patterns that no semi-equivelar map can have. The first
// triggered rule is reported.
DattaMaityVerdict datta_maity_admissible(const VertexType& type);

// Solves n * (1 - d/2 + sum 1/p_j) = chi exactly. Returns n only when it is a
// positive integer.
std::optional<std::int64_t> vertex_count_for(const VertexType& type, int chi);

// x_q = n * m_q / q for every distinct size q; nullopt when any is fractional.
std::optional<std::map<int, std::int64_t>> face_counts(const VertexType& type,
                                                       std::int64_t n);

// Vertices in the closed star of a vertex: 1 + sum (p_j - 2).
int closed_star_size(const VertexType& type);

// Euler characteristic n - E + F realized by n vertices of this type, when
// the face counts are integral.
std::optional<std::int64_t> euler_characteristic_for(const VertexType& type,
                                                     std::int64_t n);

struct FilterOptions {
  bool prop1 = true;         // Datta-Maity exclusions
  int min_vertices = 7;      // 0 disables
  int min_face_count = 3;    // 1 disables (every x_q is then >= 1 anyway)
  bool closed_star = true;   // closed star must fit in n vertices
  int p_max = 100;           // hard cap on a single face size
};

struct FiltersPassed {
  bool euler = false;
  bool integral_face_counts = false;
  bool min_vertices = false;
  bool min_face_count = false;
  bool prop1 = false;
  bool closed_star = false;
};

struct AdmissiblePair {
  std::int64_t n = 0;
  VertexType type;
  std::map<int, std::int64_t> face_counts;
  FiltersPassed filters_passed;
};

// Applies every enabled filter to a (type, n) pair whose Euler solve already
// succeeded. Shared by the search below and by test oracles.
std::optional<AdmissiblePair> check_pair(const VertexType& type, std::int64_t n,
                                         const FilterOptions& opts);

// All (n, type) pairs with degree 3..6 that survive the filters for a surface
// of Euler characteristic chi < 0, sorted by (d, n, cycle).
std::vector<AdmissiblePair> admissible_types(int chi,
                                             const FilterOptions& opts = {});

}  // namespace semeq
