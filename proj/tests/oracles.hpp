#pragma once

// Slow, independent reference implementations used to cross-check the
// library. None of them calls the code under test for the property it checks.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semeq/comb_map.hpp"
#include "semeq/symmetry.hpp"

namespace oracle {

// Least reading of a cyclic sequence over all rotations and reflections.
std::vector<int> min_cycle(const std::vector<int>& raw);

// 1 + sum (p - 2).
int closed_star(const std::vector<int>& cycle);

// The three run-structure exclusions, checked directly on the sequence.
bool excluded_by_runs(const std::vector<int>& cycle);

struct Filters {
  int min_vertices = 7;
  int min_face_count = 3;
  bool runs = true;
  bool closed_star = true;
};

using Pair = std::pair<std::int64_t, std::vector<int>>;  // (n, canonical cycle)

// Every cyclic sequence of degree 3..6 with entries in 3..p_max, solved for n
// with integer arithmetic and filtered.
std::set<Pair> admissible(int chi, const Filters& f, int p_max = 100);

// Number of vertex permutations that carry the face set onto itself.
std::int64_t brute_automorphisms(const semeq::FaceListMap& m);

// Canonical codes of all polyhedral maps of `type` with n vertices and the
// given Euler characteristic, by growing faces across open edges with only
// counting constraints; every candidate is validated at the leaf.
std::set<semeq::CanonicalCode> brute_maps(const std::vector<int>& type, int n, int chi);

// Deterministic pseudo-random relabeling of 1..n (index 0 unused).
std::vector<int> random_relabeling(int n, std::uint64_t seed);

}  // namespace oracle
