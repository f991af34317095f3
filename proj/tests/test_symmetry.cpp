#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "semeq/symmetry.hpp"

using namespace semeq;

namespace {

const char* const kFixtures[] = {
    "sphere/tetrahedron.map",   "sphere/cube.map",          "sphere/octahedron.map",
    "sphere/cuboctahedron.map", "torus/hexagonal14.map",    "misc/bipyramid.map",
    "chi-1/4-4-4-5-n20-1.map",  "chi-1/4-4-4-5-n20-2.map",  "chi-1/4-4-4-5-n20-3.map",
    "chi-1/3-4-3-4-4-n12-1.map", "chi-1/3-3-3-3-3-4-n12-1.map", "chi-1/6-6-8-n24-1.map",
};

std::vector<std::vector<int>> face_key(const FaceListMap& m, const std::vector<int>& p) {
  std::vector<std::vector<int>> key;
  for (const Face& f : m.faces) {
    std::vector<int> g;
    for (int v : f) g.push_back(p.empty() ? v : p[static_cast<std::size_t>(v)]);
    key.push_back(oracle::min_cycle(g));
  }
  std::sort(key.begin(), key.end());
  return key;
}

// Group on `degree` points generated by `gens`, with every element listed.
PermGroup make_group(std::vector<Permutation> gens) {
  PermGroup g;
  const std::size_t degree = gens.front().size();
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> queue{id};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const Permutation& s : gens) {
      Permutation x(degree);
      for (std::size_t i = 0; i < degree; ++i) x[i] = s[static_cast<std::size_t>(queue[k][i])];
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  g.degree = static_cast<int>(degree);
  g.generators = std::move(gens);
  g.elements = queue;
  g.order = static_cast<std::int64_t>(queue.size());
  return g;
}

std::multiset<std::int64_t> orders_of_k_class() {
  std::multiset<std::int64_t> out;
  for (int k = 1; k <= 3; ++k) {
    out.insert(automorphism_group(load_fixture("chi-1/4-4-4-5-n20-" + std::to_string(k) + ".map")).order);
  }
  return out;
}

}  // namespace

TEST(CanonicalCode, RelabelingInvariance) {
  int checked = 0;
  for (const char* rel : kFixtures) {
    const FaceListMap f = read_map_file(fixture_path(rel));
    const CanonicalCode code = canonical_code(build_from_faces(f));
    for (int k = 0; k < 200 / static_cast<int>(std::size(kFixtures)) + 1; ++k) {
      const auto p = oracle::random_relabeling(f.vertex_count, 1000 + static_cast<std::uint64_t>(checked));
      FaceListMap shuffled = relabel(f, p);
      // Also reverse and rotate the faces, which the code must ignore too.
      for (std::size_t i = 0; i < shuffled.faces.size(); ++i) {
        Face& face = shuffled.faces[i];
        if (i % 2) std::reverse(face.begin(), face.end());
        std::rotate(face.begin(), face.begin() + static_cast<long>(i % face.size()), face.end());
      }
      std::reverse(shuffled.faces.begin(), shuffled.faces.end());
      EXPECT_EQ(canonical_code(build_from_faces(shuffled)), code) << rel;
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(CanonicalCode, DistinguishesClasses) {
  std::set<CanonicalCode> codes;
  for (const char* rel : kFixtures) codes.insert(canonical_code(load_fixture(rel)));
  EXPECT_EQ(codes.size(), std::size(kFixtures));
  EXPECT_EQ(canonical_code(load_fixture("sphere/cube.map")).digest().size(), 16u);
}

TEST(CanonicalForm, IsomorphicMapsGiveEqualFaceLists) {
  const FaceListMap f = read_map_file(fixture_path("chi-1/4-4-4-5-n20-2.map"));
  const FaceListMap a = canonical_form(build_from_faces(f));
  const FaceListMap b = canonical_form(build_from_faces(relabel(f, oracle::random_relabeling(20, 5))));
  EXPECT_EQ(a.faces, b.faces);
  EXPECT_EQ(canonical_code(build_from_faces(a)), canonical_code(build_from_faces(f)));
}

TEST(Isomorphic, WitnessCarriesFaces) {
  for (const char* rel : kFixtures) {
    const FaceListMap f = read_map_file(fixture_path(rel));
    const auto p = oracle::random_relabeling(f.vertex_count, 77);
    const FaceListMap g = relabel(f, p);
    const auto w = isomorphic(build_from_faces(f), build_from_faces(g));
    ASSERT_TRUE(w.has_value()) << rel;
    EXPECT_EQ(face_key(f, *w), face_key(g, {})) << rel;
    const auto self = isomorphic(build_from_faces(f), build_from_faces(f));
    ASSERT_TRUE(self.has_value());
    EXPECT_EQ(face_key(f, *self), face_key(f, {}));
  }
}

TEST(Isomorphic, DistinctClasses) {
  const CombMap a = load_fixture("chi-1/4-4-4-5-n20-1.map");
  const CombMap b = load_fixture("chi-1/4-4-4-5-n20-2.map");
  const CombMap c = load_fixture("chi-1/4-4-4-5-n20-3.map");
  EXPECT_FALSE(isomorphic(a, b).has_value());
  EXPECT_FALSE(isomorphic(a, c).has_value());
  EXPECT_FALSE(isomorphic(b, c).has_value());
  EXPECT_FALSE(isomorphic(load_fixture("sphere/cube.map"), load_fixture("sphere/octahedron.map")).has_value());
}

TEST(Automorphisms, AgreeWithBruteForceOnSmallMaps) {
  for (const char* rel : {"sphere/tetrahedron.map", "sphere/cube.map", "sphere/octahedron.map",
                          "misc/bipyramid.map"}) {
    const FaceListMap f = read_map_file(fixture_path(rel));
    ASSERT_LE(f.vertex_count, 8);
    const PermGroup g = automorphism_group(build_from_faces(f));
    EXPECT_TRUE(g.vertex_action_faithful) << rel;
    EXPECT_EQ(g.order, oracle::brute_automorphisms(f)) << rel;
    EXPECT_EQ(static_cast<std::int64_t>(g.elements.size()), g.order);
    std::set<Permutation> distinct(g.vertex_elements.begin(), g.vertex_elements.end());
    EXPECT_EQ(static_cast<std::int64_t>(distinct.size()), g.order) << rel;
  }
}

TEST(Automorphisms, Tetrahedron) {
  const CombMap t = load_fixture("sphere/tetrahedron.map");
  const PermGroup g = automorphism_group(t);
  EXPECT_EQ(4 * t.f1() % g.order, 0);
  std::set<Permutation> action(g.vertex_elements.begin(), g.vertex_elements.end());
  EXPECT_EQ(action.size(), 24u);
  EXPECT_EQ(g.elements.front(), [&] {
    Permutation id(static_cast<std::size_t>(t.flag_count()));
    std::iota(id.begin(), id.end(), 0);
    return id;
  }());
}

TEST(Automorphisms, ElementsPreserveFlagStructure) {
  const CombMap m = load_fixture("chi-1/4-4-4-5-n20-3.map");
  const PermGroup g = automorphism_group(m);
  for (const Permutation& a : g.elements) {
    for (int x = 0; x < m.flag_count(); ++x) {
      EXPECT_EQ(a[static_cast<std::size_t>(m.s0(x))], m.s0(a[static_cast<std::size_t>(x)]));
      EXPECT_EQ(a[static_cast<std::size_t>(m.s1(x))], m.s1(a[static_cast<std::size_t>(x)]));
      EXPECT_EQ(a[static_cast<std::size_t>(m.s2(x))], m.s2(a[static_cast<std::size_t>(x)]));
    }
  }
}

TEST(Automorphisms, KClassOrders) { EXPECT_EQ(orders_of_k_class(), (std::multiset<std::int64_t>{2, 4, 8})); }

TEST(GroupRecognition, KClassStructures) {
  for (int k = 1; k <= 3; ++k) {
    const PermGroup g = automorphism_group(load_fixture("chi-1/4-4-4-5-n20-" + std::to_string(k) + ".map"));
    const GroupStructure s = recognize_group(g);
    EXPECT_EQ(s.label, g.structure);
    if (g.order == 2) EXPECT_EQ(s.label, "Z_2");
    if (g.order == 4) EXPECT_EQ(s.label, "D_2 (Klein four)");
    if (g.order == 8) EXPECT_EQ(s.label, "D_4");
  }
}

TEST(GroupRecognition, HandBuiltGroups) {
  const Permutation c4{1, 2, 3, 0};
  const Permutation flip{0, 3, 2, 1};
  EXPECT_EQ(recognize_group(make_group({c4})).label, "Z_4");
  EXPECT_EQ(recognize_group(make_group({c4, flip})).label, "D_4");
  EXPECT_EQ(recognize_group(make_group({{1, 0, 2, 3}, {0, 1, 3, 2}})).label, "D_2 (Klein four)");
  EXPECT_EQ(recognize_group(make_group({{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}})).label,
            "Z2^3");
  EXPECT_EQ(recognize_group(make_group({{1, 2, 0, 4, 5, 3}, {3, 5, 4, 0, 2, 1}})).label, "D_3");
  // Z_2 x Z_4 is none of the recognized families.
  EXPECT_EQ(recognize_group(make_group({{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}})).label, "unrecognized(8)");
  EXPECT_EQ(recognize_group(make_group({{0, 1}})).label, "trivial");
  EXPECT_EQ(automorphism_group(load_fixture("sphere/tetrahedron.map")).structure, "unrecognized(24)");
}

TEST(Orbits, Examples) {
  EXPECT_TRUE(is_vertex_transitive(load_fixture("sphere/cube.map")));
  EXPECT_EQ(vertex_orbits(load_fixture("sphere/cube.map")).size(), 1u);
  const auto b = vertex_orbits(load_fixture("misc/bipyramid.map"));
  ASSERT_EQ(b.size(), 2u);
  std::multiset<std::size_t> sizes{b[0].size(), b[1].size()};
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 3}));
  for (int k = 1; k <= 3; ++k) {
    EXPECT_FALSE(is_vertex_transitive(load_fixture("chi-1/4-4-4-5-n20-" + std::to_string(k) + ".map")));
  }
}

TEST(Orbits, AreGroupInvariant) {
  const CombMap m = load_fixture("chi-1/4-4-4-5-n20-1.map");
  const PermGroup g = automorphism_group(m);
  std::vector<int> orbit_of(21, -1);
  const auto orbits = vertex_orbits(m, g);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    for (int v : orbits[o]) orbit_of[static_cast<std::size_t>(v)] = static_cast<int>(o);
  }
  for (const Permutation& a : g.vertex_elements) {
    for (int v = 1; v <= 20; ++v) EXPECT_EQ(orbit_of[static_cast<std::size_t>(v)], orbit_of[static_cast<std::size_t>(a[static_cast<std::size_t>(v)])]);
  }
}

TEST(Gi, Tetrahedron) {
  const GiGraph g = gi_graph(load_fixture("sphere/tetrahedron.map"), 2);
  EXPECT_EQ(g.edges.size(), 6u);
  EXPECT_TRUE(g.degree_regular());
  EXPECT_EQ(g.degree_multiset(), (std::vector<int>{3, 3, 3, 3}));
}

TEST(Gi, KClassSixGraphs) {
  for (int k = 1; k <= 3; ++k) {
    const CombMap m = load_fixture("chi-1/4-4-4-5-n20-" + std::to_string(k) + ".map");
    const std::int64_t order = automorphism_group(m).order;
    const GiGraph g6 = gi_graph(m, 6);
    const std::size_t expected = order == 8 ? 8 : order == 4 ? 4 : 6;
    EXPECT_EQ(g6.edges.size(), expected) << "order " << order;
    if (order == 4) {
      std::multiset<int> touched;
      for (auto [u, v] : g6.edges) {
        touched.insert(u);
        touched.insert(v);
      }
      EXPECT_EQ(touched.size(), 8u);
      EXPECT_EQ(std::set<int>(touched.begin(), touched.end()).size(), 8u);
    }
  }
}

TEST(Gi, MatchesDirectCount) {
  const CombMap m = load_fixture("chi-1/4-4-4-5-n20-2.map");
  std::vector<std::set<int>> link(21);
  for (int v = 1; v <= 20; ++v) {
    const auto b = link_cycle(m, v).boundary;
    link[static_cast<std::size_t>(v)] = std::set<int>(b.begin(), b.end());
  }
  for (int i = 0; i <= 9; ++i) {
    std::vector<std::pair<int, int>> expect;
    for (int u = 1; u <= 20; ++u) {
      for (int v = u + 1; v <= 20; ++v) {
        int shared = 0;
        for (int x : link[static_cast<std::size_t>(u)]) shared += static_cast<int>(link[static_cast<std::size_t>(v)].count(x));
        if (shared == i) expect.emplace_back(u, v);
      }
    }
    EXPECT_EQ(gi_graph(m, i).edges, expect) << "i=" << i;
  }
}
