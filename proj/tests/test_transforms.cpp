#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "semeq/error.hpp"
#include "semeq/symmetry.hpp"
#include "semeq/transforms.hpp"

using namespace semeq;

namespace {

VertexType type_of(const CombMap& m) {
  const auto t = semi_equivelar_type(m);
  if (!t) throw std::runtime_error("not semi-equivelar");
  return *t;
}

const char* const kInputs[] = {
    "sphere/tetrahedron.map", "sphere/cube.map",         "sphere/octahedron.map",
    "sphere/cuboctahedron.map", "torus/hexagonal14.map", "chi-1/4-4-4-5-n20-1.map",
    "chi-1/4-4-4-5-n20-3.map", "chi-1/3-4-3-4-4-n12-1.map", "chi-1/3-3-3-3-3-4-n12-2.map",
    "chi-1/6-6-8-n24-2.map",
};

}  // namespace

TEST(Truncate, TypeLaws) {
  const CombMap cube = load_fixture("sphere/cube.map");
  const CombMap tc = truncate(cube);
  EXPECT_EQ(type_of(tc), parse_type("[3^1,8^2]"));
  EXPECT_EQ(tc.f0(), 24);
  EXPECT_EQ(tc.f0(), 2 * cube.f1());
  EXPECT_TRUE(validate_polyhedral(tc).ok);

  const CombMap tt = truncate(load_fixture("sphere/tetrahedron.map"));
  EXPECT_EQ(type_of(tt), parse_type("[3^1,6^2]"));
  EXPECT_EQ(tt.f0(), 12);

  EXPECT_EQ(type_of(truncate(load_fixture("sphere/cuboctahedron.map"))), parse_type("[4,6,8]"));
}

TEST(Rectify, TypeLaws) {
  const CombMap rc = rectify(load_fixture("sphere/cube.map"));
  EXPECT_EQ(type_of(rc), parse_type("[3^1,4^1,3^1,4^1]"));
  EXPECT_EQ(rc.f0(), 12);
  EXPECT_TRUE(isomorphic(rc, load_fixture("sphere/cuboctahedron.map")).has_value());
  EXPECT_EQ(canonical_code(rc), canonical_code(load_fixture("sphere/cuboctahedron.map")));

  EXPECT_EQ(type_of(rectify(load_fixture("sphere/cuboctahedron.map"))), parse_type("[4,3,4,4]"));
  const CombMap rt = rectify(load_fixture("sphere/tetrahedron.map"));
  EXPECT_EQ(type_of(rt), parse_type("[3^4]"));
  EXPECT_EQ(canonical_code(rt), canonical_code(load_fixture("sphere/octahedron.map")));
}

TEST(Transforms, GeneralLawsOnFixtures) {
  for (const char* rel : kInputs) {
    const CombMap m = load_fixture(rel);
    const VertexType t = type_of(m);
    const CombMap tr = truncate(m);
    const CombMap re = rectify(m);
    EXPECT_EQ(tr.f0(), 2 * m.f1()) << rel;
    EXPECT_EQ(re.f0(), m.f1()) << rel;
    EXPECT_EQ(tr.f2(), m.f0() + m.f2()) << rel;
    EXPECT_EQ(re.f2(), m.f0() + m.f2()) << rel;
    EXPECT_EQ(surface_signature(tr), surface_signature(m)) << rel;
    EXPECT_EQ(surface_signature(re), surface_signature(m)) << rel;
    EXPECT_TRUE(validate_polyhedral(tr).ok) << rel;
    EXPECT_TRUE(validate_polyhedral(re).ok) << rel;
    // Regular types follow the closed-form laws.
    const auto collapsed = t.collapsed();
    if (collapsed.size() == 1) {
      const int q = collapsed.begin()->first;
      const int p = t.degree();
      EXPECT_EQ(type_of(tr), VertexType::from_cycle(std::vector<int>{p, 2 * q, 2 * q})) << rel;
      EXPECT_EQ(type_of(re), VertexType::from_cycle(std::vector<int>{p, q, p, q})) << rel;
    }
  }
}

TEST(Transforms, ChiPreservedOnRandomizedInputs) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    const char* rel = kInputs[seed % std::size(kInputs)];
    const FaceListMap f = read_map_file(fixture_path(rel));
    const CombMap m = build_from_faces(relabel(f, oracle::random_relabeling(f.vertex_count, seed)));
    const int chi = euler_characteristic(m);
    const CombMap once = seed % 2 ? truncate(m) : rectify(m);
    EXPECT_EQ(euler_characteristic(once), chi) << rel;
    EXPECT_EQ(euler_characteristic(seed % 3 ? rectify(once) : truncate(once)), chi) << rel;
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(Transforms, RejectNonPolyhedral) {
  const CombMap d = load_fixture("misc/doubled_triangle.map");
  EXPECT_THROW(truncate(d), NotPolyhedral);
  EXPECT_THROW(rectify(d), NotPolyhedral);
}
