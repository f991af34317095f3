#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "semeq/enumerator.hpp"
#include "semeq/error.hpp"

using namespace semeq;

namespace {

std::set<CanonicalCode> code_set(const EnumerationResult& r) { return {r.codes.begin(), r.codes.end()}; }

std::string temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "semeq-tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / (name + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove(path);
  return path.string();
}

void expect_sound(const EnumerationResult& r, const VertexType& t, int n, int chi) {
  std::set<CanonicalCode> seen;
  ASSERT_EQ(r.maps.size(), r.codes.size());
  for (std::size_t i = 0; i < r.maps.size(); ++i) {
    const CombMap& m = r.maps[i];
    EXPECT_EQ(m.f0(), n);
    EXPECT_EQ(euler_characteristic(m), chi);
    EXPECT_TRUE(validate_polyhedral(m).ok);
    EXPECT_EQ(semi_equivelar_type(m), t);
    EXPECT_EQ(canonical_code(m), r.codes[i]);
    EXPECT_TRUE(seen.insert(r.codes[i]).second) << "duplicate class";
    if (i > 0) EXPECT_LT(r.codes[i - 1], r.codes[i]);
  }
}

struct Case {
  const char* type;
  int n;
  int chi;
  std::size_t count;
};

}  // namespace

TEST(Enumerate, SphereCountsMatchFixtures) {
  const std::pair<Case, const char*> cases[] = {
      {{"[3^3]", 4, 2, 1}, "sphere/tetrahedron.map"},
      {{"[4^3]", 8, 2, 1}, "sphere/cube.map"},
      {{"[3^4]", 6, 2, 1}, "sphere/octahedron.map"},
      {{"[3,4,3,4]", 12, 2, 1}, "sphere/cuboctahedron.map"},
  };
  for (const auto& [c, fixture] : cases) {
    const VertexType t = parse_type(c.type);
    const EnumerationResult r = enumerate(t, c.n, c.chi);
    ASSERT_TRUE(r.complete);
    ASSERT_EQ(r.maps.size(), c.count) << c.type;
    expect_sound(r, t, c.n, c.chi);
    EXPECT_EQ(r.codes.front(), canonical_code(load_fixture(fixture))) << c.type;
  }
}

TEST(Enumerate, AgreesWithUnprunedSearch) {
  const Case cases[] = {
      {"[3^3]", 4, 2, 1},  {"[3^4]", 6, 2, 1},   {"[4^3]", 8, 2, 1},  {"[3^5]", 12, 2, 1},
      {"[3,6,6]", 12, 2, 1}, {"[3,4,3,4]", 12, 2, 1}, {"[3^6]", 7, 0, 1}, {"[3^6]", 9, 0, 3},
      {"[4^4]", 9, 0, 3},
  };
  for (const Case& c : cases) {
    const VertexType t = parse_type(c.type);
    const EnumerationResult r = enumerate(t, c.n, c.chi);
    const std::set<CanonicalCode> brute = oracle::brute_maps(t.cycle(), c.n, c.chi);
    EXPECT_EQ(code_set(r), brute) << c.type << " n=" << c.n;
    EXPECT_EQ(r.maps.size(), c.count) << c.type << " n=" << c.n;
  }
}

TEST(Enumerate, SmallNonOrientableCensus) {
  const Case cases[] = {
      {"[4^3,5^1]", 20, -1, 3},         {"[3^5,4^1]", 12, -1, 3}, {"[3^1,4^1,3^1,4^2]", 12, -1, 1},
      {"[3^1,6^1,4^1,6^1]", 12, -1, 0}, {"[3^1,5^3]", 15, -1, 0}, {"[3^2,4^1,3^1,5^1]", 20, -1, 0},
  };
  for (const Case& c : cases) {
    const VertexType t = parse_type(c.type);
    const EnumerationResult r = enumerate(t, c.n, c.chi);
    ASSERT_TRUE(r.complete) << c.type;
    EXPECT_EQ(r.maps.size(), c.count) << c.type;
    expect_sound(r, t, c.n, c.chi);
  }
}

TEST(Enumerate, ThreeFourFiveAgreesWithFixtures) {
  const EnumerationResult r = enumerate(parse_type("[4^3,5^1]"), 20, -1);
  std::set<CanonicalCode> fixtures;
  for (int k = 1; k <= 3; ++k) fixtures.insert(canonical_code(load_fixture("chi-1/4-4-4-5-n20-" + std::to_string(k) + ".map")));
  EXPECT_EQ(code_set(r), fixtures);
}

TEST(Enumerate, DeterministicAcrossWorkerCounts) {
  const VertexType t = parse_type("[4^3,5^1]");
  const EnumerationResult one = enumerate(t, 20, -1, {.threads = 1});
  const EnumerationResult four = enumerate(t, 20, -1, {.threads = 4});
  EXPECT_EQ(one.codes, four.codes);
  ASSERT_EQ(one.maps.size(), four.maps.size());
  for (std::size_t i = 0; i < one.maps.size(); ++i) {
    EXPECT_EQ(to_face_list(one.maps[i]).faces, to_face_list(four.maps[i]).faces);
  }
  EXPECT_EQ(one.stats.nodes, four.stats.nodes);
  EXPECT_EQ(one.stats.leaves, four.stats.leaves);
}

TEST(Enumerate, ShuffledBranchOrderGivesSameClasses) {
  const VertexType t = parse_type("[3^5,4^1]");
  const EnumerationResult base = enumerate(t, 12, -1);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    EXPECT_EQ(enumerate(t, 12, -1, {.shuffle_seed = seed}).codes, base.codes) << seed;
  }
  for (int depth : {0, 1, 3, 5}) {
    EXPECT_EQ(enumerate(t, 12, -1, {.split_depth = depth}).codes, base.codes) << depth;
  }
}

TEST(Enumerate, StatsAreReported) {
  const EnumerationResult r = enumerate(parse_type("[4^3,5^1]"), 20, -1);
  EXPECT_GT(r.stats.nodes, 0u);
  EXPECT_GE(r.stats.leaves, r.maps.size());
  EXPECT_GT(r.stats.subtrees, 0u);
  EXPECT_FALSE(r.stats.prunes.empty());
}

TEST(Enumerate, InconsistentParameters) {
  EXPECT_THROW(enumerate(parse_type("[4^3,5^1]"), 21, -1), InconsistentParameters);
  EXPECT_THROW(enumerate(parse_type("[4^3]"), 8, 0), InconsistentParameters);
  EXPECT_THROW(exists_any(parse_type("[4^3,5^1]"), 19, -1), InconsistentParameters);
}

TEST(Enumerate, ClosedStarLargerThanVertexCount) {
  // [3,16^2] needs 30 vertices around one vertex, but n = 24.
  const EnumerationResult r = enumerate(parse_type("[3,16,16]"), 24, -1);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.maps.empty());
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(Enumerate, BudgetStopsRun) {
  const EnumerationResult r = enumerate(parse_type("[4^3,5^1]"), 20, -1, {.node_budget = 10});
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(ExistsAny, Examples) {
  const auto tet = exists_any(parse_type("[3^3]"), 4, 2);
  ASSERT_TRUE(tet.has_value());
  EXPECT_EQ(canonical_code(*tet), canonical_code(load_fixture("sphere/tetrahedron.map")));
  EXPECT_FALSE(exists_any(parse_type("[3,7,3,7]"), 21, -1).has_value());
  const auto k = exists_any(parse_type("[4^3,5^1]"), 20, -1, {.threads = 2});
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(semi_equivelar_type(*k), parse_type("[4^3,5^1]"));
  // The first map in search order does not depend on the worker count.
  EXPECT_EQ(canonical_code(*k), canonical_code(*exists_any(parse_type("[4^3,5^1]"), 20, -1)));
}

TEST(ExistsAny, BudgetExhausted) {
  EXPECT_THROW(exists_any(parse_type("[3^4,8]"), 24, -1, {.node_budget = 1000}), BudgetExhausted);
}

TEST(Checkpoint, FrontierRoundTrip) {
  const SearchFrontier f = initial_frontier(parse_type("[4^3,5^1]"), 20, -1);
  EXPECT_FALSE(f.pending.empty());
  const auto blob = checkpoint_save(f);
  EXPECT_EQ(checkpoint_load(blob), f);
  EXPECT_EQ(std::string(blob.begin(), blob.begin() + 8), "SEMQCKPT");
}

TEST(Checkpoint, SaveImmediatelyThenRun) {
  const VertexType t = parse_type("[4^3,5^1]");
  const EnumerationResult direct = enumerate(t, 20, -1);
  SearchFrontier f = checkpoint_load(checkpoint_save(initial_frontier(t, 20, -1)));
  const EnumerationResult resumed = run_frontier(f);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(resumed.codes, direct.codes);
  EXPECT_TRUE(f.pending.empty());
}

TEST(Checkpoint, InterruptAtHalfAndResume) {
  const VertexType t = parse_type("[4^3,5^1]");
  const EnumerationResult direct = enumerate(t, 20, -1);
  const std::string path = temp_file("k-half.ckpt");

  const EnumerationResult first = enumerate(t, 20, -1, {.node_budget = direct.stats.nodes / 2, .checkpoint_path = path});
  EXPECT_FALSE(first.complete);
  ASSERT_TRUE(std::filesystem::exists(path));
  const SearchFrontier saved = read_checkpoint(path);
  EXPECT_FALSE(saved.pending.empty());

  const EnumerationResult second = enumerate(t, 20, -1, {.checkpoint_path = path});
  EXPECT_TRUE(second.complete);
  EXPECT_EQ(second.codes, direct.codes);
  EXPECT_EQ(second.maps.size(), 3u);
  for (std::size_t i = 0; i < second.maps.size(); ++i) {
    EXPECT_EQ(to_face_list(second.maps[i]).faces, to_face_list(direct.maps[i]).faces);
  }
  std::filesystem::remove(path);
}

TEST(Checkpoint, MismatchedSearchIsRejected) {
  const std::string path = temp_file("mismatch.ckpt");
  write_checkpoint(path, initial_frontier(parse_type("[3^5,4]"), 12, -1));
  EXPECT_THROW(enumerate(parse_type("[4^3,5^1]"), 20, -1, {.checkpoint_path = path}), InconsistentParameters);
  std::filesystem::remove(path);
}

TEST(Checkpoint, CorruptBlobsAreRejected) {
  const auto blob = checkpoint_save(initial_frontier(parse_type("[4^3,5^1]"), 20, -1));

  auto wrong_version = blob;
  wrong_version[8] = static_cast<std::uint8_t>(kCheckpointVersion + 1);
  EXPECT_THROW(checkpoint_load(wrong_version), CorruptCheckpoint);

  auto bad_magic = blob;
  bad_magic[0] = 'X';
  EXPECT_THROW(checkpoint_load(bad_magic), CorruptCheckpoint);

  auto flipped = blob;
  flipped[blob.size() / 2] ^= 0x40;
  EXPECT_THROW(checkpoint_load(flipped), CorruptCheckpoint);

  const std::vector<std::uint8_t> cut(blob.begin(), blob.begin() + static_cast<long>(blob.size() - 3));
  EXPECT_THROW(checkpoint_load(cut), CorruptCheckpoint);
  EXPECT_THROW(checkpoint_load(std::vector<std::uint8_t>{}), CorruptCheckpoint);

  const std::string path = temp_file("missing.ckpt");
  EXPECT_THROW(read_checkpoint(path), CorruptCheckpoint);
}
