#include "semeq/transforms.hpp"

#include "semeq/error.hpp"

namespace semeq {

namespace {

void require_polyhedral(const CombMap& m, const char* op) {
  PolyhedralityReport report = validate_polyhedral(m);
  if (!report.ok) {
    throw NotPolyhedral(std::string(op) + ": input has " +
                        std::to_string(report.violations.size()) +
                        " polyhedrality violation(s), first: " +
                        std::string(to_string(report.violations.front().kind)));
  }
}

}  // namespace

CombMap truncate(const CombMap& m) {
  require_polyhedral(m, "truncate");
  // Each flag x = (v, e, f) spawns three flags at the new vertex (v, e):
  //   3x+0 middle of e, in the big face f
  //   3x+1 corner edge of (v, f), in the big face f
  //   3x+2 corner edge of (v, f), in the face that replaces v
  const int flags = m.flag_count();
  std::vector<int> s0(static_cast<std::size_t>(3 * flags));
  std::vector<int> s1(s0.size());
  std::vector<int> s2(s0.size());
  for (int x = 0; x < flags; ++x) {
    const int mid = 3 * x;
    const int big = 3 * x + 1;
    const int cut = 3 * x + 2;
    s0[mid] = 3 * m.s0(x);
    s0[big] = 3 * m.s1(x) + 1;
    s0[cut] = 3 * m.s1(x) + 2;
    s1[mid] = big;
    s1[big] = mid;
    s1[cut] = 3 * m.s2(x) + 2;
    s2[mid] = 3 * m.s2(x);
    s2[big] = cut;
    s2[cut] = big;
  }
  return CombMap(std::move(s0), std::move(s1), std::move(s2));
}

CombMap rectify(const CombMap& m) {
  require_polyhedral(m, "rectify");
  // Each flag x = (v, e, f) spawns two flags at the new vertex e, both on the
  // corner edge of (v, f):
  //   2x+0 in the face f
  //   2x+1 in the face that replaces v
  const int flags = m.flag_count();
  std::vector<int> s0(static_cast<std::size_t>(2 * flags));
  std::vector<int> s1(s0.size());
  std::vector<int> s2(s0.size());
  for (int x = 0; x < flags; ++x) {
    const int in_face = 2 * x;
    const int in_star = 2 * x + 1;
    s0[in_face] = 2 * m.s1(x);
    s0[in_star] = 2 * m.s1(x) + 1;
    s1[in_face] = 2 * m.s0(x);
    s1[in_star] = 2 * m.s2(x) + 1;
    s2[in_face] = in_star;
    s2[in_star] = in_face;
  }
  return CombMap(std::move(s0), std::move(s1), std::move(s2));
}

}  // namespace semeq
