#include "semeq/comb_map.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

#include "semeq/error.hpp"

namespace semeq {

namespace {

void check_involution(const std::vector<int>& s, int flags, const char* name) {
  if (static_cast<int>(s.size()) != flags) {
    throw InvalidMap(std::string(name) + " has the wrong length");
  }
  for (int x = 0; x < flags; ++x) {
    int y = s[x];
    if (y < 0 || y >= flags) throw InvalidMap(std::string(name) + " out of range");
    if (y == x) throw InvalidMap(std::string(name) + " has a fixed point");
    if (s[y] != x) throw InvalidMap(std::string(name) + " is not an involution");
  }
}

// Labels the orbits of <a,b> in the order their first flag is met by `order`.
int label_orbits(const std::vector<int>& order, const std::vector<int>& a,
                 const std::vector<int>& b, std::vector<int>& orbit_of,
                 std::vector<int>& first_flag) {
  orbit_of.assign(a.size(), -1);
  first_flag.clear();
  int count = 0;
  std::vector<int> stack;
  for (int start : order) {
    if (orbit_of[start] != -1) continue;
    orbit_of[start] = count;
    first_flag.push_back(start);
    stack.push_back(start);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {a[x], b[x]}) {
        if (orbit_of[y] == -1) {
          orbit_of[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

CombMap::CombMap(std::vector<int> s0, std::vector<int> s1, std::vector<int> s2,
                 const std::vector<int>& flag_labels)
    : s0_(std::move(s0)), s1_(std::move(s1)), s2_(std::move(s2)) {
  const int flags = static_cast<int>(s0_.size());
  if (flags == 0) throw InvalidMap("no flags");
  check_involution(s0_, flags, "s0");
  check_involution(s1_, flags, "s1");
  check_involution(s2_, flags, "s2");
  for (int x = 0; x < flags; ++x) {
    int y = s0_[s2_[x]];
    if (y == x || s0_[s2_[y]] != x) {
      throw InvalidMap("s0 s2 is not a fixed-point-free involution");
    }
  }

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(flags));
  {
    std::vector<char> seen(static_cast<std::size_t>(flags), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      order.push_back(x);
      for (int y : {s0_[x], s1_[x], s2_[x]}) {
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  if (static_cast<int>(order.size()) != flags) {
    throw Disconnected("flag graph has more than one component");
  }

  std::vector<int> unused;
  f0_ = label_orbits(order, s1_, s2_, vertex_of_, vertex_flag_);
  f1_ = label_orbits(order, s0_, s2_, edge_of_, unused);
  f2_ = label_orbits(order, s0_, s1_, face_of_, face_flag_);
  if (flags != 4 * f1_) throw InvalidMap("edge orbits must have four flags");

  labels_.assign(static_cast<std::size_t>(f0_), 0);
  if (flag_labels.empty()) {
    for (int v = 0; v < f0_; ++v) labels_[v] = v + 1;
  } else {
    if (static_cast<int>(flag_labels.size()) != flags) {
      throw InvalidMap("flag label count mismatch");
    }
    for (int x = 0; x < flags; ++x) {
      int& label = labels_[vertex_of_[x]];
      if (label == 0) {
        label = flag_labels[x];
      } else if (label != flag_labels[x]) {
        throw InvalidMap("flag labels are not constant on a vertex");
      }
    }
  }
}

int CombMap::vertex_with_label(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw NoSuchVertex("no vertex labeled " + std::to_string(label));
  return static_cast<int>(it - labels_.begin());
}

std::vector<int> CombMap::face_vertices(int face) const {
  std::vector<int> out;
  int start = face_flag_[face];
  int x = start;
  do {
    out.push_back(vertex_of_[x]);
    x = s1_[s0_[x]];
  } while (x != start);
  return out;
}

int CombMap::face_size(int face) const {
  int size = 0;
  int start = face_flag_[face];
  int x = start;
  do {
    ++size;
    x = s1_[s0_[x]];
  } while (x != start);
  return size;
}

CombMap build_from_faces(const FaceListMap& input) {
  const int n = input.vertex_count;
  if (n <= 0) throw InvalidMap("vertex_count must be positive");
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  int flags = 0;
  for (std::size_t f = 0; f < input.faces.size(); ++f) {
    const Face& face = input.faces[f];
    if (face.size() < 3) {
      throw InvalidMap("face " + std::to_string(f) + " has fewer than 3 vertices");
    }
    std::set<int> distinct;
    for (int v : face) {
      if (v < 1 || v > n) {
        throw InvalidMap("label " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      if (!distinct.insert(v).second) {
        throw RepeatedVertexInFace("vertex " + std::to_string(v) + " repeats in face " +
                                   std::to_string(f));
      }
      used[v] = 1;
    }
    flags += 2 * static_cast<int>(face.size());
  }
  for (int v = 1; v <= n; ++v) {
    if (!used[v]) throw InvalidMap("vertex " + std::to_string(v) + " lies on no face");
  }

  // Face f, edge i (face[i] -> face[i+1]) owns flags base+2i at face[i] and
  // base+2i+1 at face[i+1].
  std::vector<int> s0(static_cast<std::size_t>(flags)), s1(s0.size()), s2(s0.size(), -1);
  std::vector<int> labels(s0.size());
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;  // pair -> (flag at min, flag at max)
  int base = 0;
  for (const Face& face : input.faces) {
    const int k = static_cast<int>(face.size());
    for (int i = 0; i < k; ++i) {
      int a = base + 2 * i;
      int b = a + 1;
      int prev = base + 2 * ((i + k - 1) % k) + 1;
      s0[a] = b;
      s0[b] = a;
      s1[a] = prev;
      s1[prev] = a;
      int u = face[i];
      int w = face[(i + 1) % k];
      labels[a] = u;
      labels[b] = w;
      auto key = std::minmax(u, w);
      sides[{key.first, key.second}].push_back(u < w ? std::pair{a, b} : std::pair{b, a});
    }
    base += 2 * k;
  }
  for (const auto& [edge, list] : sides) {
    if (list.size() != 2) {
      throw EdgeDegree("pair {" + std::to_string(edge.first) + "," +
                       std::to_string(edge.second) + "} occurs " +
                       std::to_string(list.size()) + " times");
    }
    s2[list[0].first] = list[1].first;
    s2[list[1].first] = list[0].first;
    s2[list[0].second] = list[1].second;
    s2[list[1].second] = list[0].second;
  }
  return CombMap(std::move(s0), std::move(s1), std::move(s2), labels);
}

namespace {

Face normalize_face(Face face) {
  const std::size_t k = face.size();
  auto it = std::min_element(face.begin(), face.end());
  std::rotate(face.begin(), it, face.end());
  if (k > 2 && face.back() < face[1]) std::reverse(face.begin() + 1, face.end());
  return face;
}

}  // namespace

FaceListMap to_face_list(const CombMap& m) {
  FaceListMap out;
  out.vertex_count = *std::max_element(m.vertex_labels().begin(), m.vertex_labels().end());
  for (int f = 0; f < m.f2(); ++f) {
    Face face;
    for (int v : m.face_vertices(f)) face.push_back(m.label_of_vertex(v));
    out.faces.push_back(normalize_face(std::move(face)));
  }
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

FaceListMap relabel(const FaceListMap& m, const std::vector<int>& perm) {
  FaceListMap out;
  out.vertex_count = m.vertex_count;
  for (const Face& face : m.faces) {
    Face g;
    g.reserve(face.size());
    for (int v : face) g.push_back(perm.at(static_cast<std::size_t>(v)));
    out.faces.push_back(normalize_face(std::move(g)));
  }
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::repeated_vertex_in_face: return "repeated-vertex-in-face";
    case ViolationKind::loop_edge: return "loop-edge";
    case ViolationKind::parallel_edge: return "parallel-edge";
    case ViolationKind::big_face_intersection: return "big-face-intersection";
    case ViolationKind::non_disc_star: return "non-disc-star";
  }
  return "?";
}

PolyhedralityReport validate_polyhedral(const CombMap& m, const PolyhedralOptions& opts) {
  PolyhedralityReport report;
  auto add = [&](ViolationKind kind, std::vector<int> witnesses) {
    report.violations.push_back({kind, std::move(witnesses)});
  };

  if (opts.disc_stars) {
    std::map<int, std::vector<int>> orbits_by_label;
    for (int v = 0; v < m.f0(); ++v) orbits_by_label[m.label_of_vertex(v)].push_back(v);
    for (const auto& [label, orbits] : orbits_by_label) {
      if (orbits.size() > 1) add(ViolationKind::non_disc_star, {label});
    }
  }

  // Edge endpoints and the two face sides, per edge orbit.
  std::vector<std::pair<int, int>> ends(static_cast<std::size_t>(m.f1()), {-1, -1});
  std::vector<std::pair<int, int>> sides(ends.size(), {-1, -1});
  for (int x = 0; x < m.flag_count(); ++x) {
    int e = m.edge_of(x);
    if (ends[e].first != -1) continue;
    ends[e] = {m.vertex_of(x), m.vertex_of(m.s0(x))};
    sides[e] = {m.face_of(x), m.face_of(m.s2(x))};
  }

  if (opts.simple_edge_graph) {
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < m.f1(); ++e) {
      auto [a, b] = ends[e];
      if (a == b) {
        add(ViolationKind::loop_edge, {e});
        continue;
      }
      auto key = std::minmax(a, b);
      auto [it, fresh] = seen.emplace(std::pair{key.first, key.second}, e);
      if (!fresh) add(ViolationKind::parallel_edge, {it->second, e});
    }
  }

  std::vector<std::set<int>> face_sets(static_cast<std::size_t>(m.f2()));
  for (int f = 0; f < m.f2(); ++f) {
    std::vector<int> verts = m.face_vertices(f);
    face_sets[f].insert(verts.begin(), verts.end());
    if (opts.simple_face_boundaries && face_sets[f].size() != verts.size()) {
      add(ViolationKind::repeated_vertex_in_face, {f});
    }
  }

  if (opts.face_intersections) {
    std::map<std::pair<int, int>, int> shared_vertices;
    std::vector<std::vector<int>> faces_at(static_cast<std::size_t>(m.f0()));
    for (int f = 0; f < m.f2(); ++f) {
      for (int v : face_sets[f]) faces_at[v].push_back(f);
    }
    for (const auto& list : faces_at) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          ++shared_vertices[std::minmax(list[i], list[j])];
        }
      }
    }
    std::map<std::pair<int, int>, int> shared_edges;
    for (int e = 0; e < m.f1(); ++e) {
      auto [f, g] = sides[e];
      if (f != g) ++shared_edges[std::minmax(f, g)];
    }
    for (const auto& [pair, count] : shared_vertices) {
      auto it = shared_edges.find(pair);
      int edges = it == shared_edges.end() ? 0 : it->second;
      bool bad = edges > 1 || count > 2 || (count == 2 && edges == 0);
      if (bad) add(ViolationKind::big_face_intersection, {pair.first, pair.second});
    }
  }

  report.ok = report.violations.empty();
  return report;
}

int euler_characteristic(const CombMap& m) { return m.f0() - m.f1() + m.f2(); }

SurfaceSignature surface_signature(const CombMap& m) {
  SurfaceSignature sig;
  sig.chi = euler_characteristic(m);
  sig.euler_genus = 2 - sig.chi;
  std::vector<int> color(static_cast<std::size_t>(m.flag_count()), -1);
  std::vector<int> stack{0};
  color[0] = 0;
  sig.orientable = true;
  while (!stack.empty() && sig.orientable) {
    int x = stack.back();
    stack.pop_back();
    for (int y : {m.s0(x), m.s1(x), m.s2(x)}) {
      if (color[y] == -1) {
        color[y] = 1 - color[x];
        stack.push_back(y);
      } else if (color[y] == color[x]) {
        sig.orientable = false;
        break;
      }
    }
  }
  return sig;
}

LinkCycle link_cycle(const CombMap& m, int v) {
  int vertex = m.vertex_with_label(v);
  LinkCycle link;
  link.center = v;
  int start = m.vertex_flag(vertex);
  int x = start;
  do {
    // Walk the face from v along x's edge, dropping the last vertex before v:
    // it opens the next face's piece.
    int y = m.s0(x);
    std::vector<int> piece;
    while (m.vertex_of(y) != vertex) {
      piece.push_back(m.label_of_vertex(m.vertex_of(y)));
      y = m.s0(m.s1(y));
    }
    piece.pop_back();
    link.boundary.insert(link.boundary.end(), piece.begin(), piece.end());
    x = m.s2(m.s1(x));
  } while (x != start);
  return link;
}

namespace {

std::vector<int> face_sizes_around(const CombMap& m, int vertex) {
  std::vector<int> sizes;
  int start = m.vertex_flag(vertex);
  int x = start;
  do {
    sizes.push_back(m.face_size(m.face_of(x)));
    x = m.s2(m.s1(x));
  } while (x != start);
  return sizes;
}

}  // namespace

std::vector<int> face_cycle_type(const CombMap& m, int v) {
  return face_sizes_around(m, m.vertex_with_label(v));
}

std::optional<VertexType> semi_equivelar_type(const CombMap& m) {
  std::optional<VertexType> type;
  for (int v = 0; v < m.f0(); ++v) {
    std::vector<int> sizes = face_sizes_around(m, v);
    if (sizes.size() < 3) return std::nullopt;
    if (!type) {
      type = VertexType::from_cycle(sizes);
    } else if (!type->matches(sizes)) {
      return std::nullopt;
    }
  }
  return type;
}

}  // namespace semeq
