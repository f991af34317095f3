#include "semeq/symmetry.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

namespace semeq {

std::string CanonicalCode::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t w : words) {
    for (int b = 0; b < 4; ++b) {
      h ^= (w >> (8 * b)) & 0xFFu;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Breadth-first numbering of the flags from one start flag, compared word by
// word against the best code so far.
class Traversal {
 public:
  explicit Traversal(const CombMap& m)
      : m_(m),
        flags_(m.flag_count()),
        number_(static_cast<std::size_t>(flags_), -1),
        order_(static_cast<std::size_t>(flags_)) {}

  // Runs from `start`. With `best` non-empty, returns -1/0/+1 as the code is
  // less/equal/greater and stops at the first greater word. `out` receives
  // the code when the result is -1 (or always, when best is empty).
  int run(int start, const std::vector<std::uint32_t>& best,
          std::vector<std::uint32_t>& out) {
    std::fill(number_.begin(), number_.end(), -1);
    out.resize(static_cast<std::size_t>(3 * flags_ + 1));
    out[0] = static_cast<std::uint32_t>(flags_);
    bool compare = !best.empty();
    int state = compare ? 0 : -1;
    number_[start] = 0;
    order_[0] = start;
    int next = 1;
    std::size_t pos = 1;
    for (int i = 0; i < flags_; ++i) {
      int x = order_[i];
      for (int k = 0; k < 3; ++k) {
        int y = k == 0 ? m_.s0(x) : (k == 1 ? m_.s1(x) : m_.s2(x));
        if (number_[y] == -1) {
          number_[y] = next;
          order_[next++] = y;
        }
        auto w = static_cast<std::uint32_t>(number_[y]);
        if (state == 0) {
          if (w > best[pos]) return 1;
          if (w < best[pos]) state = -1;
        }
        out[pos++] = w;
      }
    }
    return state;
  }

  const std::vector<int>& order() const { return order_; }
  const std::vector<int>& number() const { return number_; }

 private:
  const CombMap& m_;
  int flags_;
  std::vector<int> number_;
  std::vector<int> order_;
};

struct CanonicalRun {
  CanonicalCode code;
  std::vector<int> best_starts;
  std::vector<int> order;  // canonical flag order from best_starts[0]
};

CanonicalRun canonical_run(const CombMap& m) {
  CanonicalRun result;
  Traversal t(m);
  std::vector<std::uint32_t> scratch;
  for (int start = 0; start < m.flag_count(); ++start) {
    int cmp = t.run(start, result.code.words, scratch);
    if (cmp < 0) {
      result.code.words.swap(scratch);
      result.best_starts.assign(1, start);
      result.order = t.order();
    } else if (cmp == 0) {
      result.best_starts.push_back(start);
    }
  }
  return result;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  // (a o b)(x) = a(b(x))
  Permutation out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

Permutation identity(std::size_t size) {
  Permutation p(size);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
  return out;
}

int max_label(const CombMap& m) {
  return *std::max_element(m.vertex_labels().begin(), m.vertex_labels().end());
}

Permutation project_to_vertices(const CombMap& m, const Permutation& flag_perm) {
  Permutation out = identity(static_cast<std::size_t>(max_label(m)) + 1);
  for (int v = 0; v < m.f0(); ++v) {
    int image = m.vertex_of(flag_perm[static_cast<std::size_t>(m.vertex_flag(v))]);
    out[static_cast<std::size_t>(m.label_of_vertex(v))] = m.label_of_vertex(image);
  }
  return out;
}

std::set<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> group{identity(degree)};
  std::vector<Permutation> frontier{identity(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& g : frontier) {
      for (const Permutation& s : gens) {
        Permutation h = compose(s, g);
        if (group.insert(h).second) next.push_back(std::move(h));
      }
    }
    frontier.swap(next);
  }
  return group;
}

int element_order(const Permutation& p) {
  Permutation power = p;
  const Permutation id = identity(p.size());
  int k = 1;
  while (power != id) {
    power = compose(p, power);
    ++k;
  }
  return k;
}

}  // namespace

CanonicalCode canonical_code(const CombMap& m) { return canonical_run(m).code; }

FaceListMap canonical_form(const CombMap& m) {
  CanonicalRun run = canonical_run(m);
  std::vector<int> relabel_of_vertex(static_cast<std::size_t>(m.f0()), 0);
  int next = 1;
  for (int x : run.order) {
    int& label = relabel_of_vertex[static_cast<std::size_t>(m.vertex_of(x))];
    if (label == 0) label = next++;
  }
  FaceListMap original = to_face_list(m);
  std::vector<int> perm(static_cast<std::size_t>(original.vertex_count) + 1, 0);
  for (int v = 0; v < m.f0(); ++v) {
    perm[static_cast<std::size_t>(m.label_of_vertex(v))] = relabel_of_vertex[static_cast<std::size_t>(v)];
  }
  FaceListMap out = relabel(original, perm);
  out.vertex_count = m.f0();
  return out;
}

std::optional<std::vector<int>> isomorphic(const CombMap& m1, const CombMap& m2) {
  if (m1.flag_count() != m2.flag_count() || m1.f0() != m2.f0()) return std::nullopt;
  CanonicalRun a = canonical_run(m1);
  CanonicalRun b = canonical_run(m2);
  if (a.code != b.code) return std::nullopt;
  std::vector<int> map(static_cast<std::size_t>(max_label(m1)) + 1, 0);
  for (std::size_t i = 0; i < a.order.size(); ++i) {
    int v1 = m1.vertex_of(a.order[i]);
    int v2 = m2.vertex_of(b.order[i]);
    map[static_cast<std::size_t>(m1.label_of_vertex(v1))] = m2.label_of_vertex(v2);
  }
  return map;
}

PermGroup automorphism_group(const CombMap& m) {
  CanonicalRun run = canonical_run(m);
  const auto flags = static_cast<std::size_t>(m.flag_count());
  PermGroup group;
  group.degree = m.flag_count();

  Traversal t(m);
  std::vector<std::uint32_t> scratch;
  for (int start : run.best_starts) {
    t.run(start, {}, scratch);
    Permutation phi(flags);
    for (std::size_t i = 0; i < flags; ++i) {
      phi[static_cast<std::size_t>(run.order[i])] = t.order()[i];
    }
    group.elements.push_back(std::move(phi));
  }
  std::sort(group.elements.begin(), group.elements.end());
  group.order = static_cast<std::int64_t>(group.elements.size());

  // Greedy generating set: add any element outside the subgroup so far.
  std::set<Permutation> generated{identity(flags)};
  for (const Permutation& g : group.elements) {
    if (generated.count(g)) continue;
    group.generators.push_back(g);
    generated = closure(group.generators, flags);
  }

  std::set<Permutation> vertex_images;
  for (const Permutation& g : group.elements) {
    group.vertex_elements.push_back(project_to_vertices(m, g));
    vertex_images.insert(group.vertex_elements.back());
  }
  for (const Permutation& g : group.generators) {
    group.vertex_action.push_back(project_to_vertices(m, g));
  }
  group.vertex_action_faithful = vertex_images.size() == group.elements.size();
  group.structure = recognize_group(group).label;
  return group;
}

GroupStructure recognize_group(const PermGroup& group) {
  GroupStructure s;
  s.order = group.order;
  const std::int64_t order = group.order;
  if (order == 1) {
    s.kind = GroupKind::trivial;
    s.label = "trivial";
    return s;
  }
  if (order > 16 || group.elements.empty()) {
    s.label = "unrecognized(" + std::to_string(order) + ")";
    return s;
  }
  const std::size_t degree = group.elements.front().size();
  const Permutation id = identity(degree);
  std::vector<int> orders;
  for (const Permutation& g : group.elements) orders.push_back(element_order(g));

  for (std::size_t k = 0; k < group.elements.size(); ++k) {
    if (orders[k] == order) {
      s.kind = GroupKind::cyclic;
      s.n = static_cast<int>(order);
      s.label = "Z_" + std::to_string(order);
      return s;
    }
  }

  if (order % 2 == 0) {
    const int n = static_cast<int>(order / 2);
    for (std::size_t k = 0; k < group.elements.size(); ++k) {
      if (orders[k] != n) continue;
      const Permutation& r = group.elements[k];
      std::set<Permutation> rotations = closure({r}, degree);
      Permutation r_inv = inverse(r);
      for (std::size_t j = 0; j < group.elements.size(); ++j) {
        const Permutation& f = group.elements[j];
        if (orders[j] != 2 || rotations.count(f)) continue;
        // f r f^-1 = r^-1 with f an involution.
        if (compose(f, compose(r, f)) == r_inv) {
          s.kind = GroupKind::dihedral;
          s.n = n;
          s.label = "D_" + std::to_string(n);
          if (n == 2) s.label += " (Klein four)";
          return s;
        }
      }
    }
  }

  bool elementary = std::all_of(orders.begin(), orders.end(), [](int o) { return o <= 2; });
  if (elementary) {
    int rank = 0;
    for (std::int64_t o = order; o > 1; o /= 2) ++rank;
    s.kind = GroupKind::elementary_abelian;
    s.n = rank;
    s.label = "Z2^" + std::to_string(rank);
    return s;
  }
  s.label = "unrecognized(" + std::to_string(order) + ")";
  return s;
}

std::vector<std::vector<int>> vertex_orbits(const CombMap& m, const PermGroup& group) {
  const int top = max_label(m);
  std::vector<int> parent(static_cast<std::size_t>(top) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Permutation& p : group.vertex_action) {
    for (int v = 0; v < m.f0(); ++v) {
      int a = find(m.label_of_vertex(v));
      int b = find(p[static_cast<std::size_t>(m.label_of_vertex(v))]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < m.f0(); ++v) {
    int label = m.label_of_vertex(v);
    by_root[find(label)].push_back(label);
  }
  std::vector<std::vector<int>> out;
  for (auto& [root, orbit] : by_root) {
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> vertex_orbits(const CombMap& m) {
  return vertex_orbits(m, automorphism_group(m));
}

bool is_vertex_transitive(const CombMap& m) { return vertex_orbits(m).size() == 1; }

std::vector<int> GiGraph::degree_multiset() const {
  std::vector<int> out = degrees;
  std::sort(out.begin(), out.end());
  return out;
}

bool GiGraph::degree_regular() const {
  return std::adjacent_find(degrees.begin(), degrees.end(), std::not_equal_to<>()) ==
         degrees.end();
}

GiGraph gi_graph(const CombMap& m, int i) {
  GiGraph g;
  g.i = i;
  std::vector<std::pair<int, std::vector<int>>> neighbourhoods;
  for (int v = 0; v < m.f0(); ++v) {
    int label = m.label_of_vertex(v);
    std::vector<int> n = link_cycle(m, label).boundary;
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
    neighbourhoods.emplace_back(label, std::move(n));
  }
  std::sort(neighbourhoods.begin(), neighbourhoods.end());
  for (const auto& [label, n] : neighbourhoods) g.vertices.push_back(label);
  g.degrees.assign(g.vertices.size(), 0);
  std::vector<int> common;
  for (std::size_t a = 0; a < neighbourhoods.size(); ++a) {
    for (std::size_t b = a + 1; b < neighbourhoods.size(); ++b) {
      common.clear();
      const auto& na = neighbourhoods[a].second;
      const auto& nb = neighbourhoods[b].second;
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) == i) {
        g.edges.emplace_back(neighbourhoods[a].first, neighbourhoods[b].first);
        ++g.degrees[a];
        ++g.degrees[b];
      }
    }
  }
  return g;
}

}  // namespace semeq
