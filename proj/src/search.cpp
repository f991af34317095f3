#include "search.hpp"

#include <algorithm>

namespace semeq::detail {

const char* prune_name(int reason) {
  switch (reason) {
    case kPruneRepeat: return "repeat";
    case kPruneClosed: return "closed";
    case kPruneLabels: return "labels";
    case kPruneEdgeUse: return "edge-use";
    case kPruneDegree: return "degree";
    case kPruneFan: return "fan";
    case kPruneIntersection: return "intersection";
    case kPruneFaceBudget: return "face-budget";
    case kPruneDeadEnd: return "dead-end";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------- FanTable

namespace {

int nibbles(std::uint64_t code) {
  int k = 0;
  while (code != 0) {
    code >>= 4;
    ++k;
  }
  return k;
}

}  // namespace

std::uint64_t FanTable::path_code(const int* symbols, int length) {
  std::uint64_t fwd = 0;
  std::uint64_t rev = 0;
  for (int i = 0; i < length; ++i) {
    fwd = (fwd << 4) | static_cast<std::uint64_t>(symbols[i] + 1);
    rev = (rev << 4) | static_cast<std::uint64_t>(symbols[length - 1 - i] + 1);
  }
  return std::min(fwd, rev);
}

std::uint64_t FanTable::collection_code(std::vector<std::uint64_t>& paths) {
  std::sort(paths.begin(), paths.end());
  std::uint64_t code = 0;
  bool first = true;
  for (std::uint64_t p : paths) {
    if (!first) code = (code << 4) | 0xF;
    first = false;
    code = (code << (4 * nibbles(p))) | p;
  }
  return code;
}

FanTable::FanTable(const VertexType& type) : type_(type), cycle_(type.cycle()) {
  const int d = degree();
  if (d > kMaxDegree) throw std::invalid_argument("vertex degree above 8 is not supported");
  for (int p : cycle_) {
    if (std::find(sizes_.begin(), sizes_.end(), p) == sizes_.end()) sizes_.push_back(p);
  }
  std::sort(sizes_.begin(), sizes_.end());
  symbol_of_.assign(static_cast<std::size_t>(sizes_.back() + 1), -1);
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    symbol_of_[static_cast<std::size_t>(sizes_[i])] = static_cast<int>(i);
  }

  std::vector<int> sym(cycle_.size());
  for (int i = 0; i < d; ++i) sym[static_cast<std::size_t>(i)] = symbol(cycle_[static_cast<std::size_t>(i)]);

  for (unsigned missing = 1; missing < (1u << d); ++missing) {
    int start = 0;
    while (!(missing & (1u << start))) ++start;
    std::vector<std::uint64_t> paths;
    std::array<int, kMaxDegree> run{};
    int len = 0;
    for (int step = 1; step <= d; ++step) {
      const int i = (start + step) % d;
      if (missing & (1u << i)) {
        if (len > 0) paths.push_back(path_code(run.data(), len));
        len = 0;
      } else {
        run[static_cast<std::size_t>(len++)] = sym[static_cast<std::size_t>(i)];
      }
    }
    open_.insert(collection_code(paths));
  }
}

// ------------------------------------------------------------------ Search

Search::Search(const FanTable& fans, int n, const EnumerationOptions& opts,
               SearchControl control)
    : fans_(fans), n_(n), d_(fans.degree()), opts_(opts), control_(std::move(control)),
      stride_(n + 2) {
  edge_use_.assign(static_cast<std::size_t>(stride_ * stride_), 0);
  degree_.assign(static_cast<std::size_t>(stride_), 0);
  corners_.resize(static_cast<std::size_t>(stride_));
  corner_count_.assign(static_cast<std::size_t>(stride_), 0);
  closed_.assign(static_cast<std::size_t>(stride_), 0);
  vfaces_.resize(static_cast<std::size_t>(stride_));

  int max_size = fans_.sizes().back();
  budget_.assign(static_cast<std::size_t>(max_size + 1), 0);
  fill_order_.resize(static_cast<std::size_t>(max_size + 1));
  int total_faces = 0;
  if (auto counts = face_counts(fans_.type(), n)) {
    for (auto [q, x] : *counts) {
      budget_[static_cast<std::size_t>(q)] = static_cast<int>(x);
      total_faces += static_cast<int>(x);
    }
  }
  placements_.resize(static_cast<std::size_t>(total_faces + 1));

  for (int q : fans_.sizes()) {
    // Positions 2, q-1, 3, q-2, ...: every step touches an already known vertex.
    auto& order = fill_order_[static_cast<std::size_t>(q)];
    int lo = 2;
    int hi = q - 1;
    bool low_side = true;
    while (lo <= hi) {
      order.push_back(low_side ? lo++ : hi--);
      low_side = !low_side;
    }
  }
  if (opts_.shuffle_seed) seed(*opts_.shuffle_seed);
}

void Search::begin_face(int size) {
  Placement& p = placements_[static_cast<std::size_t>(face_count_)];
  p.size = size;
  p.at.assign(static_cast<std::size_t>(size), 0);
  p.corner_done.assign(static_cast<std::size_t>(size), 0);
}

bool Search::add_edge(int a, int b) {
  int& ab = use(a, b);
  if (ab >= 2) {
    ++prunes_[kPruneEdgeUse];
    return false;
  }
  if (ab == 0) {
    if (degree_[static_cast<std::size_t>(a)] >= d_ || degree_[static_cast<std::size_t>(b)] >= d_) {
      ++prunes_[kPruneDegree];
      return false;
    }
    ++degree_[static_cast<std::size_t>(a)];
    ++degree_[static_cast<std::size_t>(b)];
    log_.push_back({Op::new_edge, a, b, 0});
  } else {
    log_.push_back({Op::edge, a, b, 0});
  }
  ++ab;
  ++use(b, a);
  return true;
}

bool Search::check_intersections(int pos, int u) {
  const Placement& cur = placements_[static_cast<std::size_t>(face_count_)];
  const int size = cur.size;
  auto in_face = [&](int w, int f) {
    const auto& fs = vfaces_[static_cast<std::size_t>(w)];
    return std::find(fs.begin(), fs.end(), f) != fs.end();
  };
  for (int f : vfaces_[static_cast<std::size_t>(u)]) {
    int common = 0;
    int other = -1;
    for (int p = 0; p < size; ++p) {
      const int w = cur.at[static_cast<std::size_t>(p)];
      if (w == 0 || p == pos) continue;
      if (in_face(w, f)) {
        ++common;
        other = p;
      }
    }
    if (common == 0) continue;
    if (common >= 2) return false;
    const int gap = (other - pos + size) % size;
    if (gap != 1 && gap != size - 1) return false;
    const Placement& g = placements_[static_cast<std::size_t>(f)];
    const int w = cur.at[static_cast<std::size_t>(other)];
    const auto iu = std::find(g.at.begin(), g.at.end(), u) - g.at.begin();
    const auto iw = std::find(g.at.begin(), g.at.end(), w) - g.at.begin();
    const int ggap = static_cast<int>((iw - iu + g.size) % g.size);
    if (ggap != 1 && ggap != g.size - 1) return false;
  }
  return true;
}

bool Search::add_corner(int pos) {
  Placement& cur = placements_[static_cast<std::size_t>(face_count_)];
  const int size = cur.size;
  const int x = cur.at[static_cast<std::size_t>(pos)];
  const int a = cur.at[static_cast<std::size_t>((pos + size - 1) % size)];
  const int b = cur.at[static_cast<std::size_t>((pos + 1) % size)];
  if (x == 0 || a == 0 || b == 0 || cur.corner_done[static_cast<std::size_t>(pos)]) return true;
  int& k = corner_count_[static_cast<std::size_t>(x)];
  if (k >= d_) {
    ++prunes_[kPruneFan];
    return false;
  }
  corners_[static_cast<std::size_t>(x)][static_cast<std::size_t>(k)] = {a, b, size, face_count_};
  ++k;
  cur.corner_done[static_cast<std::size_t>(pos)] = 1;
  FanStatus status = fan_status(x, nullptr);
  const bool closes = status == FanStatus::closed;
  if (closes) closed_[static_cast<std::size_t>(x)] = 1;
  log_.push_back({Op::corner, x, pos, closes ? 1 : 0});
  if (status == FanStatus::invalid) {
    ++prunes_[kPruneFan];
    return false;
  }
  return true;
}

bool Search::place(int pos, int u) {
  Placement& cur = placements_[static_cast<std::size_t>(face_count_)];
  const int size = cur.size;
  if (std::find(cur.at.begin(), cur.at.end(), u) != cur.at.end()) {
    ++prunes_[kPruneRepeat];
    return false;
  }
  if (u == next_label_) {
    if (u > n_) {
      ++prunes_[kPruneLabels];
      return false;
    }
    ++next_label_;
    log_.push_back({Op::fresh, 0, 0, 0});
  } else if (u > next_label_ || closed_[static_cast<std::size_t>(u)]) {
    ++prunes_[kPruneClosed];
    return false;
  }
  if (opts_.polyhedral.face_intersections && !check_intersections(pos, u)) {
    ++prunes_[kPruneIntersection];
    return false;
  }
  cur.at[static_cast<std::size_t>(pos)] = u;
  vfaces_[static_cast<std::size_t>(u)].push_back(face_count_);
  log_.push_back({Op::set_pos, u, pos, 0});

  const int prev = cur.at[static_cast<std::size_t>((pos + size - 1) % size)];
  const int next = cur.at[static_cast<std::size_t>((pos + 1) % size)];
  if (prev != 0 && !add_edge(prev, u)) return false;
  if (next != 0 && next != prev && !add_edge(u, next)) return false;

  return add_corner((pos + size - 1) % size) && add_corner(pos) && add_corner((pos + 1) % size);
}

void Search::commit() {
  ++face_count_;
  log_.push_back({Op::commit, 0, 0, 0});
}

void Search::undo_to(std::size_t mark) {
  while (log_.size() > mark) {
    const Record r = log_.back();
    log_.pop_back();
    switch (r.op) {
      case Op::set_pos:
        placements_[static_cast<std::size_t>(face_count_)].at[static_cast<std::size_t>(r.b)] = 0;
        vfaces_[static_cast<std::size_t>(r.a)].pop_back();
        break;
      case Op::new_edge:
        --degree_[static_cast<std::size_t>(r.a)];
        --degree_[static_cast<std::size_t>(r.b)];
        [[fallthrough]];
      case Op::edge:
        --use(r.a, r.b);
        --use(r.b, r.a);
        break;
      case Op::corner:
        --corner_count_[static_cast<std::size_t>(r.a)];
        if (r.c) closed_[static_cast<std::size_t>(r.a)] = 0;
        placements_[static_cast<std::size_t>(face_count_)].corner_done[static_cast<std::size_t>(r.b)] =
            0;
        break;
      case Op::fresh:
        --next_label_;
        break;
      case Op::commit:
        --face_count_;
        break;
    }
  }
}

Search::FanStatus Search::fan_status(int x, const Corner* extra) const {
  std::array<Corner, kMaxDegree + 1> c{};
  int k = corner_count_[static_cast<std::size_t>(x)];
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = corners_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)];
  if (extra != nullptr) c[static_cast<std::size_t>(k++)] = *extra;
  if (k > d_) return FanStatus::invalid;

  // link[2i + s]: the corner sharing endpoint s (0 = a, 1 = b) of corner i.
  std::array<int, 2 * (kMaxDegree + 1)> link{};
  for (int i = 0; i < k; ++i) {
    for (int s = 0; s < 2; ++s) {
      const int y = s == 0 ? c[static_cast<std::size_t>(i)].a : c[static_cast<std::size_t>(i)].b;
      int partner = -1;
      for (int j = 0; j < k && y >= 0; ++j) {
        if (j != i && (c[static_cast<std::size_t>(j)].a == y || c[static_cast<std::size_t>(j)].b == y)) {
          partner = j;
          break;
        }
      }
      link[static_cast<std::size_t>(2 * i + s)] = partner;
    }
  }

  std::array<char, kMaxDegree + 1> seen{};
  std::array<int, kMaxDegree + 1> sym{};
  std::vector<std::uint64_t> paths;
  auto step = [&](int cur, int prev) {
    const int l0 = link[static_cast<std::size_t>(2 * cur)];
    const int l1 = link[static_cast<std::size_t>(2 * cur + 1)];
    return l0 == prev ? l1 : l0;
  };
  int visited = 0;
  for (int i = 0; i < k; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    const int l0 = link[static_cast<std::size_t>(2 * i)];
    const int l1 = link[static_cast<std::size_t>(2 * i + 1)];
    if (l0 != -1 && l1 != -1) continue;
    int len = 0;
    int prev = -1;
    int cur = i;
    while (cur != -1 && !seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      sym[static_cast<std::size_t>(len++)] = fans_.symbol(c[static_cast<std::size_t>(cur)].size);
      const int nxt = prev == -1 ? (l0 == -1 ? l1 : l0) : step(cur, prev);
      prev = cur;
      cur = nxt;
    }
    visited += len;
    paths.push_back(FanTable::path_code(sym.data(), len));
  }

  if (visited < k) {
    // Some corners close up into a cycle, which must be the whole fan.
    if (visited > 0 || k != d_) return FanStatus::invalid;
    std::array<int, kMaxDegree + 1> sizes{};
    int len = 0;
    int prev = -1;
    int cur = 0;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      sizes[static_cast<std::size_t>(len++)] = c[static_cast<std::size_t>(cur)].size;
      const int nxt = prev == -1 ? link[0] : step(cur, prev);
      prev = cur;
      cur = nxt;
    }
    if (len != k) return FanStatus::invalid;
    return fans_.closed_ok(std::span<const int>(sizes.data(), static_cast<std::size_t>(len)))
               ? FanStatus::closed
               : FanStatus::invalid;
  }
  return fans_.open_ok(FanTable::collection_code(paths)) ? FanStatus::open : FanStatus::invalid;
}

bool Search::accepts_corner(int x, int a, int size) const {
  // The far neighbour b of the new corner is unknown: it is either a new
  // neighbour of x or closes onto the free end of one of x's paths.
  const int k = corner_count_[static_cast<std::size_t>(x)];
  const auto& cs = corners_[static_cast<std::size_t>(x)];
  auto occurrences = [&](int y) {
    int c = 0;
    for (int i = 0; i < k; ++i) c += (cs[static_cast<std::size_t>(i)].a == y) + (cs[static_cast<std::size_t>(i)].b == y);
    return c;
  };
  Corner extra{a, -1, size, -1};
  if (fan_status(x, &extra) != FanStatus::invalid) return true;
  for (int i = 0; i < k; ++i) {
    for (int y : {cs[static_cast<std::size_t>(i)].a, cs[static_cast<std::size_t>(i)].b}) {
      if (y == a || occurrences(y) != 1) continue;
      extra.b = y;
      if (fan_status(x, &extra) != FanStatus::invalid) return true;
    }
  }
  return false;
}

bool Search::place_root() {
  const auto& cycle = fans_.type().cycle();
  if (closed_star_size(fans_.type()) > n_) return false;
  // Face i is [1, u_i, interior..., u_{i+1}] with u_0 = 2; labels are handed
  // out in boundary order and the last face closes back onto 2.
  int boundary = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int q = cycle[i];
    if (budget_[static_cast<std::size_t>(q)] == 0) return false;
    --budget_[static_cast<std::size_t>(q)];
    begin_face(q);
    if (!place(0, 1)) return false;
    if (!place(1, i == 0 ? next_label_ : boundary)) return false;
    for (int pos = 2; pos < q - 1; ++pos) {
      if (!place(pos, next_label_)) return false;
    }
    boundary = i + 1 == cycle.size() ? 2 : next_label_;
    if (!place(q - 1, boundary)) return false;
    commit();
  }
  root_faces_ = face_count_;
  log_.clear();
  return true;
}

bool Search::replay(const std::vector<Face>& faces) {
  for (const Face& face : faces) {
    const int q = static_cast<int>(face.size());
    if (q < 3 || q >= static_cast<int>(budget_.size()) || budget_[static_cast<std::size_t>(q)] == 0) {
      return false;
    }
    --budget_[static_cast<std::size_t>(q)];
    begin_face(q);
    if (!place(0, face[0]) || !place(1, face[1])) return false;
    for (int pos : fill_order_[static_cast<std::size_t>(q)]) {
      if (!place(pos, face[static_cast<std::size_t>(pos)])) return false;
    }
    commit();
  }
  log_.clear();
  return true;
}

bool Search::count_node() {
  ++nodes_;
  if ((control_.abort && control_.abort->load(std::memory_order_relaxed)) ||
      (control_.cancelled && control_.cancelled())) {
    stopped_ = true;
    return false;
  }
  if (control_.node_counter) {
    const std::uint64_t used = control_.node_counter->fetch_add(1, std::memory_order_relaxed) + 1;
    if (control_.node_budget && used > *control_.node_budget) {
      budget_hit_ = true;
      stopped_ = true;
      if (control_.abort) control_.abort->store(true);
      return false;
    }
  }
  return true;
}

void Search::run(SearchSink& sink, int split_depth) {
  split_depth_ = split_depth;
  search(sink);
}

void Search::emit_leaf(SearchSink& sink) {
  ++leaves_;
  FaceListMap map;
  map.vertex_count = n_;
  map.faces.reserve(static_cast<std::size_t>(face_count_));
  for (int f = 0; f < face_count_; ++f) map.faces.push_back(placements_[static_cast<std::size_t>(f)].at);
  if (!sink.on_leaf(map)) stopped_ = true;
}

void Search::search(SearchSink& sink) {
  if (stopped_) return;
  int v = 0;
  for (int x = 1; x < next_label_; ++x) {
    if (!closed_[static_cast<std::size_t>(x)]) {
      v = x;
      break;
    }
  }
  if (v == 0) {
    if (next_label_ - 1 == n_) {
      emit_leaf(sink);
    } else {
      ++prunes_[kPruneDeadEnd];
    }
    return;
  }
  if (split_depth_ >= 0 && face_count_ - root_faces_ == split_depth_) {
    std::vector<Face> extra;
    for (int f = root_faces_; f < face_count_; ++f) extra.push_back(placements_[static_cast<std::size_t>(f)].at);
    sink.on_frontier(std::move(extra));
    return;
  }
  int w = 0;
  for (int y = 1; y < next_label_; ++y) {
    if (use(v, y) == 1) {
      w = y;
      break;
    }
  }
  if (w == 0) {
    ++prunes_[kPruneFan];
    return;
  }

  for (int q : fans_.sizes()) {
    if (stopped_) return;
    int& left = budget_[static_cast<std::size_t>(q)];
    if (left == 0) {
      ++prunes_[kPruneFaceBudget];
      continue;
    }
    // Cheap look-ahead: both fans must accept a q-gon beyond the edge vw.
    if (!accepts_corner(v, w, q) || !accepts_corner(w, v, q)) {
      ++prunes_[kPruneFan];
      continue;
    }
    --left;
    begin_face(q);
    const std::size_t mark = log_.size();
    if (place(0, v) && place(1, w)) fill(sink, 0);
    undo_to(mark);
    ++left;
  }
}

void Search::fill(SearchSink& sink, std::size_t step) {
  if (stopped_) return;
  const Placement& cur = placements_[static_cast<std::size_t>(face_count_)];
  const int q = cur.size;
  const auto& order = fill_order_[static_cast<std::size_t>(q)];
  if (step == order.size()) {
    const std::size_t mark = log_.size();
    commit();
    if (count_node()) search(sink);
    undo_to(mark);
    return;
  }
  const int pos = order[step];
  const int prev = cur.at[static_cast<std::size_t>((pos + q - 1) % q)];
  const int next = cur.at[static_cast<std::size_t>((pos + 1) % q)];

  // A saturated neighbour only accepts a vertex it is already joined to.
  int saturated[2];
  int ns = 0;
  for (int nb : {prev, next}) {
    if (nb != 0 && degree_[static_cast<std::size_t>(nb)] >= d_) saturated[ns++] = nb;
  }
  std::vector<int> candidates;
  for (int u = 1; u < next_label_; ++u) {
    if (closed_[static_cast<std::size_t>(u)]) continue;
    bool ok = true;
    for (int s = 0; s < ns; ++s) ok = ok && use(saturated[s], u) == 1;
    if (ok) candidates.push_back(u);
  }
  if (ns == 0 && next_label_ <= n_) candidates.push_back(next_label_);
  if (shuffle_) std::shuffle(candidates.begin(), candidates.end(), rng_);

  for (int u : candidates) {
    if (stopped_) return;
    const std::size_t mark = log_.size();
    if (place(pos, u)) fill(sink, step + 1);
    undo_to(mark);
  }
}

}  // namespace semeq::detail
