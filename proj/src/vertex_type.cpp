#include "semeq/vertex_type.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/rational.hpp>

#include "semeq/error.hpp"

namespace semeq {

using Rational = boost::rational<std::int64_t>;

std::vector<int> normalize_cycle(std::span<const int> raw) {
  const std::size_t d = raw.size();
  std::vector<int> best(raw.begin(), raw.end());
  std::vector<int> candidate(d);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t start = 0; start < d; ++start) {
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t idx = dir == 0 ? (start + k) % d : (start + d - k) % d;
        candidate[k] = raw[idx];
      }
      if (candidate < best) best = candidate;
    }
  }
  return best;
}

VertexType VertexType::from_cycle(std::span<const int> raw) {
  if (raw.size() < 3) {
    throw DegreeTooSmall("a vertex needs at least 3 incident faces, got " +
                         std::to_string(raw.size()));
  }
  for (int p : raw) {
    if (p < 3) throw SizeTooSmall("face size " + std::to_string(p) + " < 3");
  }
  VertexType t;
  t.cycle_ = normalize_cycle(raw);
  return t;
}

std::vector<Run> VertexType::runs() const {
  std::vector<Run> out;
  const std::size_t d = cycle_.size();
  if (d == 0) return out;
  // Start right after a boundary so that no run wraps around.
  std::size_t start = 0;
  while (start < d && cycle_[start] == cycle_[(start + d - 1) % d]) ++start;
  if (start == d) return {Run{cycle_[0], static_cast<int>(d)}};
  for (std::size_t k = 0; k < d; ++k) {
    int p = cycle_[(start + k) % d];
    if (!out.empty() && out.back().size == p) {
      ++out.back().count;
    } else {
      out.push_back(Run{p, 1});
    }
  }
  return out;
}

std::map<int, int> VertexType::collapsed() const {
  std::map<int, int> out;
  for (int p : cycle_) ++out[p];
  return out;
}

std::string VertexType::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const Run& r : runs()) {
    if (!first) os << ',';
    first = false;
    os << r.size << '^' << r.count;
  }
  os << ']';
  return os.str();
}

bool VertexType::matches(std::span<const int> raw) const {
  return raw.size() == cycle_.size() && normalize_cycle(raw) == cycle_;
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  std::vector<int> parse() {
    if (text_.empty()) fail("empty type");
    bool bracketed = text_.front() == '[';
    if (bracketed) {
      if (text_.back() != ']') fail("missing closing ']'");
      pos_ = 1;
      end_ = text_.size() - 1;
    } else {
      end_ = text_.size();
    }
    std::vector<int> cycle;
    while (true) {
      int size = integer();
      int count = 1;
      if (pos_ < end_ && text_[pos_] == '^') {
        if (!bracketed) fail("exponents need the bracket notation");
        ++pos_;
        count = integer();
        if (count < 1) fail("exponent must be positive");
      }
      if (count > 64) fail("exponent too large");
      cycle.insert(cycle.end(), static_cast<std::size_t>(count), size);
      if (pos_ == end_) break;
      if (text_[pos_] != ',') fail("expected ','");
      ++pos_;
    }
    return cycle;
  }

 private:
  int integer() {
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + end_, value);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " in '" + text_ + "' at offset " +
                      std::to_string(pos_));
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

bool rule_i(const std::vector<Run>& runs, const std::map<int, int>& run_hits) {
  return std::any_of(runs.begin(), runs.end(), [&](const Run& r) {
    return r.count == 2 && r.size % 2 == 1 && run_hits.at(r.size) == 1;
  });
}

bool rule_ii(const std::vector<Run>& runs, const std::map<int, int>& run_hits) {
  const std::size_t k = runs.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Run& r = runs[i];
    if (r.count != 1 || r.size % 2 == 0 || run_hits.at(r.size) != 1) continue;
    if (runs[(i + k - 1) % k].size != runs[(i + 1) % k].size) return true;
  }
  return false;
}

bool rule_iii(const std::vector<Run>& runs) {
  if (runs.size() != 4) return false;
  // [p^1, q^m, p^1, r^n]; the reflection has the same shape, so the two
  // offsets that put a candidate p first cover every rotation.
  for (std::size_t off = 0; off < 2; ++off) {
    const Run& a = runs[off];
    const Run& q = runs[(off + 1) % 4];
    const Run& b = runs[(off + 2) % 4];
    const Run& r = runs[(off + 3) % 4];
    if (a.count != 1 || b.count != 1 || a.size != b.size) continue;
    int p = a.size;
    if (p % 2 == 1 && p != q.size && p != r.size && q.size != r.size) return true;
  }
  return false;
}

}  // namespace

VertexType parse_type(std::string_view text) {
  TypeParser parser(text);
  std::vector<int> cycle = parser.parse();
  return VertexType::from_cycle(cycle);
}

std::string_view to_string(DattaMaityRule rule) {
  switch (rule) {
    case DattaMaityRule::none: return "none";
    case DattaMaityRule::i: return "i";
    case DattaMaityRule::ii: return "ii";
    case DattaMaityRule::iii: return "iii";
  }
  return "?";
}

DattaMaityVerdict datta_maity_admissible(const VertexType& type) {
  // The rules are phrased on the run structure, which is invariant under the
  // rotation and reflection that relate equivalent readings of the type.
  std::vector<Run> runs = type.runs();
  std::map<int, int> run_hits;
  for (const Run& r : runs) ++run_hits[r.size];
  if (rule_i(runs, run_hits)) return {false, DattaMaityRule::i};
  if (rule_ii(runs, run_hits)) return {false, DattaMaityRule::ii};
  std::vector<Run> reflected(runs.rbegin(), runs.rend());
  if (rule_iii(runs) || rule_iii(reflected)) return {false, DattaMaityRule::iii};
  return {};
}

namespace {

// 1 - d/2 + sum 1/p_j, the per-vertex share of the Euler characteristic.
Rational curvature(std::span<const int> cycle) {
  Rational sum(1);
  sum -= Rational(static_cast<std::int64_t>(cycle.size()), 2);
  for (int p : cycle) sum += Rational(1, p);
  return sum;
}

}  // namespace

std::optional<std::int64_t> vertex_count_for(const VertexType& type, int chi) {
  Rational k = curvature(type.cycle());
  if (k.numerator() == 0) return std::nullopt;
  Rational n = Rational(chi) / k;
  if (n.denominator() != 1 || n.numerator() <= 0) return std::nullopt;
  return n.numerator();
}

std::optional<std::map<int, std::int64_t>> face_counts(const VertexType& type,
                                                       std::int64_t n) {
  std::map<int, std::int64_t> out;
  for (auto [q, m] : type.collapsed()) {
    std::int64_t total = n * m;
    if (total % q != 0) return std::nullopt;
    out[q] = total / q;
  }
  return out;
}

int closed_star_size(const VertexType& type) {
  int size = 1;
  for (int p : type.cycle()) size += p - 2;
  return size;
}

std::optional<std::int64_t> euler_characteristic_for(const VertexType& type,
                                                     std::int64_t n) {
  auto counts = face_counts(type, n);
  if (!counts) return std::nullopt;
  std::int64_t twice_edges = n * type.degree();
  if (twice_edges % 2 != 0) return std::nullopt;
  std::int64_t faces = 0;
  for (auto [q, x] : *counts) faces += x;
  return n - twice_edges / 2 + faces;
}

std::optional<AdmissiblePair> check_pair(const VertexType& type, std::int64_t n,
                                         const FilterOptions& opts) {
  AdmissiblePair pair;
  pair.n = n;
  pair.type = type;
  pair.filters_passed.euler = true;
  if (n < 1) return std::nullopt;
  if (opts.min_vertices > 0 && n < opts.min_vertices) return std::nullopt;
  pair.filters_passed.min_vertices = opts.min_vertices > 0;
  auto counts = face_counts(type, n);
  if (!counts) return std::nullopt;
  pair.filters_passed.integral_face_counts = true;
  if (opts.min_face_count > 1) {
    for (auto [q, x] : *counts) {
      if (x < opts.min_face_count) return std::nullopt;
    }
    pair.filters_passed.min_face_count = true;
  }
  if (opts.prop1) {
    if (!datta_maity_admissible(type).admissible) return std::nullopt;
    pair.filters_passed.prop1 = true;
  }
  if (opts.closed_star) {
    std::int64_t star = closed_star_size(type);
    // A closed star covering every vertex forces a complete edge graph, which
    // only a vertex of degree n - 1 can have.
    bool fits = star < n || (star == n && type.degree() == n - 1);
    if (!fits) return std::nullopt;
    pair.filters_passed.closed_star = true;
  }
  pair.face_counts = std::move(*counts);
  return pair;
}

namespace {

class AdmissibleSearch {
 public:
  AdmissibleSearch(int chi, int degree, const FilterOptions& opts)
      : chi_(chi), degree_(degree), opts_(opts) {
    // sum 1/p_j over the whole cycle equals d/2 - 1 + chi/n.
    Rational base = Rational(degree, 2) - 1;
    std::int64_t n_min = std::max(1, opts.min_vertices);
    if (chi < 0) {
      lo_ = base + Rational(chi, n_min);
      hi_ = base;
    } else {
      lo_ = base;
      hi_ = base + Rational(chi, n_min);
    }
    cycle_.reserve(static_cast<std::size_t>(degree));
  }

  void run() { extend(Rational(0)); }

  std::set<std::vector<int>>& seen() { return seen_; }
  std::vector<AdmissiblePair>& found() { return found_; }

 private:
  void extend(Rational partial) {
    const int remaining = degree_ - static_cast<int>(cycle_.size());
    if (remaining == 1) {
      close(partial);
      return;
    }
    for (int p = 3; p <= opts_.p_max; ++p) {
      Rational next = partial + Rational(1, p);
      // Later entries add between 1/p_max and 1/3 each.
      if (next + Rational(remaining - 1, opts_.p_max) > hi_) continue;
      if (next + Rational(remaining - 1, 3) < lo_) break;
      cycle_.push_back(p);
      extend(next);
      cycle_.pop_back();
    }
  }

  void close(Rational partial) {
    for (int p = 3; p <= opts_.p_max; ++p) {
      cycle_.push_back(p);
      Rational k = Rational(1) - Rational(degree_, 2) + partial + Rational(1, p);
      bool stop = false;
      if ((chi_ < 0 && k < 0) || (chi_ > 0 && k > 0)) {
        Rational n = Rational(chi_) / k;
        // For chi < 0 the solved n falls as p grows while the closed star
        // grows, so once either bound fails it fails for every larger p.
        if (chi_ < 0) {
          int star = 1;
          for (int s : cycle_) star += s - 2;
          if (opts_.closed_star && Rational(star) > n) stop = true;
          if (n < std::max(1, opts_.min_vertices)) stop = true;
        }
        if (!stop && n.denominator() == 1) consider(n.numerator());
      }
      cycle_.pop_back();
      if (stop) break;
    }
  }

  void consider(std::int64_t n) {
    VertexType type = VertexType::from_cycle(cycle_);
    if (!seen_.insert(type.cycle()).second) return;
    if (auto pair = check_pair(type, n, opts_)) found_.push_back(std::move(*pair));
  }

  int chi_;
  int degree_;
  FilterOptions opts_;
  Rational lo_;
  Rational hi_;
  std::vector<int> cycle_;
  std::set<std::vector<int>> seen_;
  std::vector<AdmissiblePair> found_;
};

}  // namespace

std::vector<AdmissiblePair> admissible_types(int chi, const FilterOptions& opts) {
  if (chi == 0) {
    throw std::invalid_argument(
        "admissible_types: chi = 0 leaves the vertex count undetermined");
  }
  std::vector<AdmissiblePair> out;
  for (int d = 3; d <= 6; ++d) {
    AdmissibleSearch search(chi, d, opts);
    search.run();
    auto& found = search.found();
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  std::sort(out.begin(), out.end(), [](const AdmissiblePair& a, const AdmissiblePair& b) {
    if (a.type.degree() != b.type.degree()) return a.type.degree() < b.type.degree();
    if (a.n != b.n) return a.n < b.n;
    return a.type.cycle() < b.type.cycle();
  });
  return out;
}

}  // namespace semeq
