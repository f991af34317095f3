#include "semeq/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "search.hpp"
#include "semeq/error.hpp"

namespace semeq {

namespace {

using detail::FanTable;
using detail::Search;
using detail::SearchControl;
using detail::SearchSink;

void check_consistency(const VertexType& type, int n, int chi) {
  const std::string what = type.to_string() + " on " + std::to_string(n) + " vertices";
  if (n <= 0) throw InconsistentParameters(what + ": vertex count must be positive");
  if (!face_counts(type, n)) throw InconsistentParameters(what + ": face counts are not integral");
  if ((static_cast<std::int64_t>(n) * type.degree()) % 2 != 0) {
    throw InconsistentParameters(what + ": odd degree sum");
  }
  const auto euler = euler_characteristic_for(type, n);
  if (!euler || *euler != chi) {
    throw InconsistentParameters(what + " has Euler characteristic " +
                                 (euler ? std::to_string(*euler) : std::string("undefined")) +
                                 ", not " + std::to_string(chi));
  }
}

struct Target {
  VertexType type;
  int n = 0;
  int chi = 0;
  PolyhedralOptions polyhedral;
};

// Full check of a completed labeled map; the search prunes most failures
// earlier, this is the last word.
std::optional<CombMap> accept(const FaceListMap& faces, const Target& t) {
  try {
    CombMap m = build_from_faces(faces);
    if (m.f0() != t.n) return std::nullopt;
    if (euler_characteristic(m) != t.chi) return std::nullopt;
    auto type = semi_equivelar_type(m);
    if (!type || *type != t.type) return std::nullopt;
    if (!validate_polyhedral(m, t.polyhedral).ok) return std::nullopt;
    return m;
  } catch (const Error&) {
    return std::nullopt;
  }
}

class CollectSink : public SearchSink {
 public:
  explicit CollectSink(const Target& t, bool stop_at_first = false)
      : target_(t), stop_at_first_(stop_at_first) {}

  bool on_leaf(const FaceListMap& map) override {
    auto m = accept(map, target_);
    if (!m) return true;
    if (!first_) first_ = map;
    maps_.try_emplace(canonical_code(*m), canonical_form(*m));
    return !stop_at_first_;
  }
  void on_frontier(std::vector<Face> extra_faces) override {
    pending_.push_back(std::move(extra_faces));
  }

  std::map<CanonicalCode, FaceListMap>& maps() { return maps_; }
  std::vector<std::vector<Face>>& pending() { return pending_; }
  const std::optional<FaceListMap>& first() const { return first_; }

 private:
  const Target& target_;
  bool stop_at_first_;
  std::map<CanonicalCode, FaceListMap> maps_;
  std::vector<std::vector<Face>> pending_;
  std::optional<FaceListMap> first_;
};

void add_prunes(EnumerationStats& stats, const Search& s) {
  for (int r = 0; r < detail::kPruneCount; ++r) {
    if (s.prunes()[static_cast<std::size_t>(r)] != 0) {
      stats.prunes[detail::prune_name(r)] += s.prunes()[static_cast<std::size_t>(r)];
    }
  }
}

unsigned worker_count(const EnumerationOptions& opts, std::size_t items) {
  unsigned t = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  return static_cast<unsigned>(std::clamp<std::size_t>(items, 1, t));
}

EnumerationOptions subtree_options(const EnumerationOptions& opts, std::size_t index) {
  EnumerationOptions o = opts;
  if (o.shuffle_seed) o.shuffle_seed = *o.shuffle_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  return o;
}

bool same_faces(const FaceListMap& a, const FaceListMap& b) {
  return a.vertex_count == b.vertex_count && a.faces == b.faces;
}

}  // namespace

bool operator==(const SearchFrontier& a, const SearchFrontier& b) {
  return a.type == b.type && a.n == b.n && a.chi == b.chi && a.split_depth == b.split_depth &&
         a.pending == b.pending && a.nodes == b.nodes && a.leaves == b.leaves &&
         std::equal(a.found.begin(), a.found.end(), b.found.begin(), b.found.end(), same_faces);
}

SearchFrontier initial_frontier(const VertexType& type, int n, int chi,
                                const EnumerationOptions& opts) {
  check_consistency(type, n, chi);
  SearchFrontier frontier;
  frontier.type = type;
  frontier.n = n;
  frontier.chi = chi;
  frontier.split_depth = opts.split_depth;
  if (closed_star_size(type) > n) return frontier;

  const Target target{type, n, chi, opts.polyhedral};
  FanTable fans(type);
  Search s(fans, n, opts, SearchControl{});
  if (!s.place_root()) return frontier;
  CollectSink sink(target);
  s.run(sink, opts.split_depth);
  frontier.pending = std::move(sink.pending());
  for (auto& [code, map] : sink.maps()) frontier.found.push_back(std::move(map));
  frontier.nodes = s.nodes();
  frontier.leaves = s.leaves();
  return frontier;
}

EnumerationResult run_frontier(SearchFrontier& frontier, const EnumerationOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const Target target{frontier.type, frontier.n, frontier.chi, opts.polyhedral};
  FanTable fans(frontier.type);

  std::map<CanonicalCode, FaceListMap> merged;
  for (const FaceListMap& f : frontier.found) {
    merged.try_emplace(canonical_code(build_from_faces(f)), f);
  }

  const std::vector<std::vector<Face>> items = frontier.pending;
  std::vector<char> done(items.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> counter{0};
  std::atomic<bool> abort{false};
  std::atomic<bool> bad_item{false};
  std::mutex mu;
  std::condition_variable cv;
  unsigned running = 0;
  EnumerationStats stats;
  std::uint64_t leaves = 0;

  auto snapshot = [&] {
    SearchFrontier s = frontier;
    s.pending.clear();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!done[i]) s.pending.push_back(items[i]);
    }
    s.found.clear();
    for (const auto& [code, map] : merged) s.found.push_back(map);
    s.nodes = frontier.nodes + counter.load();
    s.leaves = frontier.leaves + leaves;
    return s;
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= items.size() || abort.load()) break;
      SearchControl control;
      control.node_counter = &counter;
      control.node_budget = opts.node_budget;
      control.abort = &abort;
      Search s(fans, frontier.n, subtree_options(opts, idx), control);
      if (!s.place_root() || !s.replay(items[idx])) {
        bad_item = true;
        abort = true;
        break;
      }
      CollectSink sink(target);
      s.run(sink);
      std::lock_guard lock(mu);
      add_prunes(stats, s);
      leaves += s.leaves();
      if (!s.stopped()) {
        done[idx] = 1;
        ++stats.subtrees;
        for (auto& [code, map] : sink.maps()) merged.try_emplace(code, std::move(map));
      }
    }
    std::lock_guard lock(mu);
    --running;
    cv.notify_all();
  };

  const unsigned workers = worker_count(opts, items.size());
  std::vector<std::thread> pool;
  running = workers;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  {
    std::unique_lock lock(mu);
    const auto interval = std::chrono::duration<double>(
        std::max(0.01, opts.checkpoint_interval_seconds));
    while (running > 0) {
      if (opts.checkpoint_path.empty()) {
        cv.wait(lock, [&] { return running == 0; });
      } else if (!cv.wait_for(lock, interval, [&] { return running == 0; })) {
        write_checkpoint(opts.checkpoint_path, snapshot());
      }
    }
  }
  for (auto& t : pool) t.join();
  if (bad_item) throw CorruptCheckpoint("a pending subtree does not replay onto the root fan");

  const bool budget_hit = opts.node_budget && counter.load() > *opts.node_budget;
  SearchFrontier after = snapshot();
  if (budget_hit) after.nodes = frontier.nodes + std::min(counter.load(), *opts.node_budget);
  frontier = std::move(after);

  EnumerationResult result;
  for (const auto& [code, map] : merged) {
    result.maps.push_back(build_from_faces(map));
    result.codes.push_back(code);
  }
  stats.nodes = budget_hit ? *opts.node_budget : counter.load();
  stats.leaves = leaves;
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  result.stats = std::move(stats);
  result.complete = frontier.pending.empty();
  if (!result.complete) {
    result.diagnostic = "node budget exhausted with " + std::to_string(frontier.pending.size()) +
                        " of " + std::to_string(items.size()) + " subtrees unfinished";
  }
  return result;
}

EnumerationResult enumerate(const VertexType& type, int n, int chi,
                            const EnumerationOptions& opts) {
  check_consistency(type, n, chi);
  if (const int star = closed_star_size(type); star > n) {
    EnumerationResult empty;
    empty.diagnostic = "the closed star of " + type.to_string() + " has " + std::to_string(star) +
                       " vertices, more than " + std::to_string(n);
    return empty;
  }

  const auto started = std::chrono::steady_clock::now();
  SearchFrontier frontier;
  bool resumed = false;
  if (!opts.checkpoint_path.empty() && std::filesystem::exists(opts.checkpoint_path)) {
    frontier = read_checkpoint(opts.checkpoint_path);
    if (frontier.type != type || frontier.n != n || frontier.chi != chi ||
        frontier.split_depth != opts.split_depth) {
      throw InconsistentParameters("checkpoint " + opts.checkpoint_path +
                                   " belongs to a different search");
    }
    resumed = true;
  } else {
    frontier = initial_frontier(type, n, chi, opts);
  }
  const std::uint64_t initial_nodes = resumed ? 0 : frontier.nodes;

  EnumerationResult result = run_frontier(frontier, opts);
  if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, frontier);
  result.stats.nodes += initial_nodes;
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::optional<CombMap> exists_any(const VertexType& type, int n, int chi,
                                  const EnumerationOptions& opts) {
  check_consistency(type, n, chi);
  if (closed_star_size(type) > n) return std::nullopt;

  const Target target{type, n, chi, opts.polyhedral};
  FanTable fans(type);
  std::atomic<std::uint64_t> counter{0};
  std::atomic<bool> abort{false};
  SearchControl control;
  control.node_counter = &counter;
  control.node_budget = opts.node_budget;
  control.abort = &abort;

  // The shallow pass stops at the first map; subtrees recorded before it
  // precede that map in search order.
  Search s0(fans, n, opts, control);
  if (!s0.place_root()) return std::nullopt;
  CollectSink shallow(target, true);
  s0.run(shallow, opts.split_depth);
  if (s0.budget_hit()) throw BudgetExhausted("node budget exhausted before the subtrees were laid out");

  const std::vector<std::vector<Face>> items = std::move(shallow.pending());
  std::vector<std::optional<FaceListMap>> found(items.size());
  std::vector<char> done(items.size(), 0);
  std::atomic<std::size_t> best{items.size()};
  std::atomic<std::size_t> next{0};
  std::mutex mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= items.size() || idx > best.load() || abort.load()) break;
      SearchControl c = control;
      c.cancelled = [&best, idx] { return best.load(std::memory_order_relaxed) < idx; };
      Search s(fans, n, subtree_options(opts, idx), c);
      if (!s.place_root() || !s.replay(items[idx])) continue;
      CollectSink sink(target, true);
      s.run(sink);
      std::lock_guard lock(mu);
      if (sink.first()) {
        found[idx] = sink.first();
        done[idx] = 1;
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {}
      } else if (!s.stopped()) {
        done[idx] = 1;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < worker_count(opts, items.size()); ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const std::size_t b = best.load();
  const bool settled = std::all_of(done.begin(), done.begin() + static_cast<std::ptrdiff_t>(b),
                                   [](char x) { return x != 0; });
  if (!settled) throw BudgetExhausted("node budget exhausted before the search was decided");
  if (b < items.size()) return build_from_faces(*found[b]);
  if (shallow.first()) return build_from_faces(*shallow.first());
  return std::nullopt;
}

// ------------------------------------------------------------- checkpoints

namespace {

constexpr char kMagic[8] = {'S', 'E', 'M', 'Q', 'C', 'K', 'P', 'T'};

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Writer {
 public:
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
  void faces(const std::vector<Face>& fs) {
    u32(static_cast<std::uint32_t>(fs.size()));
    for (const Face& f : fs) {
      u32(static_cast<std::uint32_t>(f.size()));
      for (int x : f) i32(x);
    }
  }
  std::vector<std::uint8_t>& bytes() { return out_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4))); }
  // Element counts are bounded by the bytes left so a damaged length cannot
  // trigger a huge allocation.
  std::size_t count(std::size_t min_bytes_each) {
    const std::uint64_t k = u64();
    if (k > remaining() / std::max<std::size_t>(1, min_bytes_each)) fail("count out of range");
    return static_cast<std::size_t>(k);
  }
  std::vector<Face> faces() {
    const std::uint32_t k = u32();
    if (k > remaining() / 4) fail("face count out of range");
    std::vector<Face> fs(k);
    for (Face& f : fs) {
      const std::uint32_t len = u32();
      if (len > remaining() / 4) fail("face length out of range");
      f.resize(len);
      for (int& x : f) x = i32();
    }
    return fs;
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  [[noreturn]] static void fail(const std::string& what) { throw CorruptCheckpoint(what); }

 private:
  std::uint64_t get(int width) {
    if (remaining() < static_cast<std::size_t>(width)) fail("truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> checkpoint_save(const SearchFrontier& frontier) {
  Writer payload;
  payload.u32(static_cast<std::uint32_t>(frontier.type.cycle().size()));
  for (int p : frontier.type.cycle()) payload.i32(p);
  payload.i32(frontier.n);
  payload.i32(frontier.chi);
  payload.i32(frontier.split_depth);
  payload.u64(frontier.nodes);
  payload.u64(frontier.leaves);
  payload.u64(frontier.pending.size());
  for (const auto& item : frontier.pending) payload.faces(item);
  payload.u64(frontier.found.size());
  for (const FaceListMap& m : frontier.found) {
    payload.i32(m.vertex_count);
    payload.faces(m.faces);
  }

  Writer out;
  for (char c : kMagic) out.bytes().push_back(static_cast<std::uint8_t>(c));
  out.u16(kCheckpointVersion);
  out.u64(payload.bytes().size());
  out.bytes().insert(out.bytes().end(), payload.bytes().begin(), payload.bytes().end());
  out.u64(fnv1a(payload.bytes()));
  return std::move(out.bytes());
}

SearchFrontier checkpoint_load(std::span<const std::uint8_t> blob) {
  if (blob.size() < sizeof kMagic || !std::equal(std::begin(kMagic), std::end(kMagic), blob.begin())) {
    Reader::fail("bad magic bytes");
  }
  Reader head(blob.subspan(sizeof kMagic));
  const std::uint16_t version = head.u16();
  if (version != kCheckpointVersion) {
    Reader::fail("unsupported version " + std::to_string(version) + ", expected " +
                 std::to_string(kCheckpointVersion));
  }
  const std::uint64_t length = head.u64();
  if (length > head.remaining() || head.remaining() - length != 8) Reader::fail("bad payload length");
  const auto payload = blob.subspan(sizeof kMagic + 10, static_cast<std::size_t>(length));
  Reader tail(blob.subspan(sizeof kMagic + 10 + static_cast<std::size_t>(length)));
  if (tail.u64() != fnv1a(payload)) Reader::fail("checksum mismatch");

  Reader in(payload);
  SearchFrontier f;
  const std::uint32_t d = in.u32();
  if (d > 64) Reader::fail("vertex type too long");
  std::vector<int> cycle(d);
  for (int& p : cycle) p = in.i32();
  try {
    f.type = VertexType::from_cycle(cycle);
  } catch (const Error& e) {
    Reader::fail(std::string("bad vertex type: ") + e.what());
  }
  if (f.type.cycle() != cycle) Reader::fail("vertex type not in canonical form");
  f.n = in.i32();
  f.chi = in.i32();
  f.split_depth = in.i32();
  f.nodes = in.u64();
  f.leaves = in.u64();
  f.pending.resize(in.count(4));
  for (auto& item : f.pending) item = in.faces();
  f.found.resize(in.count(8));
  for (FaceListMap& m : f.found) {
    m.vertex_count = in.i32();
    m.faces = in.faces();
  }
  if (in.remaining() != 0) Reader::fail("trailing bytes in payload");
  return f;
}

void write_checkpoint(const std::string& path, const SearchFrontier& frontier) {
  const auto blob = checkpoint_save(frontier);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

SearchFrontier read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptCheckpoint("cannot open " + path);
  std::vector<std::uint8_t> blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return checkpoint_load(blob);
}

}  // namespace semeq
