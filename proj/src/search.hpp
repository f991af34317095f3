#pragma once

// Internal: the backtracking core behind enumerate() and exists_any().

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <unordered_set>
#include <vector>

#include "semeq/comb_map.hpp"
#include "semeq/enumerator.hpp"
#include "semeq/vertex_type.hpp"

namespace semeq::detail {

inline constexpr int kMaxDegree = 8;

enum Prune : int {
  kPruneRepeat,        // vertex already on the new face
  kPruneClosed,        // vertex fan already complete
  kPruneLabels,        // fresh label beyond n
  kPruneEdgeUse,       // edge would lie on three faces
  kPruneDegree,        // vertex would exceed d neighbours
  kPruneFan,           // face sizes around a vertex no longer fit the type
  kPruneIntersection,  // two faces would meet in more than an edge
  kPruneFaceBudget,    // no faces of that size left
  kPruneDeadEnd,       // every fan closed before n labels were used
  kPruneCount,
};

const char* prune_name(int reason);

// Valid partial fans of a vertex type: the sets of face-size paths obtained by
// deleting at least one face from the type cycle.
class FanTable {
 public:
  explicit FanTable(const VertexType& type);

  int degree() const { return static_cast<int>(cycle_.size()); }
  int symbol(int size) const { return symbol_of_[static_cast<std::size_t>(size)]; }
  const std::vector<int>& sizes() const { return sizes_; }
  const VertexType& type() const { return type_; }

  // Order-independent code of one path of symbols.
  static std::uint64_t path_code(const int* symbols, int length);
  // Code of a sorted list of path codes.
  static std::uint64_t collection_code(std::vector<std::uint64_t>& paths);

  bool open_ok(std::uint64_t collection) const { return open_.count(collection) != 0; }
  bool closed_ok(std::span<const int> sizes) const { return type_.matches(sizes); }

 private:
  VertexType type_;
  std::vector<int> cycle_;
  std::vector<int> sizes_;      // distinct sizes, ascending
  std::vector<int> symbol_of_;  // size -> symbol index
  std::unordered_set<std::uint64_t> open_;
};

// Receives search events. Returning false from on_leaf stops the search.
struct SearchSink {
  virtual ~SearchSink() = default;
  virtual bool on_leaf(const FaceListMap& map) = 0;
  virtual void on_frontier(std::vector<Face> extra_faces) { (void)extra_faces; }
};

struct SearchControl {
  std::atomic<std::uint64_t>* node_counter = nullptr;  // shared across workers
  std::optional<std::uint64_t> node_budget;
  std::atomic<bool>* abort = nullptr;
  // Polled once per node; true stops this search (exists_any cut-off).
  std::function<bool()> cancelled;
};

class Search {
 public:
  Search(const FanTable& fans, int n, const EnumerationOptions& opts, SearchControl control);

  // Lays out vertex 1's fan. False when it cannot be placed (closed star
  // larger than n).
  bool place_root();
  // Re-applies faces recorded below the root; false if any is inconsistent.
  bool replay(const std::vector<Face>& faces);

  // Depth-first search from the current state. With split_depth >= 0, states
  // that many faces below the root are handed to on_frontier instead.
  void run(SearchSink& sink, int split_depth = -1);

  bool stopped() const { return stopped_; }
  bool budget_hit() const { return budget_hit_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t leaves() const { return leaves_; }
  const std::array<std::uint64_t, kPruneCount>& prunes() const { return prunes_; }
  void seed(std::uint64_t s) { rng_.seed(s); shuffle_ = true; }

 private:
  struct Corner {
    int a, b, size, face;
  };
  struct Placement {
    int size = 0;
    std::vector<int> at;  // vertex per position, 0 while unknown
    std::vector<char> corner_done;
  };
  enum class Op : std::uint8_t { set_pos, edge, new_edge, corner, fresh, commit };
  struct Record {
    Op op;
    int a, b, c;
  };

  enum class FanStatus { invalid, open, closed };

  int& use(int a, int b) { return edge_use_[static_cast<std::size_t>(a * stride_ + b)]; }
  int use(int a, int b) const { return edge_use_[static_cast<std::size_t>(a * stride_ + b)]; }

  void begin_face(int size);
  bool place(int pos, int u);
  bool add_edge(int a, int b);
  bool check_intersections(int pos, int u);
  bool add_corner(int pos);
  void commit();
  void undo_to(std::size_t mark);

  // Classifies the fan of x, optionally with one extra hypothetical corner.
  FanStatus fan_status(int x, const Corner* extra) const;
  // Whether some completion of a new corner (a, ?) of the given size keeps
  // the fan of x valid.
  bool accepts_corner(int x, int a, int size) const;

  void search(SearchSink& sink);
  void fill(SearchSink& sink, std::size_t step);
  void emit_leaf(SearchSink& sink);
  bool count_node();

  const FanTable& fans_;
  const int n_;
  const int d_;
  EnumerationOptions opts_;
  SearchControl control_;
  int stride_;

  int next_label_ = 1;
  std::vector<int> edge_use_;
  std::vector<int> degree_;
  std::vector<std::array<Corner, kMaxDegree>> corners_;
  std::vector<int> corner_count_;
  std::vector<char> closed_;
  std::vector<int> budget_;   // by face size
  std::vector<std::vector<int>> vfaces_;  // by vertex, ids of faces containing it
  std::vector<Placement> placements_;  // by face id
  int face_count_ = 0;
  int root_faces_ = 0;
  std::vector<Record> log_;
  std::vector<std::vector<int>> fill_order_;  // by face size

  int split_depth_ = -1;
  bool stopped_ = false;
  bool budget_hit_ = false;
  bool shuffle_ = false;
  std::mt19937_64 rng_;
  std::uint64_t nodes_ = 0;
  std::uint64_t leaves_ = 0;
  std::array<std::uint64_t, kPruneCount> prunes_{};
};

}  // namespace semeq::detail
