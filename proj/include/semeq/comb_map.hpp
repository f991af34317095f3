#pragma once

// Maps on closed surfaces in flag form.
//
// A flag is an incident (vertex, edge, face) triple. Three fixed-point-free
// involutions act on flags: s0 replaces the vertex, s1 the edge and s2 the
// face, keeping the other two entries. Vertices, edges and faces are the
// orbits of <s1,s2>, <s0,s2> and <s0,s1>. The encoding is orientation free,
// so non-orientable surfaces need no special treatment.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semeq/vertex_type.hpp"

namespace semeq {

using Face = std::vector<int>;

// Labeled vertices 1..vertex_count and faces as cyclic label sequences.
struct FaceListMap {
  int vertex_count = 0;
  std::vector<Face> faces;
};

class CombMap {
 public:
  // Takes ownership of the three involutions and checks every invariant:
  // involutions without fixed points, s0 s2 a fixed-point-free involution,
  // connected flag graph. Throws InvalidMap or Disconnected.
  //
  // `flag_labels` gives the user label of each flag's vertex and must be
  // constant on vertex orbits; when empty, vertex orbit k gets label k + 1.
  CombMap(std::vector<int> s0, std::vector<int> s1, std::vector<int> s2,
          const std::vector<int>& flag_labels = {});

  int flag_count() const { return static_cast<int>(s0_.size()); }
  int s0(int flag) const { return s0_[flag]; }
  int s1(int flag) const { return s1_[flag]; }
  int s2(int flag) const { return s2_[flag]; }
  const std::vector<int>& s0() const { return s0_; }
  const std::vector<int>& s1() const { return s1_; }
  const std::vector<int>& s2() const { return s2_; }

  // Orbit ids are assigned in breadth-first order from flag 0.
  int vertex_of(int flag) const { return vertex_of_[flag]; }
  int edge_of(int flag) const { return edge_of_[flag]; }
  int face_of(int flag) const { return face_of_[flag]; }

  int f0() const { return f0_; }
  int f1() const { return f1_; }
  int f2() const { return f2_; }

  int label_of_vertex(int vertex) const { return labels_[vertex]; }
  const std::vector<int>& vertex_labels() const { return labels_; }
  // Vertex orbit carrying `label`; throws NoSuchVertex. When a label names
  // several orbits (non-manifold input) the first one is returned.
  int vertex_with_label(int label) const;

  // Some flag of the vertex / face orbit.
  int vertex_flag(int vertex) const { return vertex_flag_[vertex]; }
  int face_flag(int face) const { return face_flag_[face]; }

  // Vertex orbit ids of a face in boundary order, starting at face_flag.
  std::vector<int> face_vertices(int face) const;
  int face_size(int face) const;

 private:
  std::vector<int> s0_, s1_, s2_;
  std::vector<int> vertex_of_, edge_of_, face_of_;
  std::vector<int> vertex_flag_, face_flag_;
  std::vector<int> labels_;
  int f0_ = 0, f1_ = 0, f2_ = 0;
};

// Glues faces along equal label pairs. Throws RepeatedVertexInFace,
// EdgeDegree (a pair used other than 0 or 2 times) or Disconnected.
CombMap build_from_faces(const FaceListMap& input);

// Faces as cyclic label sequences, each rotated to start at its smallest
// label and read towards the smaller neighbour, sorted.
FaceListMap to_face_list(const CombMap& m);

// Applies `relabel[label]` to every label; relabel must be a permutation of
// 1..vertex_count (index 0 unused).
FaceListMap relabel(const FaceListMap& m, const std::vector<int>& relabel);

enum class ViolationKind {
  repeated_vertex_in_face,
  loop_edge,
  parallel_edge,
  big_face_intersection,
  non_disc_star,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Vertex labels for vertex witnesses; edge / face orbit ids otherwise.
  std::vector<int> witnesses;
};

struct PolyhedralityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Individual components of the polyhedrality condition.
struct PolyhedralOptions {
  bool simple_edge_graph = true;
  bool simple_face_boundaries = true;
  bool face_intersections = true;
  bool disc_stars = true;
};

PolyhedralityReport validate_polyhedral(const CombMap& m,
                                        const PolyhedralOptions& opts = {});

int euler_characteristic(const CombMap& m);

struct SurfaceSignature {
  int chi = 0;
  bool orientable = false;
  int euler_genus = 0;
  friend bool operator==(const SurfaceSignature&, const SurfaceSignature&) = default;
};

SurfaceSignature surface_signature(const CombMap& m);

struct LinkCycle {
  int center = 0;
  std::vector<int> boundary;
};

// Boundary of the closed star of the vertex labeled `v`, in rotation order.
LinkCycle link_cycle(const CombMap& m, int v);

// Face sizes around the vertex labeled `v`, in rotation order.
std::vector<int> face_cycle_type(const CombMap& m, int v);

std::optional<VertexType> semi_equivelar_type(const CombMap& m);

}  // namespace semeq
