// Copyright 2026 The cuspvol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Combinatorial ideal triangulations: gluing tables, edge classes, cusp
// classes with their vertex links, the dual spanning tree, and the
// fundamental-group data (generators, edge relators, developing words)
// that the numerical modules consume.
//
// Conventions used throughout the library:
//   * face f of a tetrahedron is the face opposite vertex f;
//   * a gluing (tet, face) -> (to_tet, to_face, perm) identifies vertex k of
//     `tet` with vertex perm[k] of `to_tet`, so perm[face] == to_face;
//   * tetrahedron edges carry shape parameters as
//       {0,2},{1,3} -> z,   {0,3},{1,2} -> z',   {0,1},{2,3} -> z''
//     which is the assignment induced by placing vertices 0,1,2,3 at
//     0, 1, infinity, z.

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cuspvol {

using Perm = std::array<int, 4>;

Perm inverse(const Perm& p);
/// +1 for even permutations, -1 for odd ones.
int parity(const Perm& p);
bool is_permutation(const Perm& p);

/// Which of z, z', z'' sits on a tetrahedron edge.
enum class Slot : int { Z = 0, ZPrime = 1, ZDoublePrime = 2 };
Slot edge_slot(int a, int b);

/// Exponents of (z, z', z'') contributed by one tetrahedron to one equation.
using SlotExponents = std::array<int, 3>;

struct TetVertex {
  int tet = 0;
  int vertex = 0;
  auto operator<=>(const TetVertex&) const = default;
};

struct TetFace {
  int tet = 0;
  int face = 0;
  auto operator<=>(const TetFace&) const = default;
};

struct FaceGluing {
  int tet = 0;
  int face = 0;
  int to_tet = 0;
  int to_face = 0;
  Perm perm{0, 1, 2, 3};
};

// ---------------------------------------------------------------------------
// Words in the generators of the fundamental group.

struct Letter {
  int generator = 0;
  int power = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
/// Free reduction (cancels adjacent x x^-1 pairs).
Word reduce(Word w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int exponent);
std::string to_string(const Word& w);

// ---------------------------------------------------------------------------

struct EdgeIncidence {
  int tet = 0;
  int head = 0;  // vertex lying at the first end of the edge class
  int tail = 0;
  int exit_face = 0;  // face crossed to reach the next incidence in the cycle
  Slot slot = Slot::Z;
};

struct EdgeClass {
  std::vector<EdgeIncidence> cycle;

  int valence() const { return static_cast<int>(cycle.size()); }
  SlotExponents slot_counts(int tet) const;
};

struct CuspClass {
  int id = 0;
  std::vector<TetVertex> members;  // sorted
  TetVertex base;                  // lowest member; root of developing words
  int link_vertices = 0;
  int link_edges = 0;
  int link_triangles = 0;

  int euler_characteristic() const {
    return link_vertices - link_edges + link_triangles;
  }
};

struct SpanningTree {
  /// Tree face pairs in discovery order; `first` lies in the earlier tet.
  std::vector<std::pair<TetFace, TetFace>> edges;
  /// Tetrahedra in breadth-first discovery order, starting with 0.
  std::vector<int> order;
  /// For each generator, the (tet, face) on which it appears with power +1.
  std::vector<TetFace> generator_faces;

  int generator_count() const {
    return static_cast<int>(generator_faces.size());
  }
};

/// A closed loop in a cusp's link, read as an element of the peripheral
/// subgroup together with its combinatorial holonomy row.
struct PeripheralLoop {
  Word word;
  std::vector<SlotExponents> holonomy_row;
};

/// The purely combinatorial structure of a gluing table. Accepts any
/// connected, orientable, fully glued table (links need not be tori), which
/// keeps small test complexes usable.
class GluingStructure {
 public:
  GluingStructure(int tet_count, std::span<const FaceGluing> gluings);

  int tet_count() const { return tet_count_; }
  const FaceGluing& gluing(int tet, int face) const {
    return gluings_[static_cast<size_t>(4 * tet + face)];
  }
  const FaceGluing& gluing(TetFace f) const { return gluing(f.tet, f.face); }

  const std::vector<EdgeClass>& edge_classes() const { return edge_classes_; }
  /// Index of the edge class containing edge {a,b} of `tet`.
  int edge_class_of(int tet, int a, int b) const;

  /// Cusp classes numbered by their lowest (tet, vertex) member.
  const std::vector<CuspClass>& cusp_classes() const { return cusp_classes_; }
  int cusp_of(TetVertex v) const {
    return cusp_of_[static_cast<size_t>(4 * v.tet + v.vertex)];
  }

  const SpanningTree& spanning_tree() const { return tree_; }
  int generator_count() const { return tree_.generator_count(); }
  /// Generator letter carried by a face, nullopt on tree faces.
  std::optional<Letter> face_letter(int tet, int face) const {
    return face_letters_[static_cast<size_t>(4 * tet + face)];
  }
  bool is_tree_face(int tet, int face) const {
    return !face_letter(tet, face).has_value();
  }

  /// Word w with rho(w)(xi_cusp) = image of this ideal vertex.
  const Word& vertex_word(TetVertex v) const {
    return vertex_words_[static_cast<size_t>(4 * v.tet + v.vertex)];
  }
  /// One relator per edge class, in edge-class order.
  const std::vector<Word>& relators() const { return relators_; }
  /// Loops generating the peripheral subgroup of each derived cusp class.
  const std::vector<PeripheralLoop>& peripheral_loops(int cusp_class) const {
    return loops_[static_cast<size_t>(cusp_class)];
  }

  /// Edge equation rows, one per edge class (exponent = incidence count).
  std::vector<std::vector<SlotExponents>> edge_rows() const;

 private:
  void validate_gluings(std::span<const FaceGluing> gluings);
  void build_edge_classes();
  void build_cusp_classes();
  void build_spanning_tree();
  void build_words_and_loops();

  int tet_count_ = 0;
  std::vector<FaceGluing> gluings_;
  std::vector<EdgeClass> edge_classes_;
  std::vector<std::array<int, 2>> edge_lookup_;  // (class, head) per tet edge
  std::vector<CuspClass> cusp_classes_;
  std::vector<int> cusp_of_;
  SpanningTree tree_;
  std::vector<std::optional<Letter>> face_letters_;
  std::vector<Word> vertex_words_;
  std::vector<Word> relators_;
  std::vector<std::vector<PeripheralLoop>> loops_;
};

// ---------------------------------------------------------------------------
// File-level data.

struct PeripheralRow {
  std::vector<SlotExponents> exponents;  // one triple per tetrahedron
  int pi_offset = 0;
  bool operator==(const PeripheralRow&) const = default;
};

struct PeripheralCurves {
  PeripheralRow meridian;
  PeripheralRow longitude;
  bool operator==(const PeripheralCurves&) const = default;
};

struct Filling {
  int p = 1;
  int q = 0;
  bool operator==(const Filling&) const = default;
};

struct TriangulationData {
  int tet_count = 0;
  int cusp_count = 0;
  std::vector<FaceGluing> gluings;
  std::optional<std::vector<std::array<int, 4>>> vertex_cusp;
  std::vector<std::optional<PeripheralCurves>> peripheral;  // per cusp
  std::vector<std::optional<Filling>> filling;              // per cusp
};

/// Meridian and longitude as words, recovered from the file's exponent rows.
struct PeripheralWords {
  Word meridian;
  Word longitude;
};

/// A validated ideal triangulation of a cusped orientable 3-manifold. Cusp
/// indices follow the file (its `vertex_cusp` labels when given, otherwise
/// the derived order). Immutable after construction.
class Triangulation {
 public:
  explicit Triangulation(TriangulationData data);

  int tet_count() const { return data_.tet_count; }
  int cusp_count() const { return data_.cusp_count; }
  const TriangulationData& data() const { return data_; }
  const GluingStructure& structure() const { return structure_; }

  const std::vector<EdgeClass>& edge_classes() const {
    return structure_.edge_classes();
  }
  /// Cusp classes indexed by file cusp index.
  const std::vector<CuspClass>& cusp_classes() const { return cusps_; }
  int cusp_of(TetVertex v) const;
  const SpanningTree& spanning_tree() const {
    return structure_.spanning_tree();
  }
  int generator_count() const { return structure_.generator_count(); }
  const std::vector<Word>& relators() const { return structure_.relators(); }
  const Word& vertex_word(TetVertex v) const {
    return structure_.vertex_word(v);
  }
  const std::vector<PeripheralLoop>& peripheral_loops(int cusp) const;

  const std::optional<PeripheralCurves>& peripheral_curves(int cusp) const {
    return data_.peripheral[static_cast<size_t>(cusp)];
  }
  const std::optional<Filling>& filling(int cusp) const {
    return data_.filling[static_cast<size_t>(cusp)];
  }
  /// Words for the file's meridian and longitude; nullopt when the cusp has
  /// no peripheral rows.
  const std::optional<PeripheralWords>& peripheral_words(int cusp) const {
    return peripheral_words_[static_cast<size_t>(cusp)];
  }

 private:
  void assign_cusps();
  void resolve_peripheral_words();

  TriangulationData data_;
  GluingStructure structure_;
  std::vector<CuspClass> cusps_;
  std::vector<int> derived_to_file_;
  std::vector<std::optional<PeripheralWords>> peripheral_words_;
};

/// Parses the TRIG JSON format. Throws cuspvol::Error.
Triangulation parse_triangulation(std::string_view text);
Triangulation load_triangulation(const std::string& path);

/// Canonical serialization; parse(to_canonical_json(t)) reproduces t and the
/// output is byte-stable.
std::string to_canonical_json(const Triangulation& t);

}  // namespace cuspvol
