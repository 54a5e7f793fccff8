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

#include "cuspvol/triangulation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cuspvol/error.hpp"
#include "json.hpp"

namespace cuspvol {

namespace {

constexpr std::array<std::array<int, 2>, 6> kEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Orientation of a left turn inside a link triangle relative to the parity
// of (vertex, corner, side_in, side_out).
constexpr int kTurnSign = 1;

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int i = 0; i < 6; ++i)
    if (kEdges[static_cast<size_t>(i)][0] == a &&
        kEdges[static_cast<size_t>(i)][1] == b)
      return i;
  throw Error(ErrorKind::MalformedInput, "not a tetrahedron edge");
}

// The vertex of {0,1,2,3} not among three distinct others.
int remaining_vertex(int a, int b, int c) { return 6 - a - b - c; }

Error malformed(const std::string& msg) {
  return Error(ErrorKind::MalformedInput, msg);
}

std::string describe(int tet, int face) {
  return "(tet " + std::to_string(tet) + ", face " + std::to_string(face) +
         ")";
}

}  // namespace

// ---------------------------------------------------------------------------

Perm inverse(const Perm& p) {
  Perm q{};
  for (int i = 0; i < 4; ++i) q[static_cast<size_t>(p[static_cast<size_t>(i)])] = i;
  return q;
}

int parity(const Perm& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<size_t>(i)] > p[static_cast<size_t>(j)]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

bool is_permutation(const Perm& p) {
  std::array<bool, 4> seen{};
  for (int x : p) {
    if (x < 0 || x > 3 || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = true;
  }
  return true;
}

Slot edge_slot(int a, int b) {
  if (a > b) std::swap(a, b);
  if ((a == 0 && b == 2) || (a == 1 && b == 3)) return Slot::Z;
  if ((a == 0 && b == 3) || (a == 1 && b == 2)) return Slot::ZPrime;
  return Slot::ZDoublePrime;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->generator, -it->power});
  return out;
}

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().generator == l.generator &&
        out.back().power == -l.power)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(std::move(out));
}

Word power(const Word& w, int exponent) {
  const Word base = exponent >= 0 ? w : inverse(w);
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i)
    out.insert(out.end(), base.begin(), base.end());
  return reduce(std::move(out));
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    s += 'g' + std::to_string(l.generator);
    if (l.power < 0) s += "^-1";
  }
  return s;
}

SlotExponents EdgeClass::slot_counts(int tet) const {
  SlotExponents counts{0, 0, 0};
  for (const EdgeIncidence& inc : cycle)
    if (inc.tet == tet) ++counts[static_cast<size_t>(inc.slot)];
  return counts;
}

// ---------------------------------------------------------------------------
// GluingStructure

GluingStructure::GluingStructure(int tet_count,
                                 std::span<const FaceGluing> gluings)
    : tet_count_(tet_count) {
  if (tet_count <= 0) throw malformed("tet_count must be positive");
  validate_gluings(gluings);
  build_edge_classes();
  build_cusp_classes();
  build_spanning_tree();
  build_words_and_loops();
}

void GluingStructure::validate_gluings(std::span<const FaceGluing> gluings) {
  const auto n = static_cast<size_t>(tet_count_);
  gluings_.assign(4 * n, FaceGluing{});
  std::vector<bool> present(4 * n, false);
  for (const FaceGluing& g : gluings) {
    auto in_range = [&](int tet, int face) {
      return tet >= 0 && tet < tet_count_ && face >= 0 && face < 4;
    };
    if (!in_range(g.tet, g.face) || !in_range(g.to_tet, g.to_face))
      throw malformed("gluing index out of range at " +
                      describe(g.tet, g.face));
    if (!is_permutation(g.perm))
      throw malformed("invalid permutation at " + describe(g.tet, g.face));
    if (g.perm[static_cast<size_t>(g.face)] != g.to_face)
      throw malformed("permutation does not carry face " +
                      std::to_string(g.face) + " to face " +
                      std::to_string(g.to_face));
    const auto slot = static_cast<size_t>(4 * g.tet + g.face);
    if (present[slot])
      throw Error(ErrorKind::NonInvolutiveGluing,
                  "face " + describe(g.tet, g.face) + " glued twice");
    present[slot] = true;
    gluings_[slot] = g;
  }
  for (size_t i = 0; i < present.size(); ++i)
    if (!present[i])
      throw Error(ErrorKind::UnglueedFace,
                  "face " + describe(static_cast<int>(i / 4),
                                     static_cast<int>(i % 4)) +
                      " is not glued");
  for (const FaceGluing& g : gluings_) {
    if (g.tet == g.to_tet && g.face == g.to_face)
      throw Error(ErrorKind::NonInvolutiveGluing,
                  "face " + describe(g.tet, g.face) + " glued to itself");
    const FaceGluing& back = gluing(g.to_tet, g.to_face);
    if (back.to_tet != g.tet || back.to_face != g.face ||
        back.perm != inverse(g.perm))
      throw Error(ErrorKind::NonInvolutiveGluing,
                  "gluing of " + describe(g.tet, g.face) +
                      " is not inverted by the gluing of " +
                      describe(g.to_tet, g.to_face));
    if (parity(g.perm) != -1)
      throw Error(ErrorKind::NonOrientable,
                  "gluing of " + describe(g.tet, g.face) +
                      " does not reverse vertex orientation");
  }
}

void GluingStructure::build_edge_classes() {
  const auto n = static_cast<size_t>(tet_count_);
  edge_lookup_.assign(6 * n, {-1, -1});
  for (int t = 0; t < tet_count_; ++t) {
    for (const auto& e : kEdges) {
      if (edge_lookup_[6 * static_cast<size_t>(t) +
                       static_cast<size_t>(edge_index(e[0], e[1]))][0] >= 0)
        continue;
      const int id = static_cast<int>(edge_classes_.size());
      EdgeClass ec;
      const int a = e[0], b = e[1];
      // The faces containing {a,b} are opposite the two other vertices; the
      // walk leaves through the lower one.
      int exit0 = 0;
      while (exit0 == a || exit0 == b) ++exit0;

      int tet = t, head = a, tail = b, exit = exit0;
      for (;;) {
        auto& entry = edge_lookup_[6 * static_cast<size_t>(tet) +
                                   static_cast<size_t>(edge_index(head, tail))];
        if (entry[0] >= 0)
          throw malformed("edge class folds an edge onto itself");
        entry = {id, head};
        ec.cycle.push_back({tet, head, tail, exit, edge_slot(head, tail)});
        const FaceGluing& g = gluing(tet, exit);
        const int nh = g.perm[static_cast<size_t>(head)];
        const int nt = g.perm[static_cast<size_t>(tail)];
        exit = remaining_vertex(nh, nt, g.to_face);
        tet = g.to_tet;
        head = nh;
        tail = nt;
        if (tet == t && head == a && tail == b && exit == exit0) break;
        if (ec.cycle.size() > 6 * n)
          throw malformed("edge cycle does not close");
      }
      edge_classes_.push_back(std::move(ec));
    }
  }
}

int GluingStructure::edge_class_of(int tet, int a, int b) const {
  return edge_lookup_[6 * static_cast<size_t>(tet) +
                      static_cast<size_t>(edge_index(a, b))][0];
}

void GluingStructure::build_cusp_classes() {
  const auto n = static_cast<size_t>(tet_count_);
  cusp_of_.assign(4 * n, -1);
  for (int t = 0; t < tet_count_; ++t) {
    for (int v = 0; v < 4; ++v) {
      if (cusp_of_[static_cast<size_t>(4 * t + v)] >= 0) continue;
      CuspClass cusp;
      cusp.id = static_cast<int>(cusp_classes_.size());
      std::deque<TetVertex> queue{{t, v}};
      cusp_of_[static_cast<size_t>(4 * t + v)] = cusp.id;
      while (!queue.empty()) {
        const TetVertex cur = queue.front();
        queue.pop_front();
        cusp.members.push_back(cur);
        for (int f = 0; f < 4; ++f) {
          if (f == cur.vertex) continue;
          const FaceGluing& g = gluing(cur.tet, f);
          const TetVertex next{g.to_tet, g.perm[static_cast<size_t>(cur.vertex)]};
          auto& owner = cusp_of_[static_cast<size_t>(4 * next.tet + next.vertex)];
          if (owner < 0) {
            owner = cusp.id;
            queue.push_back(next);
          }
        }
      }
      std::sort(cusp.members.begin(), cusp.members.end());
      cusp.base = cusp.members.front();

      std::set<std::pair<int, int>> link_vertices;
      for (const TetVertex& m : cusp.members) {
        for (int k = 0; k < 4; ++k) {
          if (k == m.vertex) continue;
          const auto& entry =
              edge_lookup_[6 * static_cast<size_t>(m.tet) +
                           static_cast<size_t>(edge_index(m.vertex, k))];
          link_vertices.insert({entry[0], entry[1] == m.vertex ? 0 : 1});
        }
      }
      cusp.link_triangles = static_cast<int>(cusp.members.size());
      cusp.link_edges = 3 * cusp.link_triangles / 2;
      cusp.link_vertices = static_cast<int>(link_vertices.size());
      cusp_classes_.push_back(std::move(cusp));
    }
  }
}

void GluingStructure::build_spanning_tree() {
  const auto n = static_cast<size_t>(tet_count_);
  std::vector<bool> visited(n, false);
  std::vector<bool> tree_face(4 * n, false);
  std::deque<int> queue{0};
  visited[0] = true;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    tree_.order.push_back(t);
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = gluing(t, f);
      if (visited[static_cast<size_t>(g.to_tet)]) continue;
      visited[static_cast<size_t>(g.to_tet)] = true;
      tree_face[static_cast<size_t>(4 * t + f)] = true;
      tree_face[static_cast<size_t>(4 * g.to_tet + g.to_face)] = true;
      tree_.edges.push_back({{t, f}, {g.to_tet, g.to_face}});
      queue.push_back(g.to_tet);
    }
  }
  if (tree_.order.size() != n)
    throw malformed("triangulation is not connected");

  face_letters_.assign(4 * n, std::nullopt);
  for (int t = 0; t < tet_count_; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (tree_face[static_cast<size_t>(4 * t + f)]) continue;
      const FaceGluing& g = gluing(t, f);
      if (TetFace{g.to_tet, g.to_face} < TetFace{t, f}) continue;
      const int gen = tree_.generator_count();
      tree_.generator_faces.push_back({t, f});
      face_letters_[static_cast<size_t>(4 * t + f)] = Letter{gen, 1};
      face_letters_[static_cast<size_t>(4 * g.to_tet + g.to_face)] =
          Letter{gen, -1};
    }
  }
}

namespace {

// One step of a dual path inside a cusp link.
struct Crossing {
  TetVertex from;
  int exit_side = 0;
  TetVertex to;
  int entry_side = 0;
};

}  // namespace

void GluingStructure::build_words_and_loops() {
  const auto n = static_cast<size_t>(tet_count_);
  vertex_words_.assign(4 * n, Word{});
  loops_.assign(cusp_classes_.size(), {});

  for (const CuspClass& cusp : cusp_classes_) {
    std::vector<std::optional<Crossing>> parent(4 * n);
    std::vector<bool> reached(4 * n, false);
    auto idx = [](TetVertex v) { return static_cast<size_t>(4 * v.tet + v.vertex); };

    std::deque<TetVertex> queue{cusp.base};
    reached[idx(cusp.base)] = true;
    while (!queue.empty()) {
      const TetVertex cur = queue.front();
      queue.pop_front();
      for (int f = 0; f < 4; ++f) {
        if (f == cur.vertex) continue;
        const FaceGluing& g = gluing(cur.tet, f);
        const TetVertex next{g.to_tet, g.perm[static_cast<size_t>(cur.vertex)]};
        if (reached[idx(next)]) continue;
        reached[idx(next)] = true;
        parent[idx(next)] = Crossing{cur, f, next, g.to_face};
        // pos(next) = rho(letter)^-1 pos(cur)
        Word w = vertex_words_[idx(cur)];
        if (auto letter = face_letter(cur.tet, f))
          w = concat(Word{{letter->generator, -letter->power}}, w);
        vertex_words_[idx(next)] = std::move(w);
        queue.push_back(next);
      }
    }

    auto path_from_base = [&](TetVertex v) {
      std::vector<Crossing> path;
      while (parent[idx(v)]) {
        path.push_back(*parent[idx(v)]);
        v = parent[idx(v)]->from;
      }
      std::reverse(path.begin(), path.end());
      return path;
    };

    for (const TetVertex& m : cusp.members) {
      for (int f = 0; f < 4; ++f) {
        if (f == m.vertex) continue;
        const FaceGluing& g = gluing(m.tet, f);
        const TetVertex other{g.to_tet, g.perm[static_cast<size_t>(m.vertex)]};
        const std::tuple<int, int, int> here{m.tet, m.vertex, f};
        const std::tuple<int, int, int> there{other.tet, other.vertex,
                                              g.to_face};
        if (there < here) continue;
        const auto& p_other = parent[idx(other)];
        const auto& p_here = parent[idx(m)];
        if (p_other && p_other->from == m && p_other->exit_side == f) continue;
        if (p_here && p_here->from == other &&
            p_here->exit_side == g.to_face)
          continue;

        PeripheralLoop loop;
        Word w = inverse(vertex_words_[idx(m)]);
        if (auto letter = face_letter(m.tet, f)) w.push_back(*letter);
        loop.word = concat(w, vertex_words_[idx(other)]);

        std::vector<Crossing> cycle = path_from_base(m);
        cycle.push_back({m, f, other, g.to_face});
        for (auto back = path_from_base(other); !back.empty(); back.pop_back()) {
          const Crossing& c = back.back();
          cycle.push_back({c.to, c.entry_side, c.from, c.exit_side});
        }
        loop.holonomy_row.assign(n, SlotExponents{0, 0, 0});
        for (size_t r = 0; r < cycle.size(); ++r) {
          const Crossing& in = cycle[r];
          const Crossing& out = cycle[(r + 1) % cycle.size()];
          const int v = in.to.vertex;
          const int y = in.entry_side;
          const int x = out.exit_side;
          if (x == y) continue;
          const int corner = remaining_vertex(v, x, y);
          const int sign = kTurnSign * parity(Perm{v, corner, y, x});
          loop.holonomy_row[static_cast<size_t>(in.to.tet)]
                           [static_cast<size_t>(edge_slot(v, corner))] += sign;
        }
        loops_[static_cast<size_t>(cusp.id)].push_back(std::move(loop));
      }
    }
  }

  for (const EdgeClass& ec : edge_classes_) {
    Word w;
    for (const EdgeIncidence& inc : ec.cycle)
      if (auto letter = face_letter(inc.tet, inc.exit_face)) w.push_back(*letter);
    relators_.push_back(reduce(std::move(w)));
  }
}

std::vector<std::vector<SlotExponents>> GluingStructure::edge_rows() const {
  std::vector<std::vector<SlotExponents>> rows;
  for (const EdgeClass& ec : edge_classes_) {
    std::vector<SlotExponents> row(static_cast<size_t>(tet_count_),
                                   SlotExponents{0, 0, 0});
    for (const EdgeIncidence& inc : ec.cycle)
      ++row[static_cast<size_t>(inc.tet)][static_cast<size_t>(inc.slot)];
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Triangulation

Triangulation::Triangulation(TriangulationData data)
    : data_(std::move(data)),
      structure_(data_.tet_count, data_.gluings) {
  if (data_.cusp_count <= 0) throw malformed("cusp_count must be positive");
  const auto m = static_cast<size_t>(data_.cusp_count);
  if (data_.peripheral.empty()) data_.peripheral.resize(m);
  if (data_.filling.empty()) data_.filling.resize(m);
  if (data_.peripheral.size() != m)
    throw malformed("peripheral must list one entry per cusp");
  if (data_.filling.size() != m)
    throw malformed("filling must list one entry per cusp");

  for (const CuspClass& c : structure_.cusp_classes())
    if (c.euler_characteristic() != 0)
      throw Error(ErrorKind::NonTorusLink,
                  "vertex link of cusp class " + std::to_string(c.id) +
                      " has Euler characteristic " +
                      std::to_string(c.euler_characteristic()));
  if (static_cast<int>(structure_.edge_classes().size()) != data_.tet_count)
    throw Error(ErrorKind::EdgeCountMismatch,
                std::to_string(structure_.edge_classes().size()) +
                    " edge classes for " + std::to_string(data_.tet_count) +
                    " tetrahedra");
  if (structure_.cusp_classes().size() != m)
    throw Error(ErrorKind::CuspCountMismatch,
                "declared " + std::to_string(m) + " cusps, derived " +
                    std::to_string(structure_.cusp_classes().size()));

  for (const auto& curves : data_.peripheral) {
    if (!curves) continue;
    for (const PeripheralRow* row : {&curves->meridian, &curves->longitude})
      if (row->exponents.size() != static_cast<size_t>(data_.tet_count))
        throw malformed("peripheral rows need one triple per tetrahedron");
  }

  assign_cusps();
  resolve_peripheral_words();
}

void Triangulation::assign_cusps() {
  const auto& derived = structure_.cusp_classes();
  derived_to_file_.resize(derived.size());
  std::iota(derived_to_file_.begin(), derived_to_file_.end(), 0);
  if (data_.vertex_cusp) {
    const auto& labels = *data_.vertex_cusp;
    if (labels.size() != static_cast<size_t>(data_.tet_count))
      throw malformed("vertex_cusp needs one row per tetrahedron");
    std::vector<bool> used(derived.size(), false);
    for (const CuspClass& c : derived) {
      const int label = labels[static_cast<size_t>(c.base.tet)]
                              [static_cast<size_t>(c.base.vertex)];
      if (label < 0 || label >= cusp_count() || used[static_cast<size_t>(label)])
        throw malformed("vertex_cusp labels do not match the cusp classes");
      for (const TetVertex& v : c.members)
        if (labels[static_cast<size_t>(v.tet)][static_cast<size_t>(v.vertex)] !=
            label)
          throw malformed("vertex_cusp labels do not match the cusp classes");
      used[static_cast<size_t>(label)] = true;
      derived_to_file_[static_cast<size_t>(c.id)] = label;
    }
  }
  cusps_.resize(derived.size());
  for (const CuspClass& c : derived) {
    CuspClass relabeled = c;
    relabeled.id = derived_to_file_[static_cast<size_t>(c.id)];
    cusps_[static_cast<size_t>(relabeled.id)] = std::move(relabeled);
  }
}

int Triangulation::cusp_of(TetVertex v) const {
  return derived_to_file_[static_cast<size_t>(structure_.cusp_of(v))];
}

const std::vector<PeripheralLoop>& Triangulation::peripheral_loops(
    int cusp) const {
  const auto it = std::find(derived_to_file_.begin(), derived_to_file_.end(), cusp);
  return structure_.peripheral_loops(
      static_cast<int>(it - derived_to_file_.begin()));
}

namespace {

struct HomologyRow {
  std::array<long, 2> coords;
  std::vector<long> combo;
};

// Integer row reduction on column `col`; returns the pivot row with a +1
// entry and leaves every other row zero in that column.
std::optional<HomologyRow> extract_pivot(std::vector<HomologyRow>& rows,
                                         size_t col) {
  for (;;) {
    auto live = std::count_if(rows.begin(), rows.end(), [&](const HomologyRow& r) {
      return r.coords[col] != 0;
    });
    if (live == 0) return std::nullopt;
    auto pivot = std::min_element(
        rows.begin(), rows.end(), [&](const HomologyRow& a, const HomologyRow& b) {
          const long x = std::abs(a.coords[col]), y = std::abs(b.coords[col]);
          if (x == 0) return false;
          if (y == 0) return true;
          return x < y;
        });
    if (live == 1) {
      if (std::abs(pivot->coords[col]) != 1) return std::nullopt;
      HomologyRow out = *pivot;
      rows.erase(pivot);
      if (out.coords[col] < 0) {
        for (auto& c : out.coords) c = -c;
        for (auto& c : out.combo) c = -c;
      }
      return out;
    }
    const HomologyRow p = *pivot;
    for (HomologyRow& r : rows) {
      if (&r == &*pivot || r.coords[col] == 0) continue;
      const long q = r.coords[col] / p.coords[col];
      for (size_t i = 0; i < 2; ++i) r.coords[i] -= q * p.coords[i];
      for (size_t i = 0; i < r.combo.size(); ++i) r.combo[i] -= q * p.combo[i];
    }
  }
}

}  // namespace

void Triangulation::resolve_peripheral_words() {
  const auto n = static_cast<size_t>(data_.tet_count);
  peripheral_words_.assign(static_cast<size_t>(cusp_count()), std::nullopt);

  const auto edge_rows = structure_.edge_rows();
  const Eigen::Index cols = static_cast<Eigen::Index>(2 + edge_rows.size() + n);
  auto flatten = [&](const std::vector<SlotExponents>& row, Eigen::MatrixXd& mat,
                     Eigen::Index col) {
    for (size_t t = 0; t < n; ++t)
      for (size_t s = 0; s < 3; ++s)
        mat(static_cast<Eigen::Index>(3 * t + s), col) = row[t][s];
  };

  for (int cusp = 0; cusp < cusp_count(); ++cusp) {
    const auto& curves = peripheral_curves(cusp);
    if (!curves) continue;
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(3 * n), cols);
    flatten(curves->meridian.exponents, basis, 0);
    flatten(curves->longitude.exponents, basis, 1);
    for (size_t e = 0; e < edge_rows.size(); ++e)
      flatten(edge_rows[e], basis, static_cast<Eigen::Index>(2 + e));
    for (size_t t = 0; t < n; ++t)
      for (size_t s = 0; s < 3; ++s)
        basis(static_cast<Eigen::Index>(3 * t + s),
              static_cast<Eigen::Index>(2 + edge_rows.size() + t)) = 1.0;
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(basis);

    const auto& loops = peripheral_loops(cusp);
    std::vector<HomologyRow> rows;
    for (size_t i = 0; i < loops.size(); ++i) {
      Eigen::VectorXd rhs(static_cast<Eigen::Index>(3 * n));
      for (size_t t = 0; t < n; ++t)
        for (size_t s = 0; s < 3; ++s)
          rhs(static_cast<Eigen::Index>(3 * t + s)) = loops[i].holonomy_row[t][s];
      const Eigen::VectorXd x = cod.solve(rhs);
      const double fit = (basis * x - rhs).cwiseAbs().maxCoeff();
      const double a = x(0), b = x(1);
      if (fit > 1e-8 || std::abs(a - std::round(a)) > 1e-6 ||
          std::abs(b - std::round(b)) > 1e-6)
        throw Error(ErrorKind::PeripheralMismatch,
                    "cusp " + std::to_string(cusp) +
                        ": link loop is not an integer combination of the "
                        "meridian and longitude rows");
      HomologyRow r{{std::lround(a), std::lround(b)}, std::vector<long>(loops.size(), 0)};
      r.combo[i] = 1;
      rows.push_back(std::move(r));
    }
    auto mer = extract_pivot(rows, 0);
    auto lon = extract_pivot(rows, 1);
    if (!mer || !lon)
      throw Error(ErrorKind::PeripheralMismatch,
                  "cusp " + std::to_string(cusp) +
                      ": meridian and longitude rows are not a basis of the "
                      "cusp torus homology");
    // mer = (1, k) -> subtract k * lon to get (1, 0).
    const long k = mer->coords[1];
    PeripheralWords words;
    for (size_t i = 0; i < loops.size(); ++i) {
      const long em = mer->combo[i] - k * lon->combo[i];
      const long el = lon->combo[i];
      if (em != 0)
        words.meridian = concat(words.meridian, power(loops[i].word, static_cast<int>(em)));
      if (el != 0)
        words.longitude = concat(words.longitude, power(loops[i].word, static_cast<int>(el)));
    }
    peripheral_words_[static_cast<size_t>(cusp)] = std::move(words);
  }
}

// ---------------------------------------------------------------------------
// TRIG JSON

namespace {

using nlohmann::json;

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw malformed(what + " must be an integer");
  return j.get<int>();
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw malformed(std::string("missing field '") + key + "'");
  return obj.at(key);
}

PeripheralRow parse_row(const json& j, int tet_count) {
  PeripheralRow row;
  const json& rows = field(j, "rows");
  if (!rows.is_array()) throw malformed("peripheral rows must be an array");
  for (const json& triple : rows) {
    if (!triple.is_array() || triple.size() != 3)
      throw malformed("peripheral row entries must be integer triples");
    row.exponents.push_back({as_int(triple[0], "exponent"),
                             as_int(triple[1], "exponent"),
                             as_int(triple[2], "exponent")});
  }
  if (static_cast<int>(row.exponents.size()) != tet_count)
    throw malformed("peripheral rows need one triple per tetrahedron");
  row.pi_offset = j.contains("pi_offset") ? as_int(j.at("pi_offset"), "pi_offset") : 0;
  return row;
}

nlohmann::ordered_json row_json(const PeripheralRow& row) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& e : row.exponents) rows.push_back({e[0], e[1], e[2]});
  return nlohmann::ordered_json{{"rows", rows}, {"pi_offset", row.pi_offset}};
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw malformed("top level must be an object");

  TriangulationData data;
  data.tet_count = as_int(field(doc, "tet_count"), "tet_count");
  data.cusp_count = as_int(field(doc, "cusp_count"), "cusp_count");
  if (data.tet_count <= 0) throw malformed("tet_count must be positive");
  if (data.cusp_count <= 0) throw malformed("cusp_count must be positive");

  const json& gluings = field(doc, "gluings");
  if (!gluings.is_array()) throw malformed("gluings must be an array");
  for (const json& g : gluings) {
    FaceGluing fg;
    fg.tet = as_int(field(g, "tet"), "tet");
    fg.face = as_int(field(g, "face"), "face");
    fg.to_tet = as_int(field(g, "to_tet"), "to_tet");
    fg.to_face = as_int(field(g, "to_face"), "to_face");
    const json& perm = field(g, "perm");
    if (!perm.is_array() || perm.size() != 4)
      throw malformed("perm must have four entries");
    for (size_t i = 0; i < 4; ++i) fg.perm[i] = as_int(perm[i], "perm entry");
    data.gluings.push_back(fg);
  }

  if (doc.contains("vertex_cusp") && !doc.at("vertex_cusp").is_null()) {
    std::vector<std::array<int, 4>> labels;
    for (const json& row : doc.at("vertex_cusp")) {
      if (!row.is_array() || row.size() != 4)
        throw malformed("vertex_cusp rows must have four entries");
      labels.push_back({as_int(row[0], "cusp label"), as_int(row[1], "cusp label"),
                        as_int(row[2], "cusp label"), as_int(row[3], "cusp label")});
    }
    data.vertex_cusp = std::move(labels);
  }

  if (doc.contains("peripheral") && !doc.at("peripheral").is_null()) {
    const json& per = doc.at("peripheral");
    if (!per.is_array()) throw malformed("peripheral must be an array");
    for (const json& entry : per) {
      if (entry.is_null()) {
        data.peripheral.emplace_back();
        continue;
      }
      data.peripheral.push_back(PeripheralCurves{
          parse_row(field(entry, "meridian"), data.tet_count),
          parse_row(field(entry, "longitude"), data.tet_count)});
    }
  }

  if (doc.contains("filling") && !doc.at("filling").is_null()) {
    const json& fill = doc.at("filling");
    if (!fill.is_array()) throw malformed("filling must be an array");
    for (const json& entry : fill) {
      if (entry.is_null() || (entry.is_string() && entry == "unfilled")) {
        data.filling.emplace_back();
        continue;
      }
      if (!entry.is_array() || entry.size() != 2)
        throw malformed("filling entries must be null or [p, q]");
      data.filling.push_back(Filling{as_int(entry[0], "p"), as_int(entry[1], "q")});
    }
  }

  return Triangulation(std::move(data));
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw malformed("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_triangulation(buf.str());
}

std::string to_canonical_json(const Triangulation& t) {
  using ojson = nlohmann::ordered_json;
  ojson out;
  out["tet_count"] = t.tet_count();
  out["cusp_count"] = t.cusp_count();
  ojson gluings = ojson::array();
  for (int tet = 0; tet < t.tet_count(); ++tet)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = t.structure().gluing(tet, f);
      gluings.push_back(ojson{{"tet", g.tet},
                              {"face", g.face},
                              {"to_tet", g.to_tet},
                              {"to_face", g.to_face},
                              {"perm", {g.perm[0], g.perm[1], g.perm[2], g.perm[3]}}});
    }
  out["gluings"] = std::move(gluings);
  ojson labels = ojson::array();
  for (int tet = 0; tet < t.tet_count(); ++tet) {
    ojson row = ojson::array();
    for (int v = 0; v < 4; ++v) row.push_back(t.cusp_of({tet, v}));
    labels.push_back(std::move(row));
  }
  out["vertex_cusp"] = std::move(labels);
  ojson per = ojson::array();
  ojson fill = ojson::array();
  for (int c = 0; c < t.cusp_count(); ++c) {
    const auto& curves = t.peripheral_curves(c);
    per.push_back(curves ? ojson{{"meridian", row_json(curves->meridian)},
                                 {"longitude", row_json(curves->longitude)}}
                         : ojson(nullptr));
    const auto& f = t.filling(c);
    fill.push_back(f ? ojson{f->p, f->q} : ojson(nullptr));
  }
  out["peripheral"] = std::move(per);
  out["filling"] = std::move(fill);
  return out.dump();
}

}  // namespace cuspvol
