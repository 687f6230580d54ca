#pragma once

// Generalised 4-6 ladders and their non-commutative dimer model.
//
// The ladder of a path section [j0, j1] is a 2-row grid. Each inner face
// j0 < i < j1 is a square (one column gap) when the steps into and out of
// site i differ, and a hexagon (two column gaps with the middle rung
// removed) when they agree. Boundary faces j0 and j1 sit left of the first
// and right of the last rung. Rows are 0 (bottom) and 1 (top); vertex
// (row, col) is black when row + col is even, so the lower-left corner is
// black.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ncts/error.hpp"
#include "ncts/format.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

enum class FaceKind { boundary_left, square, hexagon, boundary_right, boundary_single };

struct Face {
  int site = 0;          // face label j
  int atom = 0;          // atom label carried by the site
  FaceKind kind = FaceKind::square;
  bool black = true;     // colour of the lower-left vertex
  int left_col = -1;     // rung column on the left side, -1 if none
  int right_col = -1;    // rung column on the right side, -1 if none
};

struct LadderGraph {
  int j0 = 0;
  int j1 = 0;
  int columns = 0;
  std::vector<bool> rung_present;
  std::vector<Face> faces;  // ascending by label
};

enum class EdgeKind { rung, horizontal };

/// A rung sits at column `col`; a horizontal joins (row, col) to (row, col+1).
struct DimerEdge {
  EdgeKind kind = EdgeKind::rung;
  int row = 0;
  int col = 0;
  auto operator<=>(const DimerEdge&) const = default;
};

struct Matching {
  std::vector<DimerEdge> edges;  // sorted
  Word weight;
};

/// Dimer occupation on the edges bounding one inner face.
struct FacePattern {
  bool left_rung = false;
  bool right_rung = false;
  unsigned gaps = 0;  // bit 0: first column gap of the face, bit 1: second (hexagons)
  auto operator<=>(const FacePattern&) const = default;
};

enum class FaceWeight { one, t, t_inv, tb, tb_inv };

inline LadderGraph build_ladder(const InitialPath& path, int j0, int j1) {
  if (j0 > j1) throw Error(Errc::out_of_window, "ladder needs j0 <= j1");
  if (!path.contains(j0) || !path.contains(j1)) throw Error(Errc::out_of_window, "section outside the data window");
  LadderGraph g;
  g.j0 = j0;
  g.j1 = j1;
  if (j0 == j1) {
    g.faces.push_back({j0, path.label(j0), FaceKind::boundary_single, true, -1, -1});
    return g;
  }
  if (path.step(j0) != Step::down || path.step(j1 - 1) != Step::up) {
    throw Error(Errc::invalid_section, "ladder sections start with a down step and end with an up step");
  }
  std::vector<int> removed;
  g.faces.push_back({j0, path.label(j0), FaceKind::boundary_left, true, -1, 0});
  int col = 0;
  for (int i = j0 + 1; i < j1; ++i) {
    const Step in = path.step(i - 1);
    const Step out = path.step(i);
    const bool black = in == Step::down;
    if (in != out) {
      g.faces.push_back({i, path.label(i), FaceKind::square, black, col, col + 1});
      col += 1;
    } else {
      g.faces.push_back({i, path.label(i), FaceKind::hexagon, black, col, col + 2});
      removed.push_back(col + 1);
      col += 2;
    }
  }
  g.faces.push_back({j1, path.label(j1), FaceKind::boundary_right, (col % 2) == 0, col, -1});
  g.columns = col + 1;
  g.rung_present.assign(static_cast<std::size_t>(g.columns), true);
  for (int c : removed) g.rung_present[static_cast<std::size_t>(c)] = false;
  return g;
}

/// Frozen face-weight table. Keys are (face kind, lower-left colour, dimer
/// pattern); only patterns that occur in a perfect matching are listed.
/// Squares: gap occupied / both rungs / no rung / one rung.
/// Hexagons: which gap is occupied, and the rung on the opposite side.
inline std::optional<FaceWeight> face_weight(FaceKind kind, bool black, const FacePattern& p) {
  if (kind == FaceKind::square) {
    if (p.gaps == 1 && !p.left_rung && !p.right_rung) return black ? FaceWeight::t_inv : FaceWeight::tb_inv;
    if (p.gaps != 0) return std::nullopt;
    if (p.left_rung && p.right_rung) return black ? FaceWeight::tb_inv : FaceWeight::t_inv;
    if (!p.left_rung && !p.right_rung) return black ? FaceWeight::tb : FaceWeight::t;
    return FaceWeight::one;
  }
  if (kind == FaceKind::hexagon) {
    if (p.gaps == 1 && !p.left_rung) {
      if (black) return p.right_rung ? FaceWeight::t_inv : FaceWeight::one;
      return p.right_rung ? FaceWeight::tb_inv : FaceWeight::one;
    }
    if (p.gaps == 2 && !p.right_rung) {
      if (black) return p.left_rung ? FaceWeight::tb_inv : FaceWeight::one;
      return p.left_rung ? FaceWeight::t_inv : FaceWeight::one;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

inline void append_face_weight(std::vector<Generator>& letters, FaceWeight w, int atom_label) {
  switch (w) {
    case FaceWeight::one: break;
    case FaceWeight::t: letters.push_back(atom(atom_label, 1)); break;
    case FaceWeight::t_inv: letters.push_back(atom(atom_label, -1)); break;
    case FaceWeight::tb: letters.push_back(atom_bullet(atom_label, 1)); break;
    case FaceWeight::tb_inv: letters.push_back(atom_bullet(atom_label, -1)); break;
  }
}

/// Dimer occupation around a face, read off the matching's edge set.
inline FacePattern face_pattern(const Face& f, const std::set<DimerEdge>& edges) {
  auto has_rung = [&](int c) { return c >= 0 && edges.count({EdgeKind::rung, 0, c}) > 0; };
  auto has_gap = [&](int c) { return edges.count({EdgeKind::horizontal, 0, c}) > 0; };
  FacePattern p;
  p.left_rung = has_rung(f.left_col);
  p.right_rung = has_rung(f.right_col);
  if (f.kind == FaceKind::square || f.kind == FaceKind::hexagon) {
    if (has_gap(f.left_col)) p.gaps |= 1u;
    if (f.kind == FaceKind::hexagon && has_gap(f.left_col + 1)) p.gaps |= 2u;
  }
  return p;
}

/// Product of face weights over faces in ascending label order. A boundary
/// face contributes t^{1-D} where D counts dimers on its rung.
inline Word matching_weight(const LadderGraph& g, const Matching& m) {
  const std::set<DimerEdge> edges(m.edges.begin(), m.edges.end());
  std::vector<Generator> letters;
  for (const auto& f : g.faces) {
    switch (f.kind) {
      case FaceKind::boundary_single:
        letters.push_back(atom(f.atom));
        break;
      case FaceKind::boundary_left:
      case FaceKind::boundary_right: {
        const int col = f.kind == FaceKind::boundary_left ? f.right_col : f.left_col;
        if (edges.count({EdgeKind::rung, 0, col}) == 0) letters.push_back(atom(f.atom));
        break;
      }
      case FaceKind::square:
      case FaceKind::hexagon: {
        const auto w = face_weight(f.kind, f.black, face_pattern(f, edges));
        if (!w) throw Error(Errc::invalid_section, "face pattern outside the weight table at face " + std::to_string(f.site));
        append_face_weight(letters, *w, f.atom);
        break;
      }
    }
  }
  return Word(letters);
}

namespace detail {

/// Edge set of the matching described by the horizontal occupation of each
/// column gap.
inline std::vector<DimerEdge> edges_from_gaps(const LadderGraph& g, const std::vector<bool>& gaps) {
  std::vector<DimerEdge> edges;
  for (int c = 0; c < g.columns; ++c) {
    const bool in = c > 0 && gaps[static_cast<std::size_t>(c - 1)];
    const bool out = c + 1 < g.columns && gaps[static_cast<std::size_t>(c)];
    if (!in && !out) edges.push_back({EdgeKind::rung, 0, c});
  }
  for (int c = 0; c + 1 < g.columns; ++c) {
    if (gaps[static_cast<std::size_t>(c)]) {
      edges.push_back({EdgeKind::horizontal, 0, c});
      edges.push_back({EdgeKind::horizontal, 1, c});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace detail

/// All perfect matchings, built column by column. Across any column gap a
/// matching uses both horizontals or neither; the state is that bit. Order:
/// unoccupied gap before occupied gap, left to right.
inline std::vector<Matching> enumerate_matchings(const LadderGraph& g) {
  std::vector<Matching> out;
  if (g.columns == 0) {
    Matching m;
    m.weight = matching_weight(g, m);
    out.push_back(std::move(m));
    return out;
  }
  const auto ngaps = static_cast<std::size_t>(g.columns - 1);
  std::vector<bool> gaps(ngaps, false);
  // Column c receives `in` from gap c-1 and chooses gap c.
  auto recurse = [&](auto&& self, int c, bool in) -> void {
    const bool rung = g.rung_present[static_cast<std::size_t>(c)];
    if (c == g.columns - 1) {
      if (in || rung) {
        Matching m{detail::edges_from_gaps(g, gaps), {}};
        m.weight = matching_weight(g, m);
        out.push_back(std::move(m));
      }
      return;
    }
    const auto gi = static_cast<std::size_t>(c);
    if (in) {
      gaps[gi] = false;
      self(self, c + 1, false);
      return;
    }
    if (rung) {
      gaps[gi] = false;
      self(self, c + 1, false);
    }
    gaps[gi] = true;
    self(self, c + 1, true);
    gaps[gi] = false;
  };
  recurse(recurse, 0, false);
  return out;
}

/// Number of perfect matchings by the same transfer, without enumeration.
inline Integer count_matchings(const LadderGraph& g) {
  if (g.columns == 0) return 1;
  Integer free_in = 1;  // ways with gap c-1 unoccupied
  Integer full_in = 0;  // ways with gap c-1 occupied
  for (int c = 0; c + 1 < g.columns; ++c) {
    const bool rung = g.rung_present[static_cast<std::size_t>(c)];
    Integer next_free = full_in + (rung ? free_in : Integer(0));
    Integer next_full = free_in;
    free_in = std::move(next_free);
    full_in = std::move(next_full);
  }
  return free_in + full_in;  // last column: rung or incoming horizontals
}

inline NCPolynomial partition_function(const LadderGraph& g) {
  NCPolynomial z;
  for (const auto& m : enumerate_matchings(g)) z.add_term(m.weight, 1);
  return z;
}

/// True when every vertex of the ladder is covered by exactly one listed edge
/// and every edge exists in the graph.
inline bool is_perfect_matching(const LadderGraph& g, const std::vector<DimerEdge>& edges) {
  std::vector<int> cover(static_cast<std::size_t>(2 * g.columns), 0);
  for (const auto& e : edges) {
    if (e.kind == EdgeKind::rung) {
      if (e.col < 0 || e.col >= g.columns || !g.rung_present[static_cast<std::size_t>(e.col)]) return false;
      ++cover[static_cast<std::size_t>(2 * e.col)];
      ++cover[static_cast<std::size_t>(2 * e.col + 1)];
    } else {
      if (e.col < 0 || e.col + 1 >= g.columns || e.row < 0 || e.row > 1) return false;
      ++cover[static_cast<std::size_t>(2 * e.col + e.row)];
      ++cover[static_cast<std::size_t>(2 * (e.col + 1) + e.row)];
    }
  }
  return std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; });
}

inline std::string to_dot(const LadderGraph& g) {
  std::ostringstream os;
  os << "graph ladder {\n  node [shape=circle, label=\"\", width=0.15, style=filled];\n";
  for (int c = 0; c < g.columns; ++c) {
    for (int r = 0; r < 2; ++r) {
      os << "  v" << r << "_" << c << " [pos=\"" << c << "," << r << "!\", fillcolor=" << ((r + c) % 2 == 0 ? "black" : "white")
         << "];\n";
    }
  }
  for (int c = 0; c < g.columns; ++c) {
    if (g.rung_present[static_cast<std::size_t>(c)]) os << "  v0_" << c << " -- v1_" << c << ";\n";
  }
  for (int c = 0; c + 1 < g.columns; ++c) {
    for (int r = 0; r < 2; ++r) os << "  v" << r << "_" << c << " -- v" << r << "_" << c + 1 << ";\n";
  }
  for (const auto& f : g.faces) {
    double x = 0;
    switch (f.kind) {
      case FaceKind::boundary_left: x = -0.5; break;
      case FaceKind::boundary_right: x = f.left_col + 0.5; break;
      case FaceKind::boundary_single: x = 0; break;
      default: x = (f.left_col + f.right_col) / 2.0; break;
    }
    os << "  f" << f.site << " [shape=plaintext, style=\"\", label=\"t" << f.atom << "\", pos=\"" << x << ",0.5!\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ncts
