#pragma once

// Non-commutative networks: one chip per step of a path section, an edge
// i -> j for each non-zero chip matrix entry, and paths weighted by the
// product of their edge weights in traversal order.

#include <sstream>
#include <string>
#include <vector>

#include "ncts/connection.hpp"
#include "ncts/format.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

enum class ChipType { U, V };

struct ChipEdge {
  int from = 1;
  int to = 1;
  Word weight;
};

struct Chip {
  ChipType type = ChipType::V;
  int left_site = 0;   // face label a
  int right_site = 0;  // face label b
  std::vector<ChipEdge> edges;  // ordered by (from, to)
};

struct NetworkGraph {
  int j0 = 0;
  int j1 = 0;
  std::vector<Chip> chips;
};

struct Transition {
  std::size_t chip = 0;
  int from = 1;
  int to = 1;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct NetworkPath {
  std::vector<Transition> transitions;
  Word weight;
};

inline Chip make_chip(ChipType type, int left_site, int right_site, const ConnectionMatrix& m) {
  Chip chip{type, left_site, right_site, {}};
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const auto& e = m(i, j);
      if (e.is_zero()) continue;
      // Chip entries are single words with coefficient one.
      chip.edges.push_back({i, j, e.terms().begin()->first});
    }
  }
  return chip;
}

inline NetworkGraph build_network(const InitialPath& path, int j0, int j1) {
  if (j0 > j1) throw Error(Errc::out_of_window, "network needs j0 <= j1");
  if (!path.contains(j0) || !path.contains(j1)) throw Error(Errc::out_of_window, "section outside the data window");
  NetworkGraph net{j0, j1, {}};
  for (int j = j0; j < j1; ++j) {
    const auto type = path.step(j) == Step::up ? ChipType::U : ChipType::V;
    net.chips.push_back(make_chip(type, j, j + 1, chip_for_step(path, j)));
  }
  return net;
}

/// All connector paths from `entry` to `exit`, in lexicographic order of the
/// transition choices (target connector 1 before 2 at each chip).
inline std::vector<NetworkPath> enumerate_paths(const NetworkGraph& net, int entry, int exit) {
  std::vector<NetworkPath> out;
  NetworkPath current;
  // Explicit DFS stack of (chip position, edge cursor).
  struct Frame {
    int connector;
    std::size_t edge;
    Word weight;
  };
  std::vector<Frame> stack;
  stack.push_back({entry, 0, Word{}});
  while (!stack.empty()) {
    const std::size_t depth = stack.size() - 1;
    if (depth == net.chips.size()) {
      if (stack.back().connector == exit) out.push_back({current.transitions, stack.back().weight});
      stack.pop_back();
      if (!current.transitions.empty()) current.transitions.pop_back();
      continue;
    }
    auto& frame = stack.back();
    const auto& edges = net.chips[depth].edges;
    while (frame.edge < edges.size() && edges[frame.edge].from != frame.connector) ++frame.edge;
    if (frame.edge == edges.size()) {
      stack.pop_back();
      if (!current.transitions.empty()) current.transitions.pop_back();
      continue;
    }
    const auto& e = edges[frame.edge++];
    current.transitions.push_back({depth, e.from, e.to});
    Word w = frame.weight * e.weight;
    stack.push_back({e.to, 0, std::move(w)});
  }
  return out;
}

/// Sum of path weights from `entry` to `exit`; the matching entry of the
/// chip product.
inline NCPolynomial partition_function(const NetworkGraph& net, int entry, int exit) {
  NCPolynomial z;
  for (const auto& p : enumerate_paths(net, entry, exit)) z.add_term(p.weight, 1);
  return z;
}

inline std::string to_dot(const NetworkGraph& net) {
  std::ostringstream os;
  os << "digraph network {\n  rankdir=LR;\n  node [shape=point];\n";
  const std::size_t n = net.chips.size();
  for (std::size_t c = 0; c <= n; ++c) {
    os << "  c" << c << "_1 [pos=\"" << c << ",1!\"];\n";
    os << "  c" << c << "_2 [pos=\"" << c << ",0!\"];\n";
  }
  for (std::size_t c = 0; c < n; ++c) {
    const auto& chip = net.chips[c];
    os << "  // chip " << c << ": " << (chip.type == ChipType::U ? "U" : "V") << "(t" << chip.left_site << ",t"
       << chip.right_site << ")\n";
    for (const auto& e : chip.edges) {
      os << "  c" << c << "_" << e.from << " -> c" << c + 1 << "_" << e.to;
      if (!e.weight.empty()) os << " [label=\"" << to_text(e.weight) << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ncts
