#pragma once

// Oriented two-letter rewriting modulo the nearest-neighbour relations of the
// initial data. Each relation is a length-4 relator; every way of reading it
// as (two letters) = (two letters) gives a rule, oriented so that the index
// inversion count of the word drops.

#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncts/error.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

using LetterPair = std::pair<Generator, Generator>;

/// Relator equal to 1 for the step between sites j and j + 1.
///   up:   t_j^{-1} t_{j+1} t_j^* (t_{j+1}^*)^{-1}
///   down: t_j t_{j+1}^{-1} (t_j^*)^{-1} t_{j+1}^*
inline std::array<Generator, 4> step_relator(int a, int b, Step step) {
  if (step == Step::up) return {atom(a, -1), atom(b, 1), atom_bullet(a, 1), atom_bullet(b, -1)};
  return {atom(a, 1), atom(b, -1), atom_bullet(a, -1), atom_bullet(b, 1)};
}

/// All rules xy -> zw derived from the path's relators whose left side has an
/// index inversion. The right side never does.
inline std::map<LetterPair, LetterPair> rewrite_rules(const InitialPath& path) {
  std::map<LetterPair, LetterPair> rules;
  for (int j = path.lo(); j < path.hi(); ++j) {
    const auto r = step_relator(path.label(j), path.label(j + 1), path.step(j));
    std::array<Generator, 4> rinv{r[3].inverse(), r[2].inverse(), r[1].inverse(), r[0].inverse()};
    for (const auto& rel : {r, rinv}) {
      for (std::size_t s = 0; s < 4; ++s) {
        const Generator x = rel[s], y = rel[(s + 1) % 4];
        // x y (u v) = 1  =>  x y = v^{-1} u^{-1}
        const Generator u = rel[(s + 2) % 4], v = rel[(s + 3) % 4];
        const Generator z = v.inverse(), w = u.inverse();
        if (x.index > y.index) rules.emplace(LetterPair{x, y}, LetterPair{z, w});
      }
    }
  }
  return rules;
}

/// Rewrites the letters at positions pos, pos + 1 with the unique rule whose
/// left side they match. Letters must be nearest neighbours on the path.
inline std::optional<Word> apply_relation(const InitialPath& path, const Word& w, std::size_t pos) {
  if (pos + 1 >= w.size()) throw Error(Errc::out_of_window, "no letter pair at that position");
  const auto& x = w[pos];
  const auto& y = w[pos + 1];
  const auto sx = path.site_of_label(x.index);
  const auto sy = path.site_of_label(y.index);
  if (!sx || !sy) throw Error(Errc::out_of_window, "letter outside the path window");
  if (std::abs(*sx - *sy) != 1) throw Error(Errc::non_adjacent_pair, "relations only link neighbouring sites");
  const auto rules = rewrite_rules(path);
  auto it = rules.find({x, y});
  if (it == rules.end()) return std::nullopt;
  std::vector<Generator> letters = w.letters();
  letters[pos] = it->second.first;
  letters[pos + 1] = it->second.second;
  return Word(letters);
}

namespace detail {

inline Word rewrite_word(const std::map<LetterPair, LetterPair>& rules, Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      auto it = rules.find({w[i], w[i + 1]});
      if (it == rules.end()) continue;
      std::vector<Generator> letters = w.letters();
      letters[i] = it->second.first;
      letters[i + 1] = it->second.second;
      w = Word(letters);
      changed = true;
      break;
    }
  }
  return w;
}

}  // namespace detail

/// Fixed point of the oriented rules applied leftmost-first. Each rule drops
/// the inversion count by exactly one and free reduction never raises it, so
/// the loop terminates. The result is well-ordered when the rules suffice.
inline NCPolynomial rewrite_well_ordered(const NCPolynomial& p, const InitialPath& path) {
  for (const auto& [w, c] : p.terms()) {
    for (const auto& g : w.letters()) {
      if (!path.site_of_label(g.index)) {
        throw Error(Errc::out_of_window, "atom t" + std::to_string(g.index) + " not on the path");
      }
    }
  }
  const auto rules = rewrite_rules(path);
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) out.add_term(detail::rewrite_word(rules, w), c);
  return out;
}

}  // namespace ncts
