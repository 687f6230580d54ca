#pragma once

// Admissible initial-data paths on the lattice {(j,k) : j + k even}.

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncts/error.hpp"

namespace ncts {

using Rational = boost::multiprecision::cpp_rational;

struct LatticePoint {
  int j = 0;
  int k = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline bool is_lattice_point(int j, int k) { return ((j + k) % 2 + 2) % 2 == 0; }

enum class Step { up, down };

/// A zigzag path m_j on the finite window [lo, hi] together with the atom
/// label carried at each site. Site j holds the pair (t_label, t_label^bullet).
/// Fresh paths use label(j) == j. A stale site has been mutated: its atom
/// stands for the solver value at the new height rather than fresh data.
class InitialPath {
 public:
  InitialPath(int lo, std::vector<int> heights) : lo_(lo), heights_(std::move(heights)) {
    labels_.resize(heights_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] = lo_ + static_cast<int>(i);
    stale_.assign(heights_.size(), false);
    validate();
  }

  InitialPath(int lo, std::vector<int> heights, std::vector<int> labels, std::vector<bool> stale)
      : lo_(lo), heights_(std::move(heights)), labels_(std::move(labels)), stale_(std::move(stale)) {
    if (labels_.size() != heights_.size() || stale_.size() != heights_.size()) {
      throw Error(Errc::not_admissible, "labels/stale size mismatch");
    }
    validate();
  }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(heights_.size()) - 1; }
  std::size_t size() const noexcept { return heights_.size(); }
  bool contains(int j) const noexcept { return j >= lo() && j <= hi(); }

  int height(int j) const { return heights_.at(offset(j)); }
  int label(int j) const { return labels_.at(offset(j)); }
  bool stale(int j) const { return stale_.at(offset(j)); }

  const std::vector<int>& heights() const noexcept { return heights_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<bool>& stale_flags() const noexcept { return stale_; }

  /// Direction of the step from site j to site j + 1.
  Step step(int j) const {
    if (!contains(j) || !contains(j + 1)) throw Error(Errc::out_of_window, "no step at site " + std::to_string(j));
    return height(j + 1) > height(j) ? Step::up : Step::down;
  }

  bool has_identity_labels() const {
    for (int j = lo(); j <= hi(); ++j) {
      if (label(j) != j) return false;
    }
    return true;
  }

  /// Window site whose atom carries the given label, if any.
  std::optional<int> site_of_label(int lbl) const {
    for (int j = lo(); j <= hi(); ++j) {
      if (label(j) == lbl) return j;
    }
    return std::nullopt;
  }

  friend bool operator==(const InitialPath&, const InitialPath&) = default;

 private:
  std::size_t offset(int j) const {
    if (!contains(j)) throw Error(Errc::out_of_window, "site " + std::to_string(j) + " outside window");
    return static_cast<std::size_t>(j - lo_);
  }

  void validate() const {
    if (heights_.empty()) throw Error(Errc::not_admissible, "empty path");
    for (std::size_t i = 0; i < heights_.size(); ++i) {
      const int j = lo_ + static_cast<int>(i);
      if (!is_lattice_point(j, heights_[i])) {
        throw Error(Errc::not_admissible, "parity violated at site " + std::to_string(j));
      }
      if (i > 0 && std::abs(heights_[i] - heights_[i - 1]) != 1) {
        throw Error(Errc::not_admissible, "height jump at site " + std::to_string(j));
      }
    }
  }

  int lo_;
  std::vector<int> heights_;
  std::vector<int> labels_;
  std::vector<bool> stale_;
};

/// The flat path m_j = j mod 2 on [lo, hi].
inline InitialPath fundamental_path(int lo, int hi) {
  if (lo >= hi) throw Error(Errc::out_of_window, "fundamental path needs lo < hi");
  std::vector<int> h;
  for (int j = lo; j <= hi; ++j) h.push_back(((j % 2) + 2) % 2);
  return InitialPath(lo, std::move(h));
}

struct Projection {
  int j0 = 0;
  int j1 = 0;
  friend bool operator==(const Projection&, const Projection&) = default;
};

/// Lower and upper projections of a point onto the path. j0 is the largest
/// site l with k - j = m_l - l, j1 the smallest with k + j = l + m_l. A point
/// on the path projects to itself.
inline Projection projections(const InitialPath& path, LatticePoint p) {
  if (!is_lattice_point(p.j, p.k)) throw Error(Errc::bad_parity, "j + k must be even");
  if (!path.contains(p.j)) throw Error(Errc::out_of_window, "site " + std::to_string(p.j) + " outside window");
  const int mj = path.height(p.j);
  if (p.k < mj) throw Error(Errc::below_path, "point lies below the path");
  if (p.k == mj) return {p.j, p.j};

  std::optional<int> j0;
  for (int l = p.j - 1; l >= path.lo(); --l) {
    const int v = path.height(l) - l;
    if (v == p.k - p.j) {
      j0 = l;
      break;
    }
    if (v > p.k - p.j) break;
  }
  std::optional<int> j1;
  for (int l = p.j + 1; l <= path.hi(); ++l) {
    const int v = l + path.height(l);
    if (v == p.k + p.j) {
      j1 = l;
      break;
    }
    if (v > p.k + p.j) break;
  }
  if (!j0 || !j1) throw Error(Errc::out_of_window, "projection escapes the data window");
  return {*j0, *j1};
}

/// Height flip m_l -> m_l + 2 * direction. The site's atom is marked stale.
inline InitialPath mutate(const InitialPath& path, int l, int direction) {
  if (direction != 1 && direction != -1) throw Error(Errc::not_admissible, "direction must be +-1");
  if (!path.contains(l)) throw Error(Errc::out_of_window, "site " + std::to_string(l) + " outside window");
  auto heights = path.heights();
  auto stale = path.stale_flags();
  const auto i = static_cast<std::size_t>(l - path.lo());
  heights[i] += 2 * direction;
  stale[i] = true;
  for (std::size_t n : {i - 1, i + 1}) {
    if (n < heights.size() && std::abs(heights[n] - heights[i]) != 1) {
      throw Error(Errc::not_admissible, "mutation at site " + std::to_string(l) + " breaks the zigzag");
    }
  }
  return InitialPath(path.lo(), std::move(heights), path.labels(), std::move(stale));
}

/// Commutative exchange t' = (1 + t_prev t_next) / t_here.
inline Rational classical_mutation_value(const Rational& t_prev, const Rational& t_here, const Rational& t_next) {
  if (t_here == 0) throw Error(Errc::division_by_zero, "mutation at a zero value");
  return (1 + t_prev * t_next) / t_here;
}

// Path specs: "flat:<lo>..<hi>" or "j0=<int>; heights=<comma list>".

namespace detail {

inline int parse_int_strict(std::string_view s, std::string_view what) {
  std::string str(s);
  // trim
  const auto b = str.find_first_not_of(" \t");
  const auto e = str.find_last_not_of(" \t");
  if (b == std::string::npos) throw Error(Errc::parse_error, "missing " + std::string(what));
  str = str.substr(b, e - b + 1);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(str, &used);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad integer for " + std::string(what) + ": '" + str + "'");
  }
  if (used != str.size()) throw Error(Errc::parse_error, "bad integer for " + std::string(what) + ": '" + str + "'");
  return v;
}

/// "a..b" -> (a, b)
inline std::pair<int, int> parse_range(std::string_view s, std::string_view what) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) throw Error(Errc::parse_error, std::string(what) + " needs the form a..b");
  return {parse_int_strict(s.substr(0, dots), what), parse_int_strict(s.substr(dots + 2), what)};
}

}  // namespace detail

inline InitialPath parse_path_spec(std::string_view spec) {
  if (spec.rfind("flat:", 0) == 0) {
    auto [lo, hi] = detail::parse_range(spec.substr(5), "flat range");
    return fundamental_path(lo, hi);
  }
  const auto semi = spec.find(';');
  if (semi == std::string_view::npos) throw Error(Errc::parse_error, "path spec needs 'flat:a..b' or 'j0=..; heights=..'");
  std::string_view first = spec.substr(0, semi);
  std::string_view second = spec.substr(semi + 1);
  auto strip = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  first = strip(first);
  second = strip(second);
  if (first.rfind("j0=", 0) != 0 || second.rfind("heights=", 0) != 0) {
    throw Error(Errc::parse_error, "path spec needs 'j0=<int>; heights=<list>'");
  }
  const int lo = detail::parse_int_strict(first.substr(3), "j0");
  std::vector<int> heights;
  std::string_view list = second.substr(8);
  while (!list.empty()) {
    const auto comma = list.find(',');
    heights.push_back(detail::parse_int_strict(list.substr(0, comma), "height"));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return InitialPath(lo, std::move(heights));
}

inline std::string to_spec(const InitialPath& path) {
  std::ostringstream os;
  os << "j0=" << path.lo() << "; heights=";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path.heights()[i];
  return os.str();
}

inline LatticePoint parse_point(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(Errc::parse_error, "point needs the form j,k");
  return {detail::parse_int_strict(s.substr(0, comma), "j"), detail::parse_int_strict(s.substr(comma + 1), "k")};
}

}  // namespace ncts
