#pragma once

// The flat 2x2 connection: U/V chips, ordered path products and the closed
// form T_{j,k} = (M(j0, j1))_{1,1} t_{j1}.

#include <array>
#include <string>

#include "ncts/error.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

/// 2x2 matrix with NCPolynomial entries, indexed from 1 like the connectors.
class ConnectionMatrix {
 public:
  ConnectionMatrix() = default;
  ConnectionMatrix(NCPolynomial a11, NCPolynomial a12, NCPolynomial a21, NCPolynomial a22)
      : entries_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

  static ConnectionMatrix identity() {
    return {NCPolynomial::one(), NCPolynomial::zero(), NCPolynomial::zero(), NCPolynomial::one()};
  }

  const NCPolynomial& operator()(int i, int j) const { return entries_.at(index(i, j)); }
  NCPolynomial& operator()(int i, int j) { return entries_.at(index(i, j)); }

  friend ConnectionMatrix operator*(const ConnectionMatrix& a, const ConnectionMatrix& b) {
    ConnectionMatrix out;
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        NCPolynomial s = a(i, 1) * b(1, j);
        s += a(i, 2) * b(2, j);
        out(i, j) = std::move(s);
      }
    }
    return out;
  }

  friend bool operator==(const ConnectionMatrix&, const ConnectionMatrix&) = default;

 private:
  static std::size_t index(int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 2) throw Error(Errc::out_of_window, "connector index must be 1 or 2");
    return static_cast<std::size_t>((i - 1) * 2 + (j - 1));
  }

  std::array<NCPolynomial, 4> entries_;
};

/// V(a,b) = [[a b^{-1}, (b*)^{-1}], [0, 1]]
inline ConnectionMatrix chip_V(int a, int b) {
  return {NCPolynomial(Word{atom(a), atom(b, -1)}), NCPolynomial(Word{atom_bullet(b, -1)}), NCPolynomial::zero(),
          NCPolynomial::one()};
}

/// U(b,c) = [[1, 0], [c^{-1}, b* (c*)^{-1}]]
inline ConnectionMatrix chip_U(int b, int c) {
  return {NCPolynomial::one(), NCPolynomial::zero(), NCPolynomial(Word{atom(c, -1)}),
          NCPolynomial(Word{atom_bullet(b), atom_bullet(c, -1)})};
}

inline ConnectionMatrix chip_for_step(const InitialPath& path, int j) {
  return path.step(j) == Step::up ? chip_U(path.label(j), path.label(j + 1))
                                  : chip_V(path.label(j), path.label(j + 1));
}

/// Left-to-right product of chips over the section [x, y]; identity when x == y.
inline ConnectionMatrix path_product(const InitialPath& path, int x, int y) {
  if (x > y) throw Error(Errc::out_of_window, "path_product needs x <= y");
  if (!path.contains(x) || !path.contains(y)) throw Error(Errc::out_of_window, "section outside the data window");
  auto m = ConnectionMatrix::identity();
  for (int j = x; j < y; ++j) m = m * chip_for_step(path, j);
  return m;
}

/// T_{j,k} for a point weakly above the path.
inline NCPolynomial solve(const InitialPath& path, LatticePoint p) {
  const auto [j0, j1] = projections(path, p);
  // Only the first row of the running product feeds the (1,1) entry.
  NCPolynomial row1 = NCPolynomial::one();
  NCPolynomial row2;
  for (int j = j0; j < j1; ++j) {
    const auto chip = chip_for_step(path, j);
    NCPolynomial n1 = row1 * chip(1, 1);
    n1 += row2 * chip(2, 1);
    NCPolynomial n2 = row1 * chip(1, 2);
    n2 += row2 * chip(2, 2);
    row1 = std::move(n1);
    row2 = std::move(n2);
  }
  return row1 * NCPolynomial(atom(path.label(j1)));
}

/// T^bullet_{j,k}, the involution image of T_{j,k}.
inline NCPolynomial solve_bullet(const InitialPath& path, LatticePoint p) { return involution(solve(path, p)); }

/// Reflection through the path vertex (a, b): p_j = b - m_{a-j}, with site j
/// carrying the atom of site a - j.
inline InitialPath reflect(const InitialPath& path, int a, int b) {
  if (!path.contains(a) || path.height(a) != b) {
    throw Error(Errc::not_on_path, "(" + std::to_string(a) + "," + std::to_string(b) + ") is not a path vertex");
  }
  const int lo = a - path.hi();
  std::vector<int> heights, labels;
  std::vector<bool> stale;
  for (int j = lo; j <= a - path.lo(); ++j) {
    heights.push_back(b - path.height(a - j));
    labels.push_back(path.label(a - j));
    stale.push_back(path.stale(a - j));
  }
  return InitialPath(lo, std::move(heights), std::move(labels), std::move(stale));
}

}  // namespace ncts
