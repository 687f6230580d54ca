#pragma once

// Two specialisations of the non-commutative system: the Q-system embedded by
// conjugation with powers of C, and the quantum T-system reached by q-power
// rescalings. Exponents are integers (floor tables) or eighths (alpha, beta).

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ncts/error.hpp"
#include "ncts/field.hpp"
#include "ncts/lattice.hpp"
#include "ncts/oracle.hpp"

namespace ncts {

/// Floor division rounding toward minus infinity.
inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

namespace exponents {

inline int a(int j, int k) { return -floor_div(j - k + 2, 4); }
inline int b(int j, int k) { return floor_div(j + k + 2, 4); }
inline int c(int j, int k) { return floor_div(j + k, 4); }
inline int d(int j, int k) { return -floor_div(j - k, 4); }

// One-variable solutions with a(0) = b(0) = c(0) = d(0) = 0.
inline int a_of(int m) { return -floor_div(m + 1, 2); }
inline int b_of(int m) { return floor_div(m + 1, 2); }
inline int c_of(int m) { return floor_div(m, 2); }
inline int d_of(int m) { return -floor_div(m, 2); }

/// alpha_{j,k} = (2k+1)/4 - (j-k)^2/8, in units of 1/8.
inline int alpha8(int j, int k) { return 4 * k + 2 - (j - k) * (j - k); }
/// beta_{j,k} = (2j-1)/4 - (j-k)^2/8, in units of 1/8.
inline int beta8(int j, int k) { return 4 * j - 2 - (j - k) * (j - k); }

}  // namespace exponents

namespace detail {

struct Tally {
  std::map<std::string, IdentityResult> by_name;
  std::vector<std::string> order;

  void record(const std::string& name, bool ok, LatticePoint where) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      order.push_back(name);
      it = by_name.emplace(name, IdentityResult{name, 0, 0, {}}).first;
    }
    ++it->second.checked;
    if (!ok) {
      ++it->second.failed;
      if (it->second.failures.size() < 8) it->second.failures.push_back(where);
    }
  }

  IdentityReport report(std::uint64_t seed = 0) const {
    IdentityReport r;
    r.seed = seed;
    for (const auto& n : order) r.results.push_back(by_name.at(n));
    return r;
  }
};

}  // namespace detail

/// Floor-exponent system, its derived identities and the closed forms, plus
/// the alpha/beta conditions, for |j|, |k| <= range.
inline IdentityReport check_exponent_system(int range) {
  using namespace exponents;
  detail::Tally t;
  for (int j = -range; j <= range; ++j) {
    for (int k = -range; k <= range; ++k) {
      const LatticePoint at{j, k};
      if (!is_lattice_point(j, k)) {
        t.record("a_shift", a(j + 1, k) == a(j, k - 1), at);
        t.record("a_to_d", a(j, k - 1) == d(j - 1, k) - 1, at);
        t.record("b_to_c", b(j + 1, k) - 1 == c(j, k - 1), at);
        t.record("c_shift", c(j, k - 1) == c(j - 1, k), at);
        t.record("c_to_b", c(j + 1, k) == b(j, k - 1), at);
        t.record("b_shift", b(j, k - 1) == b(j - 1, k), at);
        t.record("d_shift", d(j + 1, k) == d(j, k - 1), at);
        t.record("d_to_a", d(j, k - 1) == a(j - 1, k), at);

        t.record("derived_a_diagonal", a(j, k + 1) == a(j - 1, k), at);
        t.record("derived_b_minus_c_row", b(j - 1, k) - c(j + 1, k) == 0, at);
        t.record("derived_b_minus_c_column", b(j, k + 1) - c(j, k - 1) == 1, at);
        t.record("derived_a_equals_d", a(j, k + 1) == d(j, k - 1), at);

        t.record("alpha_beta_column", alpha8(j, k + 1) - beta8(j, k - 1) == 8, at);
        t.record("alpha_beta_row", alpha8(j - 1, k) - beta8(j + 1, k) == 0, at);
        t.record("alpha_beta_commutation_right",
                 alpha8(j + 1, k) - alpha8(j, k - 1) == beta8(j, k - 1) - beta8(j + 1, k) + 8, at);
        t.record("alpha_beta_commutation_left",
                 alpha8(j, k - 1) - alpha8(j - 1, k) == beta8(j, k - 1) - beta8(j - 1, k) - 8, at);
        t.record("alpha_harmonic", alpha8(j + 1, k) + alpha8(j - 1, k) - alpha8(j, k + 1) - alpha8(j, k - 1) == 0, at);
        t.record("alpha_step",
                 alpha8(j - 1, k) - alpha8(j - 1, k + 2) + alpha8(j, k + 1) - alpha8(j, k - 1) == 8, at);
      } else {
        t.record("gamma_identity_a_d", a(j - 1, k + 1) == d(j, k) && a(j, k) == d(j + 1, k - 1), at);
        t.record("gamma_identity_b_c", b(j - 1, k + 1) == b(j, k) && c(j, k) == c(j + 1, k - 1), at);
        t.record("delta_identity_b_c", b(j, k) == c(j - 1, k - 1) + 1 && b(j + 1, k + 1) == c(j, k) + 1, at);
        t.record("delta_identity_a_d", a(j, k) == a(j + 1, k + 1) && d(j - 1, k - 1) == d(j, k), at);
        const int m_minus = (j - k) / 2;
        const int m_plus = (j + k) / 2;
        t.record("closed_form", a(j, k) == a_of(m_minus) && b(j, k) == b_of(m_plus) && c(j, k) == c_of(m_plus) &&
                                    d(j, k) == d_of(m_minus),
                 at);
      }
    }
  }
  for (int m = -2 * range; m <= 2 * range; ++m) {
    const LatticePoint at{m, 0};
    t.record("one_variable_recursion",
             a_of(m) == d_of(m - 1) - 1 && b_of(m) == c_of(m - 1) + 1 && c_of(m) == b_of(m - 1) && d_of(m) == a_of(m - 1),
             at);
  }
  t.record("initial_values", a_of(0) == 0 && b_of(0) == 0 && c_of(0) == 0 && d_of(0) == 0, {0, 0});
  return t.report();
}

// Q-system ------------------------------------------------------------------

struct QSystemState {
  std::uint64_t seed = 0;
  std::vector<FpMatrix> R;
  FpMatrix C;
  FpMatrix K;
};

inline QSystemState make_qsystem(const FpMatrix& r0, const FpMatrix& r1, std::uint64_t seed = 0) {
  const FpMatrix r0i = invert_or_throw(r0, "R0 singular");
  const FpMatrix r1i = invert_or_throw(r1, "R1 singular");
  QSystemState s;
  s.seed = seed;
  s.R = {r0, r1};
  s.C = r1i * r0 * r1 * r0i;
  s.K = r1 * r0i + r1i * r0i + r1i * r0;
  return s;
}

inline QSystemState sample_qsystem(std::uint64_t p = kMersenne61, int d = kDefaultDim, std::uint64_t seed = 0) {
  detail::check_field(p, d);
  std::mt19937_64 rng(seed);
  const FpMatrix r0 = detail::sample_invertible(d, p, rng, false);
  const FpMatrix r1 = detail::sample_invertible(d, p, rng, false);
  return make_qsystem(r0, r1, seed);
}

/// R_{n+1} = (R_n + R_n^{-1}) R_{n-1}^{-1} R_n up to n_max.
inline QSystemState qsystem_iterate(QSystemState state, int n_max) {
  while (static_cast<int>(state.R.size()) <= n_max) {
    const std::size_t n = state.R.size() - 1;
    const FpMatrix& rn = state.R[n];
    const FpMatrix rni = invert_or_throw(rn, "singular R_n");
    const FpMatrix rpi = invert_or_throw(state.R[n - 1], "singular R_n");
    state.R.push_back((rn + rni) * rpi * rn);
  }
  return state;
}

/// Conservation of C and K and both forms of the relation, over the iterated range.
inline IdentityReport check_qsystem(const QSystemState& s) {
  detail::Tally t;
  const FpMatrix one = FpMatrix::identity(s.C.dim(), s.C.modulus());
  const int n_max = static_cast<int>(s.R.size()) - 1;
  for (int n = 0; n < n_max; ++n) {
    const FpMatrix& rn = s.R[n];
    const FpMatrix& rn1 = s.R[n + 1];
    const FpMatrix rni = invert_or_throw(rn, "singular R_n");
    const FpMatrix rn1i = invert_or_throw(rn1, "singular R_n");
    const LatticePoint at{n, 0};
    t.record("c_conserved", rn1i * rn * rn1 * rni == s.C, at);
    t.record("quasi_commutation", rn * rn1 == rn1 * s.C * rn, at);
    if (n >= 1) {
      const FpMatrix& rp = s.R[n - 1];
      t.record("k_conserved", rn1 * rni + rni * rp == s.K, at);
      t.record("qsystem_relation", rn1 * rni * rp == rn + rni, at);
      t.record("qsystem_relation_with_c", rn1 * s.C * rp == one + rn * rn, at);
    }
  }
  return t.report(s.seed);
}

/// T_{j,k} = C^{-a} R_k C^{b} and T*_{j,k} = C^{-c} R_k C^{d}, checked against
/// the T-system relations, quasi-periodicity in j and the reduced Gamma, Delta.
inline IdentityReport embed_qsystem(const QSystemState& s, const Window& w) {
  using namespace exponents;
  detail::Tally t;
  const int n_max = static_cast<int>(s.R.size()) - 1;
  const FpMatrix one = FpMatrix::identity(s.C.dim(), s.C.modulus());
  const FpMatrix ci = invert_or_throw(s.C, "singular C");
  std::map<int, FpMatrix> cpow;
  auto Cp = [&](int e) -> const FpMatrix& {
    auto it = cpow.find(e);
    if (it == cpow.end()) it = cpow.emplace(e, matrix_power(s.C, e)).first;
    return it->second;
  };
  auto in_range = [&](int k) { return k >= 0 && k <= n_max; };
  auto T = [&](int j, int k) { return Cp(-a(j, k)) * s.R[static_cast<std::size_t>(k)] * Cp(b(j, k)); };
  auto Tb = [&](int j, int k) { return Cp(-c(j, k)) * s.R[static_cast<std::size_t>(k)] * Cp(d(j, k)); };
  auto inv = [](const FpMatrix& m) { return invert_or_throw(m, "singular embedded T"); };

  for (int k = w.k_lo; k <= w.k_hi; ++k) {
    if (!in_range(k - 1) || !in_range(k + 1)) continue;
    for (int j = w.j_lo; j <= w.j_hi; ++j) {
      const LatticePoint at{j, k};
      if (!is_lattice_point(j, k)) {
        t.record("t_system", T(j, k + 1) * Tb(j, k - 1) == one + T(j - 1, k) * Tb(j + 1, k), at);
        t.record("quasi_commutation_right", inv(T(j, k - 1)) * T(j + 1, k) == Tb(j + 1, k) * inv(Tb(j, k - 1)), at);
        t.record("quasi_commutation_left", T(j - 1, k) * inv(T(j, k - 1)) == inv(Tb(j, k - 1)) * Tb(j - 1, k), at);
      } else {
        t.record("periodicity", T(j + 4, k) == s.C * T(j, k) * s.C, at);
        t.record("periodicity_bullet", Tb(j + 4, k) == ci * Tb(j, k) * ci, at);
        const FpMatrix gamma = T(j - 1, k + 1) * inv(T(j, k)) + inv(Tb(j, k)) * Tb(j + 1, k - 1);
        // C^{-a_{j-1,k+1}} K C^{a_{j,k}}; the two powers differ when j - k = 2 mod 4.
        t.record("gamma_reduction", gamma == Cp(-a(j - 1, k + 1)) * s.K * Cp(a(j, k)), at);
        const FpMatrix delta = inv(T(j, k)) * T(j + 1, k + 1) + Tb(j - 1, k - 1) * inv(Tb(j, k));
        t.record("delta_reduction", delta == Cp(-floor_div(j + k + 2, 4)) * s.K * Cp(floor_div(j + k, 4)), at);
      }
    }
  }
  return t.report(s.seed);
}

// Quantum T-system --------------------------------------------------------------

struct QLetter {
  int j = 0;
  int k = 0;
  int exp = 1;
  friend bool operator==(const QLetter&, const QLetter&) = default;
};

/// q^{q8/8} times an ordered product of tau atoms.
struct QWord {
  int q8 = 0;
  std::vector<QLetter> letters;

  friend QWord operator*(const QWord& x, const QWord& y) {
    QWord r{x.q8 + y.q8, x.letters};
    r.letters.insert(r.letters.end(), y.letters.begin(), y.letters.end());
    return r;
  }
  friend bool operator==(const QWord&, const QWord&) = default;
};

inline QWord tau(int j, int k, int exp = 1) {
  if (!is_lattice_point(j, k)) throw Error(Errc::bad_parity, "tau needs j + k even");
  return {0, {{j, k, exp}}};
}

/// T_{j,k} = q^{alpha} tau_{j,k}; exponent -1 gives the inverse.
inline QWord quantum_T(int j, int k, int exp = 1) {
  QWord w = tau(j, k, exp);
  w.q8 = exp * exponents::alpha8(j, k);
  return w;
}

/// T*_{j,k} = q^{-beta} tau_{j,k}.
inline QWord quantum_Tb(int j, int k, int exp = 1) {
  QWord w = tau(j, k, exp);
  w.q8 = -exp * exponents::beta8(j, k);
  return w;
}

namespace detail {

/// q-exponent (eighths) picked up by rewriting x y as y x.
inline int swap_factor8(const QLetter& x, const QLetter& y) {
  if (x.k == y.k) return 0;
  if (std::abs(x.k - y.k) != 1) {
    throw Error(Errc::undefined_commutation, "no commutation rule for rows " + std::to_string(x.k) + " and " +
                                                 std::to_string(y.k));
  }
  const QLetter& lower = x.k < y.k ? x : y;
  const QLetter& upper = x.k < y.k ? y : x;
  const int eps = (std::abs(lower.j - upper.j) / 2) % 2 == 0 ? 1 : -1;
  // lower^m upper^n = q^{eps m n} upper^n lower^m
  const int f = 8 * eps * lower.exp * upper.exp;
  return x.k < y.k ? f : -f;
}

}  // namespace detail

/// Rewrites letters pos, pos+1 as their swapped product.
inline QWord swap_adjacent(QWord w, std::size_t pos) {
  if (pos + 1 >= w.letters.size()) throw Error(Errc::out_of_window, "swap position out of range");
  w.q8 += detail::swap_factor8(w.letters[pos], w.letters[pos + 1]);
  std::swap(w.letters[pos], w.letters[pos + 1]);
  return w;
}

/// Sorts letters by (k, j) with adjacent swaps, then merges equal atoms.
inline QWord quantum_normal_order(QWord w) {
  auto key = [](const QLetter& l) { return std::make_pair(l.k, l.j); };
  for (std::size_t n = w.letters.size(); n > 1; --n) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (key(w.letters[i + 1]) < key(w.letters[i])) w = swap_adjacent(std::move(w), i);
    }
  }
  std::vector<QLetter> merged;
  for (const auto& l : w.letters) {
    if (!merged.empty() && merged.back().j == l.j && merged.back().k == l.k) {
      merged.back().exp += l.exp;
      if (merged.back().exp == 0) merged.pop_back();
    } else if (l.exp != 0) {
      merged.push_back(l);
    }
  }
  w.letters = std::move(merged);
  return w;
}

inline std::string to_text(const QWord& w) {
  std::string s = "q^(" + std::to_string(w.q8) + "/8)";
  for (const auto& l : w.letters) {
    s += " tau[" + std::to_string(l.j) + "," + std::to_string(l.k) + "]";
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

/// Substitutes T = q^alpha tau, T* = q^-beta tau into the T-system relation and
/// the right quasi-commutation on a patch 1 <= k <= patch, |j| <= patch, and
/// checks that they become the quantum T-system, exactly in eighths.
/// The left quasi-commutation is not part of this check: under the same
/// substitution it only holds on the diagonal j - k = -1 (see
/// quantum_left_commutation_holds).
inline IdentityReport check_quantum_reduction(int patch) {
  detail::Tally t;
  for (int k = 1; k <= patch; ++k) {
    for (int j = -patch; j <= patch; ++j) {
      if (is_lattice_point(j, k)) continue;
      const LatticePoint at{j, k};
      // T_{j,k+1} T*_{j,k-1} against q tau_{j,k+1} tau_{j,k-1}, letter for letter.
      const QWord lhs = quantum_T(j, k + 1) * quantum_Tb(j, k - 1);
      const QWord target_lhs = QWord{8, {}} * tau(j, k + 1) * tau(j, k - 1);
      t.record("qt_left_side", lhs == target_lhs, at);
      // T_{j-1,k} T*_{j+1,k} against tau_{j+1,k} tau_{j-1,k}; same row, so commute.
      const QWord rhs = quantum_normal_order(quantum_T(j - 1, k) * quantum_Tb(j + 1, k));
      const QWord target_rhs = quantum_normal_order(tau(j + 1, k) * tau(j - 1, k));
      t.record("qt_right_side", rhs == target_rhs, at);
      // T_{j,k-1}^{-1} T_{j+1,k} = T*_{j+1,k} (T*_{j,k-1})^{-1}
      t.record("quasi_commutation_right",
               quantum_normal_order(quantum_T(j, k - 1, -1) * quantum_T(j + 1, k)) ==
                   quantum_normal_order(quantum_Tb(j + 1, k) * quantum_Tb(j, k - 1, -1)),
               at);
    }
  }
  return t.report();
}

/// T_{j-1,k} T_{j,k-1}^{-1} = (T*_{j,k-1})^{-1} T*_{j-1,k} after substitution.
inline bool quantum_left_commutation_holds(int j, int k) {
  return quantum_normal_order(quantum_T(j - 1, k) * quantum_T(j, k - 1, -1)) ==
         quantum_normal_order(quantum_Tb(j, k - 1, -1) * quantum_Tb(j - 1, k));
}

}  // namespace ncts
