#pragma once

// Randomised identity testing. Initial data become invertible matrices over
// F_p with bullet realised as transpose; the step relations turn into
// symmetry constraints that the sampler builds in.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ncts/connection.hpp"
#include "ncts/error.hpp"
#include "ncts/field.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

inline constexpr int kDefaultDim = 4;
inline constexpr int kDefaultTrials = 20;
inline constexpr int kSampleRetries = 64;
inline constexpr int kResampleRetries = 8;

/// Atom label -> invertible matrix. The bullet of an atom is its transpose.
class MatrixScene {
 public:
  MatrixScene(std::uint64_t modulus, int dim, std::uint64_t seed, std::map<int, FpMatrix> values)
      : modulus_(modulus), dim_(dim), seed_(seed), values_(std::move(values)) {
    for (const auto& [label, m] : values_) {
      auto inv = m.inverse();
      if (!inv) throw Error(Errc::singular_sample, "atom t" + std::to_string(label) + " is singular");
      inverses_.emplace(label, std::move(*inv));
    }
  }

  std::uint64_t modulus() const noexcept { return modulus_; }
  int dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::map<int, FpMatrix>& values() const noexcept { return values_; }

  bool has(int label) const { return values_.count(label) > 0; }

  const FpMatrix& value(int label) const {
    auto it = values_.find(label);
    if (it == values_.end()) throw Error(Errc::atom_missing, "atom t" + std::to_string(label) + " has no value");
    return it->second;
  }

  FpMatrix letter(const Generator& g) const {
    value(g.index);
    const FpMatrix& base = g.exponent == 1 ? values_.at(g.index) : inverses_.at(g.index);
    return g.bullet ? base.transpose() : base;
  }

  FpMatrix identity() const { return FpMatrix::identity(dim_, modulus_); }
  FpMatrix zero() const { return FpMatrix(dim_, modulus_); }

 private:
  std::uint64_t modulus_;
  int dim_;
  std::uint64_t seed_;
  std::map<int, FpMatrix> values_;
  std::map<int, FpMatrix> inverses_;
};

namespace detail {

template <class Rng>
FpMatrix sample_invertible(int d, std::uint64_t p, Rng& rng, bool symmetric) {
  for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
    FpMatrix m = symmetric ? FpMatrix::random_symmetric(d, p, rng) : FpMatrix::random(d, p, rng);
    if (m.invertible()) return m;
  }
  throw Error(Errc::singular_sample, "could not draw an invertible matrix");
}

inline void check_field(std::uint64_t p, int d) {
  if (d < 1) throw Error(Errc::singular_sample, "matrix dimension must be positive");
  if (p >= (std::uint64_t{1} << 62) || !fp::is_prime(p)) {
    throw Error(Errc::singular_sample, "modulus must be a prime below 2^62");
  }
}

}  // namespace detail

/// Walks the path from its left end: up steps set t_{j+1} = t_j S, down
/// steps t_{j+1} = S t_j, with S a fresh random symmetric invertible matrix.
/// Then t_j^{-1} t_{j+1} (up) or t_j t_{j+1}^{-1} (down) is symmetric, which
/// is exactly the step relation under transpose.
inline MatrixScene sample_scene(const InitialPath& path, std::uint64_t p = kMersenne61, int d = kDefaultDim,
                                std::uint64_t seed = 0) {
  detail::check_field(p, d);
  std::mt19937_64 rng(seed);
  std::map<int, FpMatrix> values;
  FpMatrix t = detail::sample_invertible(d, p, rng, false);
  values.emplace(path.label(path.lo()), t);
  for (int j = path.lo(); j < path.hi(); ++j) {
    const FpMatrix s = detail::sample_invertible(d, p, rng, true);
    t = path.step(j) == Step::up ? t * s : s * t;
    values.emplace(path.label(j + 1), t);
  }
  return MatrixScene(p, d, seed, std::move(values));
}

/// True when every step of the path satisfies its relation in the scene.
inline bool scene_satisfies_relations(const MatrixScene& scene, const InitialPath& path) {
  for (int j = path.lo(); j < path.hi(); ++j) {
    const auto& a = scene.value(path.label(j));
    const auto& b = scene.value(path.label(j + 1));
    const FpMatrix ai = invert_or_throw(a, "atom");
    const FpMatrix bi = invert_or_throw(b, "atom");
    if (path.step(j) == Step::up) {
      if (ai * b != b.transpose() * ai.transpose()) return false;
    } else {
      if (a * bi != bi.transpose() * a.transpose()) return false;
    }
  }
  return true;
}

inline FpMatrix evaluate(const MatrixScene& scene, const Word& w) {
  FpMatrix r = scene.identity();
  for (const auto& g : w.letters()) r = r * scene.letter(g);
  return r;
}

/// Algebra morphism from NC polynomials to d x d matrices over F_p.
inline FpMatrix evaluate(const MatrixScene& scene, const NCPolynomial& p) {
  FpMatrix acc = scene.zero();
  for (const auto& [w, c] : p.terms()) {
    acc += evaluate(scene, w).scaled(fp::from_integer(c, scene.modulus()));
  }
  return acc;
}

inline bool check_identity(const FpMatrix& lhs, const FpMatrix& rhs) { return lhs == rhs; }

/// T_{j,k} over the whole dependency cone of the window: upward from the path
/// by T_{j,k+1} = (T*_{j,k-1})^{-1} + T_{j-1,k} T_{j,k-1}^{-1} T_{j+1,k},
/// downward by T*_{j,k-1} = T_{j,k+1}^{-1} (1 + T_{j-1,k} T*_{j+1,k}).
class NumericSolution {
 public:
  NumericSolution(const MatrixScene& scene, const InitialPath& path) : scene_(scene), path_(path) {}

  const MatrixScene& scene() const noexcept { return scene_; }
  const InitialPath& path() const noexcept { return path_; }

  /// nullopt when (j, k) is not a lattice point or its cone leaves the window.
  std::optional<FpMatrix> T(int j, int k) {
    if (!is_lattice_point(j, k) || !path_.contains(j)) return std::nullopt;
    const auto key = std::make_pair(j, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::optional<FpMatrix> result;
    const int m = path_.height(j);
    if (k == m) {
      result = scene_.value(path_.label(j));
    } else if (k > m) {
      auto below = T(j, k - 2);
      auto left = T(j - 1, k - 1);
      auto right = T(j + 1, k - 1);
      if (below && left && right) {
        const FpMatrix bi = invert_or_throw(*below, "singular intermediate T");
        result = bi.transpose() + *left * bi * *right;
      }
    } else {
      auto above = T(j, k + 2);
      auto left = T(j - 1, k + 1);
      auto right = T(j + 1, k + 1);
      if (above && left && right) {
        const FpMatrix ai = invert_or_throw(*above, "singular intermediate T");
        const FpMatrix tb = ai * (scene_.identity() + *left * right->transpose());
        result = tb.transpose();
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  std::optional<FpMatrix> Tb(int j, int k) {
    auto t = T(j, k);
    if (!t) return std::nullopt;
    return t->transpose();
  }

 private:
  const MatrixScene& scene_;
  const InitialPath& path_;
  std::map<std::pair<int, int>, std::optional<FpMatrix>> memo_;
};

inline std::map<LatticePoint, FpMatrix> solve_numeric(const MatrixScene& scene, const InitialPath& path,
                                                      const std::vector<LatticePoint>& region) {
  NumericSolution sol(scene, path);
  std::map<LatticePoint, FpMatrix> out;
  for (const auto& p : region) {
    auto t = sol.T(p.j, p.k);
    if (!t) throw Error(Errc::out_of_window, "point (" + std::to_string(p.j) + "," + std::to_string(p.k) + ") outside the data cone");
    out.emplace(p, std::move(*t));
  }
  return out;
}

/// Scene for a path reached by mutations: every site carries the numeric
/// solution of the base data at its new height.
inline MatrixScene rebase_scene(const MatrixScene& base, const InitialPath& base_path, const InitialPath& target) {
  NumericSolution sol(base, base_path);
  std::map<int, FpMatrix> values;
  for (int j = target.lo(); j <= target.hi(); ++j) {
    auto t = sol.T(j, target.height(j));
    if (!t) throw Error(Errc::out_of_window, "mutated site outside the base data cone");
    values.emplace(target.label(j), std::move(*t));
  }
  return MatrixScene(base.modulus(), base.dim(), base.seed(), std::move(values));
}

/// 2x2 block matrix with FpMatrix entries, for the chip exchange identity.
struct BlockMatrix {
  FpMatrix a11, a12, a21, a22;

  friend BlockMatrix operator*(const BlockMatrix& x, const BlockMatrix& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22, x.a21 * y.a11 + x.a22 * y.a21,
            x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;
};

inline BlockMatrix numeric_V(const FpMatrix& a, const FpMatrix& b) {
  const FpMatrix bi = invert_or_throw(b, "V chip");
  return {a * bi, bi.transpose(), FpMatrix(a.dim(), a.modulus()), FpMatrix::identity(a.dim(), a.modulus())};
}

inline BlockMatrix numeric_U(const FpMatrix& b, const FpMatrix& c) {
  const FpMatrix ci = invert_or_throw(c, "U chip");
  return {FpMatrix::identity(b.dim(), b.modulus()), FpMatrix(b.dim(), b.modulus()), ci, b.transpose() * ci.transpose()};
}

// Identity suite ----------------------------------------------------------

struct Window {
  int j_lo = -4;
  int j_hi = 4;
  int k_lo = 0;
  int k_hi = 6;
};

/// "a..b,c..d"
inline Window parse_window(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(Errc::parse_error, "window needs the form j0..j1,k0..k1");
  auto [jl, jh] = detail::parse_range(s.substr(0, comma), "j-range");
  auto [kl, kh] = detail::parse_range(s.substr(comma + 1), "k-range");
  return {jl, jh, kl, kh};
}

struct IdentityResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<LatticePoint> failures;  // first few
};

struct IdentityReport {
  std::uint64_t seed = 0;
  std::vector<IdentityResult> results;

  bool ok() const {
    for (const auto& r : results) {
      if (r.failed) return false;
    }
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.failed;
    return n;
  }
};

namespace detail {

using MaybeMatrix = std::optional<FpMatrix>;
/// Returns nullopt to skip a point, otherwise whether the identity held.
using IdentityCheck = std::function<std::optional<bool>(NumericSolution&, int, int)>;

inline MaybeMatrix inv(const MaybeMatrix& m) {
  if (!m) return std::nullopt;
  return invert_or_throw(*m, "singular intermediate in identity");
}

inline bool all(std::initializer_list<const MaybeMatrix*> ms) {
  for (auto* m : ms) {
    if (!m->has_value()) return false;
  }
  return true;
}

inline MaybeMatrix gamma(NumericSolution& s, int j, int k) {
  auto a = s.T(j - 1, k + 1), b = s.T(j, k), c = s.Tb(j + 1, k - 1);
  if (!all({&a, &b, &c})) return std::nullopt;
  const FpMatrix bi = invert_or_throw(*b, "gamma");
  return *a * bi + bi.transpose() * *c;
}

inline MaybeMatrix delta(NumericSolution& s, int j, int k) {
  auto a = s.T(j + 1, k + 1), b = s.T(j, k), c = s.Tb(j - 1, k - 1);
  if (!all({&a, &b, &c})) return std::nullopt;
  const FpMatrix bi = invert_or_throw(*b, "delta");
  return bi * *a + *c * bi.transpose();
}

inline std::vector<std::pair<std::string, IdentityCheck>> identity_catalogue() {
  std::vector<std::pair<std::string, IdentityCheck>> cat;
  auto odd = [](int j, int k) { return !is_lattice_point(j, k); };

  // T_{j,k+1} T*_{j,k-1} = 1 + T_{j-1,k} T*_{j+1,k}
  cat.emplace_back("t_system", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (!odd(j, k)) return std::nullopt;
    auto a = s.T(j, k + 1), b = s.Tb(j, k - 1), c = s.T(j - 1, k), d = s.Tb(j + 1, k);
    if (!all({&a, &b, &c, &d})) return std::nullopt;
    return *a * *b == s.scene().identity() + *c * *d;
  });
  // T_{j,k-1}^{-1} T_{j+1,k} = T*_{j+1,k} (T*_{j,k-1})^{-1}
  cat.emplace_back("quasi_commutation_right", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (!odd(j, k)) return std::nullopt;
    auto a = s.T(j, k - 1), b = s.T(j + 1, k);
    if (!all({&a, &b})) return std::nullopt;
    const FpMatrix ai = invert_or_throw(*a, "qc");
    return ai * *b == b->transpose() * ai.transpose();
  });
  // T_{j-1,k} T_{j,k-1}^{-1} = (T*_{j,k-1})^{-1} T*_{j-1,k}
  cat.emplace_back("quasi_commutation_left", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (!odd(j, k)) return std::nullopt;
    auto a = s.T(j, k - 1), c = s.T(j - 1, k);
    if (!all({&a, &c})) return std::nullopt;
    const FpMatrix ai = invert_or_throw(*a, "qc");
    return *c * ai == ai.transpose() * c->transpose();
  });
  cat.emplace_back("gamma_conservation", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto g1 = gamma(s, j, k), g0 = gamma(s, j - 1, k - 1);
    if (!all({&g1, &g0})) return std::nullopt;
    return *g1 == *g0;
  });
  cat.emplace_back("delta_conservation", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d1 = delta(s, j, k), d0 = delta(s, j + 1, k - 1);
    if (!all({&d1, &d0})) return std::nullopt;
    return *d1 == *d0;
  });
  cat.emplace_back("gamma_bullet_invariant", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto g = gamma(s, j, k);
    if (!g) return std::nullopt;
    return g->is_symmetric();
  });
  cat.emplace_back("delta_bullet_invariant", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = delta(s, j, k);
    if (!d) return std::nullopt;
    return d->is_symmetric();
  });
  // T_{j-1,k+1} - Gamma T_{j,k} + T_{j+1,k-1} = 0
  cat.emplace_back("linear_recursion_gamma", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto g = gamma(s, j, k);
    auto a = s.T(j - 1, k + 1), b = s.T(j, k), c = s.T(j + 1, k - 1);
    if (!all({&g, &a, &b, &c})) return std::nullopt;
    return (*a - *g * *b + *c).is_zero();
  });
  // T_{j+1,k+1} - T_{j,k} Delta + T_{j-1,k-1} = 0
  cat.emplace_back("linear_recursion_delta", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = delta(s, j, k);
    auto a = s.T(j + 1, k + 1), b = s.T(j, k), c = s.T(j - 1, k - 1);
    if (!all({&d, &a, &b, &c})) return std::nullopt;
    return (*a - *b * *d + *c).is_zero();
  });
  // T*_{j-1,k+1} - T*_{j,k} Gamma + T*_{j+1,k-1} = 0
  cat.emplace_back("linear_recursion_gamma_bullet", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto g = gamma(s, j, k);
    auto a = s.Tb(j - 1, k + 1), b = s.Tb(j, k), c = s.Tb(j + 1, k - 1);
    if (!all({&g, &a, &b, &c})) return std::nullopt;
    return (*a - *b * *g + *c).is_zero();
  });
  // T*_{j+1,k+1} - Delta T*_{j,k} + T*_{j-1,k-1} = 0
  cat.emplace_back("linear_recursion_delta_bullet", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = delta(s, j, k);
    auto a = s.Tb(j + 1, k + 1), b = s.Tb(j, k), c = s.Tb(j - 1, k - 1);
    if (!all({&d, &a, &b, &c})) return std::nullopt;
    return (*a - *d * *b + *c).is_zero();
  });

  // Local exchange around the diamond a = T_{j-1,k+1}, b = T_{j,k},
  // c = T_{j+1,k+1}, x = T_{j,k+2}.
  auto diamond = [](NumericSolution& s, int j, int k) {
    struct D {
      MaybeMatrix a, b, c, x;
    };
    return D{s.T(j - 1, k + 1), s.T(j, k), s.T(j + 1, k + 1), s.T(j, k + 2)};
  };
  cat.emplace_back("local_exchange", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.a, &d.b, &d.c, &d.x})) return std::nullopt;
    return numeric_V(*d.a, *d.b) * numeric_U(*d.b, *d.c) == numeric_U(*d.a, *d.x) * numeric_V(*d.x, *d.c);
  });
  cat.emplace_back("exchange_x_formula", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.a, &d.b, &d.c, &d.x})) return std::nullopt;
    const FpMatrix bi = invert_or_throw(*d.b, "exchange");
    return *d.x == bi.transpose() + *d.a * bi * *d.c;
  });
  cat.emplace_back("exchange_b_formula", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.a, &d.b, &d.c, &d.x})) return std::nullopt;
    const FpMatrix xi = invert_or_throw(*d.x, "exchange");
    return *d.b == xi.transpose() + *d.c * xi * *d.a;
  });
  cat.emplace_back("exchange_polynomial_form", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.a, &d.b, &d.c, &d.x})) return std::nullopt;
    return *d.x * d.b->transpose() == s.scene().identity() + *d.a * d.c->transpose();
  });
  cat.emplace_back("exchange_commutation_a", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.a, &d.x})) return std::nullopt;
    const FpMatrix ai = invert_or_throw(*d.a, "exchange");
    return ai * *d.x == d.x->transpose() * ai.transpose();
  });
  cat.emplace_back("exchange_commutation_c", [odd, diamond](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k)) return std::nullopt;
    auto d = diamond(s, j, k);
    if (!all({&d.c, &d.x})) return std::nullopt;
    const FpMatrix ci = invert_or_throw(*d.c, "exchange");
    return *d.x * ci == ci.transpose() * d.x->transpose();
  });

  // The symbolic closed form evaluated in the scene agrees with the recursion.
  cat.emplace_back("closed_form", [odd](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (odd(j, k) || !s.path().contains(j) || k < s.path().height(j)) return std::nullopt;
    auto t = s.T(j, k);
    if (!t) return std::nullopt;
    NCPolynomial poly;
    try {
      poly = solve(s.path(), {j, k});
    } catch (const Error& e) {
      if (e.code() == Errc::out_of_window) return std::nullopt;
      throw;
    }
    return evaluate(s.scene(), poly) == *t;
  });
  return cat;
}

inline IdentityResult run_identity(NumericSolution& sol, const std::string& name, const IdentityCheck& check,
                                   const Window& w) {
  IdentityResult r{name, 0, 0, {}};
  for (int k = w.k_lo; k <= w.k_hi; ++k) {
    for (int j = w.j_lo; j <= w.j_hi; ++j) {
      auto outcome = check(sol, j, k);
      if (!outcome) continue;
      ++r.checked;
      if (!*outcome) {
        ++r.failed;
        if (r.failures.size() < 8) r.failures.push_back({j, k});
      }
    }
  }
  return r;
}

}  // namespace detail

/// Every structural identity of the system at every applicable point of the
/// window. Points whose dependency cone leaves the path window are skipped.
inline IdentityReport run_identity_suite(const MatrixScene& scene, const InitialPath& path, const Window& w) {
  IdentityReport report;
  report.seed = scene.seed();
  IdentityResult relations{"initial_relations", static_cast<std::size_t>(path.hi() - path.lo()), 0, {}};
  if (!scene_satisfies_relations(scene, path)) relations.failed = 1;
  report.results.push_back(relations);
  NumericSolution sol(scene, path);
  for (const auto& [name, check] : detail::identity_catalogue()) {
    report.results.push_back(detail::run_identity(sol, name, check, w));
  }
  return report;
}

/// The main relation with the bullet dropped from T_{j,k-1}. Must fail.
inline IdentityResult run_negative_control(const MatrixScene& scene, const InitialPath& path, const Window& w) {
  NumericSolution sol(scene, path);
  detail::IdentityCheck broken = [](NumericSolution& s, int j, int k) -> std::optional<bool> {
    if (is_lattice_point(j, k)) return std::nullopt;
    auto a = s.T(j, k + 1), b = s.T(j, k - 1), c = s.T(j - 1, k), d = s.Tb(j + 1, k);
    if (!detail::all({&a, &b, &c, &d})) return std::nullopt;
    return *a * *b == s.scene().identity() + *c * *d;
  };
  return detail::run_identity(sol, "t_system_dropped_bullet", broken, w);
}

/// Runs `fn` on a scene sampled from `seed`; on a singular intermediate it
/// resamples with a derived seed, up to kResampleRetries times.
template <class F>
auto with_resampling(const InitialPath& path, std::uint64_t p, int d, std::uint64_t seed, F&& fn) {
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL;
    try {
      const MatrixScene scene = sample_scene(path, p, d, s);
      return fn(scene);
    } catch (const Error& e) {
      if ((e.code() != Errc::singular_intermediate && e.code() != Errc::singular_sample) ||
          attempt + 1 >= kResampleRetries) {
        throw;
      }
    }
  }
}

// Commutative specialisation ------------------------------------------------

/// Evaluates with commuting rational values and t* = t.
inline Rational evaluate_commutative(const NCPolynomial& p, const std::map<int, Rational>& values) {
  Rational acc = 0;
  for (const auto& [w, c] : p.terms()) {
    Rational term = Rational(c);
    for (const auto& g : w.letters()) {
      auto it = values.find(g.index);
      if (it == values.end()) throw Error(Errc::atom_missing, "atom t" + std::to_string(g.index) + " has no value");
      if (g.exponent == 1) {
        term *= it->second;
      } else {
        if (it->second == 0) throw Error(Errc::division_by_zero, "inverse of zero");
        term /= it->second;
      }
    }
    acc += term;
  }
  return acc;
}

/// Classical DP T_{j,k+1} = (1 + T_{j+1,k} T_{j-1,k}) / T_{j,k-1} above the path.
inline std::optional<Rational> solve_classical(const InitialPath& path, const std::map<int, Rational>& values,
                                               LatticePoint p) {
  std::map<std::pair<int, int>, std::optional<Rational>> memo;
  auto rec = [&](auto&& self, int j, int k) -> std::optional<Rational> {
    if (!path.contains(j) || !is_lattice_point(j, k) || k < path.height(j)) return std::nullopt;
    const auto key = std::make_pair(j, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::optional<Rational> r;
    if (k == path.height(j)) {
      r = values.at(path.label(j));
    } else {
      auto below = self(self, j, k - 2), left = self(self, j - 1, k - 1), right = self(self, j + 1, k - 1);
      if (below && left && right) {
        if (*below == 0) throw Error(Errc::division_by_zero, "classical recursion hit zero");
        r = (1 + *left * *right) / *below;
      }
    }
    memo.emplace(key, r);
    return r;
  };
  return rec(rec, p.j, p.k);
}

}  // namespace ncts
