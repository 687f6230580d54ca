#pragma once

// Arithmetic in F_p for word-size primes, and dense square matrices over it.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ncts/error.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

/// 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

namespace fp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(Errc::division_by_zero, "zero has no inverse in F_p");
  return pow(a, p - 2, p);
}

/// Reduces a (possibly negative) big integer into [0, p).
inline std::uint64_t from_integer(const Integer& c, std::uint64_t p) {
  Integer r = c % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace fp

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int dim, std::uint64_t modulus) : dim_(dim), p_(modulus), a_(static_cast<std::size_t>(dim * dim), 0) {}

  static FpMatrix identity(int dim, std::uint64_t modulus) {
    FpMatrix m(dim, modulus);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  static FpMatrix scalar(int dim, std::uint64_t modulus, std::uint64_t value) {
    FpMatrix m(dim, modulus);
    for (int i = 0; i < dim; ++i) m(i, i) = value % modulus;
    return m;
  }

  template <class Rng>
  static FpMatrix random(int dim, std::uint64_t modulus, Rng& rng) {
    FpMatrix m(dim, modulus);
    std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
    for (auto& x : m.a_) x = dist(rng);
    return m;
  }

  template <class Rng>
  static FpMatrix random_symmetric(int dim, std::uint64_t modulus, Rng& rng) {
    FpMatrix m(dim, modulus);
    std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) m(i, j) = m(j, i) = dist(rng);
    }
    return m;
  }

  int dim() const noexcept { return dim_; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::uint64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  std::uint64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

  FpMatrix transpose() const {
    FpMatrix t(dim_, p_);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool is_symmetric() const { return *this == transpose(); }
  bool is_zero() const {
    for (auto x : a_) {
      if (x) return false;
    }
    return true;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<FpMatrix> inverse() const {
    const int n = dim_;
    FpMatrix a = *this;
    FpMatrix r = identity(n, p_);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int row = col; row < n; ++row) {
        if (a(row, col)) {
          pivot = row;
          break;
        }
      }
      if (pivot < 0) return std::nullopt;
      if (pivot != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(a(pivot, j), a(col, j));
          std::swap(r(pivot, j), r(col, j));
        }
      }
      const std::uint64_t s = fp::inv(a(col, col), p_);
      for (int j = 0; j < n; ++j) {
        a(col, j) = fp::mul(a(col, j), s, p_);
        r(col, j) = fp::mul(r(col, j), s, p_);
      }
      for (int row = 0; row < n; ++row) {
        if (row == col || a(row, col) == 0) continue;
        const std::uint64_t f = a(row, col);
        for (int j = 0; j < n; ++j) {
          a(row, j) = fp::sub(a(row, j), fp::mul(f, a(col, j), p_), p_);
          r(row, j) = fp::sub(r(row, j), fp::mul(f, r(col, j), p_), p_);
        }
      }
    }
    return r;
  }

  bool invertible() const { return inverse().has_value(); }

  FpMatrix& operator+=(const FpMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = fp::add(a_[i], o.a_[i], p_);
    return *this;
  }
  FpMatrix& operator-=(const FpMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = fp::sub(a_[i], o.a_[i], p_);
    return *this;
  }
  friend FpMatrix operator+(FpMatrix a, const FpMatrix& b) { return a += b; }
  friend FpMatrix operator-(FpMatrix a, const FpMatrix& b) { return a -= b; }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    const int n = a.dim_;
    FpMatrix c(n, a.p_);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const std::uint64_t aik = a(i, k);
        if (!aik) continue;
        for (int j = 0; j < n; ++j) c(i, j) = fp::add(c(i, j), fp::mul(aik, b(k, j), a.p_), a.p_);
      }
    }
    return c;
  }

  FpMatrix scaled(std::uint64_t s) const {
    FpMatrix c = *this;
    for (auto& x : c.a_) x = fp::mul(x, s % p_, p_);
    return c;
  }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  int dim_ = 0;
  std::uint64_t p_ = kMersenne61;
  std::vector<std::uint64_t> a_;
};

/// Matrix power with negative exponents through the inverse.
inline FpMatrix matrix_power(const FpMatrix& m, int e) {
  FpMatrix base = m;
  if (e < 0) {
    auto inv = m.inverse();
    if (!inv) throw Error(Errc::singular_intermediate, "negative power of a singular matrix");
    base = *inv;
    e = -e;
  }
  FpMatrix r = FpMatrix::identity(m.dim(), m.modulus());
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

inline FpMatrix invert_or_throw(const FpMatrix& m, const char* what) {
  auto inv = m.inverse();
  if (!inv) throw Error(Errc::singular_intermediate, what);
  return *inv;
}

}  // namespace ncts
