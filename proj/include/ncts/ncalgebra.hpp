#pragma once

// Free non-commutative Laurent polynomials over the atoms t_j, t_j^bullet.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncts {

using Integer = boost::multiprecision::cpp_int;

/// One letter t_j^{+-1} or (t_j^bullet)^{+-1}. Higher powers are spelled as
/// repeated letters.
struct Generator {
  int index = 0;
  bool bullet = false;
  int exponent = 1;  // +1 or -1

  // Member order fixes the canonical letter order: (index, bullet, exponent).
  auto operator<=>(const Generator&) const = default;

  Generator inverse() const noexcept { return {index, bullet, -exponent}; }
  Generator toggled() const noexcept { return {index, !bullet, exponent}; }

  bool cancels(const Generator& other) const noexcept {
    return index == other.index && bullet == other.bullet && exponent == -other.exponent;
  }
};

inline Generator atom(int index, int exponent = 1) { return {index, false, exponent}; }
inline Generator atom_bullet(int index, int exponent = 1) { return {index, true, exponent}; }

/// A freely reduced word in the generators.
class Word {
 public:
  Word() = default;

  /// Reduces the given letter sequence; any sequence is accepted.
  explicit Word(const std::vector<Generator>& letters) {
    letters_.reserve(letters.size());
    for (const auto& g : letters) push_back(g);
  }
  Word(std::initializer_list<Generator> letters) : Word(std::vector<Generator>(letters)) {}

  const std::vector<Generator>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Generator& operator[](std::size_t i) const { return letters_[i]; }

  /// Appends a letter, cancelling against the last one when possible.
  void push_back(const Generator& g) {
    if (!letters_.empty() && letters_.back().cancels(g)) {
      letters_.pop_back();
    } else {
      letters_.push_back(g);
    }
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  friend Word operator*(const Word& lhs, const Word& rhs) {
    Word out;
    out.letters_.reserve(lhs.size() + rhs.size());
    out.letters_ = lhs.letters_;
    // Both factors are reduced, so cancellation only happens at the junction.
    std::size_t i = 0;
    while (i < rhs.size() && !out.letters_.empty() && out.letters_.back().cancels(rhs.letters_[i])) {
      out.letters_.pop_back();
      ++i;
    }
    out.letters_.insert(out.letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(i),
                        rhs.letters_.end());
    return out;
  }

  // Lexicographic on letter sequences; a proper prefix sorts first.
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Generator> letters_;
};

/// Integer linear combination of words. Zero coefficients are never stored.
class NCPolynomial {
 public:
  using TermMap = std::map<Word, Integer>;

  NCPolynomial() = default;
  explicit NCPolynomial(const Word& w, Integer coeff = 1) { add_term(w, std::move(coeff)); }
  explicit NCPolynomial(const Generator& g) : NCPolynomial(Word{g}) {}

  static NCPolynomial one() { return NCPolynomial(Word{}); }
  static NCPolynomial zero() { return {}; }

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// The coefficient of w, zero when absent.
  Integer coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Word& w, const Integer& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  NCPolynomial& operator+=(const NCPolynomial& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
  }
  NCPolynomial& operator-=(const NCPolynomial& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPolynomial operator+(NCPolynomial lhs, const NCPolynomial& rhs) { return lhs += rhs; }
  friend NCPolynomial operator-(NCPolynomial lhs, const NCPolynomial& rhs) { return lhs -= rhs; }

  friend NCPolynomial operator*(const NCPolynomial& p, const NCPolynomial& q) {
    NCPolynomial out;
    if (p.is_zero() || q.is_zero()) return out;
    if (q.size() == 1) {
      const auto& [qw, qc] = *q.terms_.begin();
      // Right multiplication by a single word is injective on reduced words.
      for (const auto& [pw, pc] : p.terms_) out.terms_.emplace_hint(out.terms_.end(), pw * qw, pc * qc);
      return out;
    }
    for (const auto& [pw, pc] : p.terms_) {
      for (const auto& [qw, qc] : q.terms_) out.add_term(pw * qw, pc * qc);
    }
    return out;
  }
  NCPolynomial& operator*=(const NCPolynomial& other) { return *this = *this * other; }

  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;

 private:
  TermMap terms_;
};

inline NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q) { return p * q; }

/// The bullet anti-automorphism on a word: reverse, toggle every bullet flag.
inline Word involution(const Word& w) {
  std::vector<Generator> letters;
  letters.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) letters.push_back(it->toggled());
  return Word(letters);
}

inline NCPolynomial involution(const NCPolynomial& p) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) out.add_term(involution(w), c);
  return out;
}

/// Letter indices strictly increase from left to right (bullet flags ignored).
inline bool is_well_ordered(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i - 1].index >= ls[i].index) return false;
  }
  return true;
}

inline bool is_well_ordered(const NCPolynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& term) { return is_well_ordered(term.first); });
}

inline bool has_positive_coefficients(const NCPolynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& term) { return term.second > 0; });
}

/// Number of position pairs i < j whose letter indices are inverted.
inline std::size_t index_inversions(const Word& w) {
  std::size_t n = 0;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (ls[i].index > ls[j].index) ++n;
    }
  }
  return n;
}

/// Applies f to every atom index, keeping bullet flags and exponents.
template <class F>
NCPolynomial rename_atoms(const NCPolynomial& p, F&& f) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    std::vector<Generator> letters;
    letters.reserve(w.size());
    for (const auto& g : w.letters()) letters.push_back({f(g.index), g.bullet, g.exponent});
    out.add_term(Word(letters), c);
  }
  return out;
}

}  // namespace ncts
