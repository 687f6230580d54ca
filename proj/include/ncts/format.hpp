#pragma once

// Text rendering of words and polynomials: `t3`, `t3*` (bullet), `^-1`
// suffix, letters space separated, terms joined by ` + ` in canonical order.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ncts/error.hpp"
#include "ncts/ncalgebra.hpp"

namespace ncts {

inline std::string to_text(const Generator& g) {
  std::string s = "t" + std::to_string(g.index);
  if (g.bullet) s += '*';
  if (g.exponent == -1) s += "^-1";
  return s;
}

inline std::string to_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += to_text(w[i]);
  }
  return s;
}

inline std::string to_text(const NCPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      s += mag.str();
    } else {
      if (mag != 1) s += mag.str() + ' ';
      s += to_text(w);
    }
  }
  return s;
}

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000'000LL) return false;
  }
  out = static_cast<int>(neg ? -v : v);
  return true;
}

inline Generator parse_letter(std::string_view tok) {
  auto fail = [&] { return Error(Errc::parse_error, "bad letter '" + std::string(tok) + "'"); };
  if (tok.size() < 2 || tok[0] != 't') throw fail();
  std::string_view rest = tok.substr(1);
  int exponent = 1;
  if (auto caret = rest.find('^'); caret != std::string_view::npos) {
    if (!parse_int(rest.substr(caret + 1), exponent) || (exponent != 1 && exponent != -1)) throw fail();
    rest = rest.substr(0, caret);
  }
  bool bullet = false;
  if (!rest.empty() && rest.back() == '*') {
    bullet = true;
    rest.remove_suffix(1);
  }
  int index = 0;
  if (!parse_int(rest, index)) throw fail();
  return {index, bullet, exponent};
}

}  // namespace detail

/// Inverse of to_text; also accepts non-canonical term order and unreduced
/// words.
inline NCPolynomial parse_polynomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) {
    // "-t1" as written for a leading negative term
    if (tok.size() > 1 && tok[0] == '-' && tok[1] == 't') {
      tokens.push_back("-");
      tok.erase(0, 1);
    }
    tokens.push_back(tok);
  }

  NCPolynomial out;
  if (tokens.size() == 1 && tokens[0] == "0") return out;
  if (tokens.empty()) throw Error(Errc::parse_error, "empty polynomial");

  std::size_t i = 0;
  int sign = 1;
  if (tokens[0] == "-") {
    sign = -1;
    ++i;
  }
  while (i < tokens.size()) {
    Integer coeff = 1;
    std::vector<Generator> letters;
    bool saw_factor = false;
    int c = 0;
    if (detail::parse_int(tokens[i], c)) {
      coeff = c;
      ++i;
      saw_factor = true;
    }
    while (i < tokens.size() && tokens[i] != "+" && tokens[i] != "-") {
      letters.push_back(detail::parse_letter(tokens[i]));
      ++i;
      saw_factor = true;
    }
    if (!saw_factor) throw Error(Errc::parse_error, "empty term");
    out.add_term(Word(letters), coeff * sign);
    if (i < tokens.size()) {
      sign = tokens[i] == "-" ? -1 : 1;
      ++i;
      if (i == tokens.size()) throw Error(Errc::parse_error, "dangling operator");
    }
  }
  return out;
}

inline Word parse_word(std::string_view text) {
  auto p = parse_polynomial(text);
  if (p.size() != 1 || p.terms().begin()->second != 1) {
    throw Error(Errc::parse_error, "not a single word: '" + std::string(text) + "'");
  }
  return p.terms().begin()->first;
}

}  // namespace ncts
