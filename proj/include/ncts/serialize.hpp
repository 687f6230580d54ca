#pragma once

// JSON views of polynomials, paths, networks, matchings and reports.

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "ncts/dimer.hpp"
#include "ncts/error.hpp"
#include "ncts/lattice.hpp"
#include "ncts/ncalgebra.hpp"
#include "ncts/network.hpp"
#include "ncts/oracle.hpp"

namespace ncts {

using Json = nlohmann::ordered_json;

inline Json to_json(const Generator& g) { return Json{{"j", g.index}, {"bullet", g.bullet}, {"exp", g.exponent}}; }

inline Json to_json(const Word& w) {
  Json a = Json::array();
  for (const auto& g : w.letters()) a.push_back(to_json(g));
  return a;
}

/// Coefficients that fit in 64 bits are numbers, larger ones decimal strings.
inline Json integer_to_json(const Integer& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(c);
  }
  return c.str();
}

inline Json to_json(const NCPolynomial& p) {
  Json a = Json::array();
  for (const auto& [w, c] : p.terms()) a.push_back(Json{{"coeff", integer_to_json(c)}, {"word", to_json(w)}});
  return a;
}

inline Generator generator_from_json(const Json& j) {
  try {
    const int exp = j.at("exp").get<int>();
    if (exp != 1 && exp != -1) throw Error(Errc::parse_error, "letter exponent must be 1 or -1");
    return {j.at("j").get<int>(), j.at("bullet").get<bool>(), exp};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad letter: ") + e.what());
  }
}

inline Word word_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::parse_error, "word must be an array");
  std::vector<Generator> letters;
  for (const auto& g : j) letters.push_back(generator_from_json(g));
  return Word(letters);
}

inline NCPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::parse_error, "polynomial must be an array of terms");
  NCPolynomial p;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff") || !term.contains("word")) {
      throw Error(Errc::parse_error, "term needs coeff and word");
    }
    const auto& c = term["coeff"];
    Integer coeff;
    if (c.is_number_integer()) {
      coeff = c.get<std::int64_t>();
    } else if (c.is_string()) {
      try {
        coeff = Integer(c.get<std::string>());
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, "bad coefficient string");
      }
    } else {
      throw Error(Errc::parse_error, "coefficient must be an integer");
    }
    p.add_term(word_from_json(term["word"]), coeff);
  }
  return p;
}

inline Json to_json(const InitialPath& path) {
  Json stale = Json::array();
  for (bool s : path.stale_flags()) stale.push_back(s);
  return Json{{"lo", path.lo()}, {"heights", path.heights()}, {"labels", path.labels()}, {"stale", stale}};
}

inline InitialPath path_from_json(const Json& j) {
  try {
    const auto heights = j.at("heights").get<std::vector<int>>();
    std::vector<int> labels;
    std::vector<bool> stale;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<int>>();
    if (j.contains("stale")) stale = j["stale"].get<std::vector<bool>>();
    if (labels.empty()) return InitialPath(j.at("lo").get<int>(), heights);
    if (stale.empty()) stale.assign(labels.size(), false);
    return InitialPath(j.at("lo").get<int>(), heights, labels, stale);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad path: ") + e.what());
  }
}

inline Json to_json(const NetworkPath& p) {
  Json steps = Json::array();
  for (const auto& t : p.transitions) steps.push_back(Json{{"chip", t.chip}, {"from", t.from}, {"to", t.to}});
  return Json{{"transitions", steps}, {"weight", to_json(p.weight)}};
}

inline Json to_json(const Matching& m) {
  Json edges = Json::array();
  for (const auto& e : m.edges) {
    if (e.kind == EdgeKind::rung) {
      edges.push_back(Json{{"kind", "rung"}, {"col", e.col}});
    } else {
      edges.push_back(Json{{"kind", "horizontal"}, {"row", e.row}, {"col", e.col}});
    }
  }
  return Json{{"edges", edges}, {"weight", to_json(m.weight)}};
}

inline Json to_json(const IdentityResult& r) {
  Json failures = Json::array();
  for (const auto& p : r.failures) failures.push_back(Json::array({p.j, p.k}));
  return Json{{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}, {"failures", failures}};
}

inline Json to_json(const IdentityReport& r) {
  Json ids = Json::array();
  for (const auto& x : r.results) ids.push_back(to_json(x));
  return Json{{"seed", r.seed}, {"ok", r.ok()}, {"identities", ids}};
}

}  // namespace ncts
