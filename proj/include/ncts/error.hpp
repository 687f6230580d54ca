#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncts {

enum class Errc {
  non_adjacent_pair,
  out_of_window,
  below_path,
  bad_parity,
  not_admissible,
  not_on_path,
  invalid_section,
  division_by_zero,
  singular_sample,
  singular_intermediate,
  atom_missing,
  undefined_commutation,
  parse_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::non_adjacent_pair: return "NonAdjacentPair";
    case Errc::out_of_window: return "OutOfWindow";
    case Errc::below_path: return "BelowPath";
    case Errc::bad_parity: return "BadParity";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::not_on_path: return "NotOnPath";
    case Errc::invalid_section: return "InvalidSection";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::singular_sample: return "SingularSample";
    case Errc::singular_intermediate: return "SingularIntermediate";
    case Errc::atom_missing: return "AtomMissing";
    case Errc::undefined_commutation: return "UndefinedCommutation";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ncts
