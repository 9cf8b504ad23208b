#pragma once

#include <optional>
#include <span>
#include <string>

namespace ztop {

enum class Kind { In, Out, Unknown };

std::string to_string(Kind kind);

/// Three-valued membership answer. In and Out are certified; Unknown records
/// the cap or precision ceiling that was exhausted.
struct Verdict {
  Kind kind = Kind::Unknown;
  std::string reason;
  unsigned precision_bits = 0;
  std::optional<std::string> witness;

  static Verdict in(std::string reason = {}) { return {Kind::In, std::move(reason), 0, std::nullopt}; }
  static Verdict out(std::string reason = {}) { return {Kind::Out, std::move(reason), 0, std::nullopt}; }
  static Verdict unknown(std::string reason, unsigned bits = 0) {
    return {Kind::Unknown, std::move(reason), bits, std::nullopt};
  }

  bool is_in() const { return kind == Kind::In; }
  bool is_out() const { return kind == Kind::Out; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  bool is_final() const { return kind != Kind::Unknown; }
};

/// Conjunction: Out if any is Out, else Unknown if any is Unknown, else In.
Verdict all_of(std::span<const Verdict> verdicts);

}  // namespace ztop
