#pragma once

// Characters of Z as torus points, finitely generated subgroups H of T, and
// the neighbourhoods U_{F,delta} = {k : ||k x|| <= delta for all x in F} of
// the weak topology tau_H.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ztop/dsequence.hpp"
#include "ztop/exact_torus.hpp"

namespace ztop {

class CharacterSet {
 public:
  explicit CharacterSet(std::vector<TorusPoint> generators);
  /// Comma list of torus-point literals: "1/5,dec:0.7071:64".
  static CharacterSet parse(std::string_view literal);

  const std::vector<TorusPoint>& generators() const { return generators_; }
  bool all_rational() const;
  /// lcm of denominators (the order of the generated cyclic group); nullopt
  /// when some generator is an interval point (declared infinite order).
  std::optional<Integer> period() const;
  std::string literal() const;

 private:
  std::vector<TorusPoint> generators_;
};

Verdict weak_member(const Integer& k, const CharacterSet& chars, const Rational& delta,
                    const PrecisionPolicy& policy = {});

struct SeparationResult {
  std::optional<TorusPoint> witness;
  std::vector<Integer> word;  // coefficients on the generators
  Verdict verdict;            // In: witness found; Out: H cannot separate m; Unknown: NotFound(cap)
  std::size_t words_tried = 0;
};

/// Searches words of length <= cap in the generators for chi with ||m chi|| > 0 certified.
SeparationResult separation_witness(const Integer& m, const CharacterSet& chars, std::size_t cap,
                                    const PrecisionPolicy& policy = {});

struct ContinuityResult {
  Verdict verdict;
  std::optional<std::size_t> level;  // least n with q | b_n
};

/// Continuity of chi = a/q against lambda_b: In iff q divides some b_n.
ContinuityResult character_continuity(const TorusPoint& chi, const DSequence& b, std::size_t cap);

/// a/p^n mod 1 in the Prufer group Z(p^inf), canonical: 0 <= a < p^n and p does not divide a unless n = 0.
class PruferElement {
 public:
  PruferElement(const Integer& p, const Integer& numerator, std::size_t exponent);
  /// "a/p^n", e.g. "3/2^3".
  static PruferElement parse(std::string_view literal);

  const Integer& prime() const { return p_; }
  const Integer& numerator() const { return a_; }
  std::size_t exponent() const { return n_; }
  Integer order() const;
  Rational value() const;
  TorusPoint as_torus_point() const { return TorusPoint(value()); }
  std::string literal() const;

  bool operator==(const PruferElement& other) const = default;

 private:
  Integer p_;
  Integer a_;
  std::size_t n_;
};

PruferElement prufer_add(const PruferElement& u, const PruferElement& v);

}  // namespace ztop
