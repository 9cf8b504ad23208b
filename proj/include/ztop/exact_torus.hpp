#pragma once

// Arithmetic on the circle group T = R/Z in the additive model: a point x is
// also the character k -> k*x mod 1 of the integers. Rational points are
// exact; irrational points are lazily refinable certified enclosures.

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "ztop/real.hpp"
#include "ztop/verdict.hpp"

namespace ztop {

struct PrecisionPolicy {
  mpfr_prec_t start_bits = 64;
  mpfr_prec_t ceiling_bits = 256;
};

/// A real number known through nested enclosures of increasing precision.
class IntervalReal {
 public:
  using Generator = std::function<Enclosure(mpfr_prec_t)>;

  IntervalReal(std::string literal, Generator generator, mpfr_prec_t nominal_bits = 64);

  /// "dec:<decimal>:<bits>": the decimal, first evaluated at `bits`.
  static IntervalReal decimal(const std::string& digits, mpfr_prec_t nominal_bits);
  /// "sqrt:<n>": the positive square root of a non-square n >= 2.
  static IntervalReal sqrt_of(const Integer& n);

  Enclosure at(mpfr_prec_t bits) const { return impl_->generator(bits); }
  const std::string& literal() const { return impl_->literal; }
  mpfr_prec_t nominal_bits() const { return impl_->nominal_bits; }

  IntervalReal plus(const IntervalReal& other) const;
  IntervalReal plus(const Rational& q) const;
  IntervalReal times(const Integer& k) const;

 private:
  struct Impl {
    std::string literal;
    Generator generator;
    mpfr_prec_t nominal_bits;
  };
  std::shared_ptr<const Impl> impl_;
};

class TorusPoint {
 public:
  TorusPoint() : value_(Rational(0)) {}
  explicit TorusPoint(const Rational& q);
  explicit TorusPoint(const IntervalReal& x);

  /// "a/q", "a", "dec:0.70710678:64", "sqrt:2".
  static TorusPoint parse(std::string_view literal);

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  const IntervalReal& interval() const;

  /// Canonical literal: reduced "a/q" for rationals, composed literal otherwise.
  std::string literal() const;

  Enclosure enclosure(mpfr_prec_t bits) const;

  /// k*x mod 1.
  TorusPoint multiple(const Integer& k) const;
  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-() const { return multiple(Integer(-1)); }

  bool operator==(const TorusPoint& other) const = delete;

 private:
  std::variant<Rational, IntervalReal> value_;
};

/// Canonical representative in [0, 1).
Rational reduce_mod1(const Rational& x);
TorusPoint reduce_mod1(const IntervalReal& x);

/// Distance to the nearest integer, in [0, 1/2].
Rational torus_norm(const Rational& x);
Enclosure torus_norm(const TorusPoint& x, mpfr_prec_t bits);

/// Certified enclosure of |e^{2 pi i m x} - e^{2 pi i n x}| = 2|sin(pi (m-n) x)|.
Enclosure chord_distance(const TorusPoint& x, const Integer& m, const Integer& n,
                         mpfr_prec_t bits = 64);

/// Closed band test ||x|| <= delta, with 0 < delta <= 1/2. Exact for rational x;
/// interval points refine by doubling up to the policy ceiling.
Verdict band_member(const TorusPoint& x, const Rational& delta, const PrecisionPolicy& policy = {});

/// Certified ||x|| > 0 (the point is not the identity). Unknown at the ceiling.
Verdict certified_nonzero(const TorusPoint& x, const PrecisionPolicy& policy = {});

/// Parses "a/q" or an integer into a canonical rational; throws std::invalid_argument.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace ztop
