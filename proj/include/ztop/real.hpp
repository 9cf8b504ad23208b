#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace ztop {

using Integer = mpz_class;
using Rational = mpq_class;

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  int cmp(const BigFloat& other) const { return mpfr_cmp(value_, other.value_); }
  int cmp(const Rational& q) const { return mpfr_cmp_q(value_, q.get_mpq_t()); }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact decimal rendering is not attempted; `digits` significant digits.
  std::string to_string(int digits = 25) const;

 private:
  mpfr_t value_;
};

/// A closed real interval [lo, hi] with directed-rounded MPFR endpoints.
class Enclosure {
 public:
  /// Tightest enclosure of `q` at `bits`; degenerate when q is representable.
  static Enclosure of(const Rational& q, mpfr_prec_t bits);
  /// Enclosure [lo, hi] of two already-bounded endpoints.
  Enclosure(BigFloat lo, BigFloat hi);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool degenerate() const { return lo_.cmp(hi_) == 0; }
  /// Upper bound on hi - lo.
  BigFloat width() const;
  /// True when hi - lo <= 2^-bits.
  bool width_at_most_pow2(long exponent) const;

  bool contains(const Rational& q) const { return lo_.cmp(q) <= 0 && hi_.cmp(q) >= 0; }
  bool contains(const Enclosure& inner) const {
    return lo_.cmp(inner.lo_) <= 0 && hi_.cmp(inner.hi_) >= 0;
  }
  bool overlaps(const Enclosure& other) const {
    return lo_.cmp(other.hi_) <= 0 && other.lo_.cmp(hi_) <= 0;
  }
  /// Every point of the enclosure is <= q.
  bool certainly_le(const Rational& q) const { return hi_.cmp(q) <= 0; }
  /// Every point of the enclosure is > q.
  bool certainly_gt(const Rational& q) const { return lo_.cmp(q) > 0; }

  Enclosure operator+(const Enclosure& other) const;
  Enclosure scaled(const Integer& k) const;
  Enclosure minus_integer(const Integer& n) const;
  Enclosure clamped(const Rational& floor, const Rational& ceiling) const;

  /// Floor of the lower endpoint.
  Integer floor_lo() const;

  std::string to_string(int digits = 25) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

/// Certified enclosure of 2*sin(pi*t) for rational t in [0, 1/2].
/// Exact (degenerate) at t in {0, 1/6, 1/2}, the only rational chord values.
Enclosure chord_of_norm(const Rational& t, mpfr_prec_t bits);

/// Certified enclosure of 2*sin(pi*t) over an enclosure t within [0, 1/2].
Enclosure chord_of_norm(const Enclosure& t, mpfr_prec_t bits);

/// Certified enclosure of the torus norm ||t|| over an enclosure t.
Enclosure torus_norm_of(const Enclosure& t);

/// Certified enclosure of 2*cos(pi/(2N)).
Enclosure two_cos_pi_over_2n(const Integer& n, mpfr_prec_t bits);

}  // namespace ztop
