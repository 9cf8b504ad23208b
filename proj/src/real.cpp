#include "ztop/real.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ztop {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; leave `other` as a valid 2-bit zero.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Enclosure::Enclosure(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.cmp(hi_) > 0) throw std::logic_error("Enclosure: lo > hi");
}

Enclosure Enclosure::of(const Rational& q, mpfr_prec_t bits) {
  BigFloat lo(bits), hi(bits);
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

BigFloat Enclosure::width() const {
  BigFloat w(std::max(lo_.precision(), hi_.precision()));
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

bool Enclosure::width_at_most_pow2(long exponent) const {
  return mpfr_cmp_ui_2exp(width().get(), 1, exponent) <= 0;
}

Enclosure Enclosure::operator+(const Enclosure& other) const {
  mpfr_prec_t bits = std::max(precision(), other.precision()) + 2;
  BigFloat lo(bits), hi(bits);
  mpfr_add(lo.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::scaled(const Integer& k) const {
  mpfr_prec_t bits = precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(k.get_mpz_t(), 2));
  BigFloat lo(bits), hi(bits);
  if (sgn(k) >= 0) {
    mpfr_mul_z(lo.get(), lo_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), hi_.get(), k.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(lo.get(), hi_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), lo_.get(), k.get_mpz_t(), MPFR_RNDU);
  }
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::minus_integer(const Integer& n) const {
  BigFloat lo(lo_.precision()), hi(hi_.precision());
  mpfr_sub_z(lo.get(), lo_.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(hi.get(), hi_.get(), n.get_mpz_t(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::clamped(const Rational& floor, const Rational& ceiling) const {
  BigFloat lo = lo_, hi = hi_;
  if (lo.cmp(floor) < 0) mpfr_set_q(lo.get(), floor.get_mpq_t(), MPFR_RNDD);
  if (hi.cmp(ceiling) > 0) mpfr_set_q(hi.get(), ceiling.get_mpq_t(), MPFR_RNDU);
  if (lo.cmp(hi) > 0) lo = hi;
  return Enclosure(std::move(lo), std::move(hi));
}

Integer Enclosure::floor_lo() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), lo_.get(), MPFR_RNDD);
  return out;
}

std::string Enclosure::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

namespace {

// Distance from an exact value v in [0, 2] to the nearest integer, rounded in `rnd`.
BigFloat norm_of_point(const BigFloat& v, mpfr_rnd_t rnd) {
  mpfr_prec_t bits = v.precision() + 2;
  BigFloat best(bits), candidate(bits);
  mpfr_set(best.get(), v.get(), rnd);  // distance to 0
  if (mpfr_cmp_ui(v.get(), 1) <= 0) {
    mpfr_ui_sub(candidate.get(), 1, v.get(), rnd);
  } else {
    mpfr_sub_ui(candidate.get(), v.get(), 1, rnd);
  }
  if (candidate.cmp(best) < 0) best = candidate;
  mpfr_ui_sub(candidate.get(), 2, v.get(), rnd);
  if (candidate.cmp(best) < 0) best = candidate;
  return best;
}

bool contains_point(const Enclosure& e, const Rational& q) { return e.contains(q); }

}  // namespace

Enclosure torus_norm_of(const Enclosure& t) {
  const Rational half(1, 2);
  Enclosure shifted = t.minus_integer(t.floor_lo());
  mpfr_prec_t bits = std::max<mpfr_prec_t>(shifted.precision(), 16);
  BigFloat lo(bits), hi(bits);

  if (mpfr_cmp_ui(shifted.width().get(), 1) >= 0) {
    mpfr_set_q(hi.get(), half.get_mpq_t(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }
  // shifted.lo in [0,1), shifted.hi < 2
  bool touches_integer = shifted.lo().sign() == 0 || mpfr_cmp_ui(shifted.hi().get(), 1) >= 0;
  if (!touches_integer) {
    BigFloat a = norm_of_point(shifted.lo(), MPFR_RNDD);
    BigFloat b = norm_of_point(shifted.hi(), MPFR_RNDD);
    lo = a.cmp(b) <= 0 ? a : b;
  }
  if (contains_point(shifted, half) || contains_point(shifted, Rational(3, 2))) {
    mpfr_set_q(hi.get(), half.get_mpq_t(), MPFR_RNDU);
  } else {
    BigFloat a = norm_of_point(shifted.lo(), MPFR_RNDU);
    BigFloat b = norm_of_point(shifted.hi(), MPFR_RNDU);
    hi = a.cmp(b) >= 0 ? a : b;
  }
  if (lo.cmp(hi) > 0) lo = hi;
  return Enclosure(std::move(lo), std::move(hi));
}

namespace {

// Lower/upper bounds of sin(pi*t) for exact endpoints t in [0, 1/2].
void sin_pi_bounds(const BigFloat& t_lo, const BigFloat& t_hi, mpfr_prec_t work, BigFloat& out_lo,
                   BigFloat& out_hi) {
  BigFloat pi_lo(work), pi_hi(work), half_pi_lo(work), arg(work);
  mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
  mpfr_div_2ui(half_pi_lo.get(), pi_lo.get(), 1, MPFR_RNDD);

  if (t_lo.sign() <= 0) {
    mpfr_set_zero(out_lo.get(), 1);
  } else {
    mpfr_mul(arg.get(), pi_lo.get(), t_lo.get(), MPFR_RNDD);
    mpfr_sin(out_lo.get(), arg.get(), MPFR_RNDD);
    if (out_lo.sign() < 0) mpfr_set_zero(out_lo.get(), 1);
  }

  mpfr_mul(arg.get(), pi_hi.get(), t_hi.get(), MPFR_RNDU);
  if (arg.cmp(half_pi_lo) >= 0) {
    mpfr_set_ui(out_hi.get(), 1, MPFR_RNDU);  // interval may reach the maximum of sin
  } else {
    mpfr_sin(out_hi.get(), arg.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(out_hi.get(), 1) > 0) mpfr_set_ui(out_hi.get(), 1, MPFR_RNDU);
  }
}

}  // namespace

Enclosure chord_of_norm(const Rational& t, mpfr_prec_t bits) {
  if (t < 0 || t > Rational(1, 2)) throw std::invalid_argument("chord_of_norm: norm outside [0, 1/2]");
  if (t == 0) return Enclosure::of(Rational(0), bits);
  if (t == Rational(1, 6)) return Enclosure::of(Rational(1), bits);
  if (t == Rational(1, 2)) return Enclosure::of(Rational(2), bits);

  mpfr_prec_t work = bits + 16;
  BigFloat t_lo(work), t_hi(work);
  mpfr_set_q(t_lo.get(), t.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(t_hi.get(), t.get_mpq_t(), MPFR_RNDU);
  BigFloat lo(work), hi(work);
  sin_pi_bounds(t_lo, t_hi, work, lo, hi);
  mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure chord_of_norm(const Enclosure& t, mpfr_prec_t bits) {
  Enclosure clamped = t.clamped(Rational(0), Rational(1, 2));
  mpfr_prec_t work = std::max(bits, clamped.precision()) + 16;
  BigFloat lo(work), hi(work);
  sin_pi_bounds(clamped.lo(), clamped.hi(), work, lo, hi);
  mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure two_cos_pi_over_2n(const Integer& n, mpfr_prec_t bits) {
  if (n <= 0) throw std::invalid_argument("two_cos_pi_over_2n: N must be positive");
  mpfr_prec_t work = bits + 16;
  BigFloat arg_lo(work), arg_hi(work), lo(work), hi(work);
  Integer two_n = 2 * n;
  mpfr_const_pi(arg_lo.get(), MPFR_RNDD);
  mpfr_div_z(arg_lo.get(), arg_lo.get(), two_n.get_mpz_t(), MPFR_RNDD);
  mpfr_const_pi(arg_hi.get(), MPFR_RNDU);
  mpfr_div_z(arg_hi.get(), arg_hi.get(), two_n.get_mpz_t(), MPFR_RNDU);
  // cos is decreasing on [0, pi/2]
  mpfr_cos(lo.get(), arg_hi.get(), MPFR_RNDD);
  mpfr_cos(hi.get(), arg_lo.get(), MPFR_RNDU);
  mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

}  // namespace ztop
