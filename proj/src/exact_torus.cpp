#include "ztop/exact_torus.hpp"

#include <algorithm>
#include <stdexcept>

namespace ztop {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  std::string_view digits = s.front() == '-' ? s.substr(1) : s;
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return Integer(std::string(s), 10);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num, den;
  try {
    num = parse_integer(s.substr(0, slash));
    den = parse_integer(s.substr(slash + 1));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("expected a rational a/b, got '" + std::string(text) + "'");
  }
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// IntervalReal --------------------------------------------------------------

IntervalReal::IntervalReal(std::string literal, Generator generator, mpfr_prec_t nominal_bits)
    : impl_(std::make_shared<const Impl>(Impl{std::move(literal), std::move(generator), nominal_bits})) {}

IntervalReal IntervalReal::decimal(const std::string& digits, mpfr_prec_t nominal_bits) {
  {
    BigFloat probe(64);
    if (digits.empty() || mpfr_set_str(probe.get(), digits.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("malformed decimal '" + digits + "'");
    }
  }
  if (nominal_bits < 2) throw std::invalid_argument("decimal precision must be >= 2 bits");
  std::string literal = "dec:" + digits + ":" + std::to_string(nominal_bits);
  return IntervalReal(
      std::move(literal),
      [digits](mpfr_prec_t bits) {
        BigFloat lo(bits), hi(bits);
        mpfr_set_str(lo.get(), digits.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(hi.get(), digits.c_str(), 10, MPFR_RNDU);
        return Enclosure(std::move(lo), std::move(hi));
      },
      nominal_bits);
}

IntervalReal IntervalReal::sqrt_of(const Integer& n) {
  if (n < 2 || mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    throw std::invalid_argument("sqrt:" + n.get_str() + " is not an irrational square root");
  }
  return IntervalReal("sqrt:" + n.get_str(), [n](mpfr_prec_t bits) {
    mpfr_prec_t exact_bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 1;
    BigFloat radicand(std::max(bits, exact_bits));
    mpfr_set_z(radicand.get(), n.get_mpz_t(), MPFR_RNDN);  // exact
    BigFloat lo(bits), hi(bits);
    mpfr_sqrt(lo.get(), radicand.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), radicand.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  });
}

IntervalReal IntervalReal::plus(const IntervalReal& other) const {
  IntervalReal a = *this, b = other;
  return IntervalReal(
      "(" + literal() + ")+(" + other.literal() + ")",
      [a, b](mpfr_prec_t bits) { return a.at(bits) + b.at(bits); },
      std::max(nominal_bits(), other.nominal_bits()));
}

IntervalReal IntervalReal::plus(const Rational& q) const {
  if (q == 0) return *this;
  IntervalReal a = *this;
  std::string literal = "(" + this->literal() + ")" + (q < 0 ? "-" : "+") + to_string(abs(q));
  return IntervalReal(
      std::move(literal),
      [a, q](mpfr_prec_t bits) {
        Enclosure x = a.at(bits);
        return x + Enclosure::of(q, x.precision() + 64);
      },
      nominal_bits());
}

IntervalReal IntervalReal::times(const Integer& k) const {
  if (k == 1) return *this;
  IntervalReal a = *this;
  auto extra = static_cast<mpfr_prec_t>(mpz_sizeinbase(k.get_mpz_t(), 2));
  return IntervalReal(
      k.get_str() + "*(" + literal() + ")",
      [a, k, extra](mpfr_prec_t bits) { return a.at(bits + extra).scaled(k); }, nominal_bits());
}

// TorusPoint ----------------------------------------------------------------

Rational reduce_mod1(const Rational& x) {
  Integer floor_part;
  mpz_fdiv_q(floor_part.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational out = x - Rational(floor_part);
  out.canonicalize();
  return out;
}

TorusPoint reduce_mod1(const IntervalReal& x) { return TorusPoint(x); }

TorusPoint::TorusPoint(const Rational& q) : value_(reduce_mod1(q)) {}

TorusPoint::TorusPoint(const IntervalReal& x) : value_(x) {
  Integer shift = x.at(x.nominal_bits()).floor_lo();
  if (shift != 0) value_ = x.plus(Rational(-shift));
}

TorusPoint TorusPoint::parse(std::string_view literal) {
  std::string_view s = trim(literal);
  if (starts_with(s, "dec:")) {
    std::string_view rest = s.substr(4);
    auto colon = rest.find(':');
    std::string digits(rest.substr(0, colon));
    mpfr_prec_t bits = 64;
    if (colon != std::string_view::npos) {
      Integer b = parse_integer(rest.substr(colon + 1));
      if (b < 2 || b > 1 << 20) throw std::invalid_argument("bad precision in '" + std::string(literal) + "'");
      bits = static_cast<mpfr_prec_t>(b.get_si());
    }
    return TorusPoint(IntervalReal::decimal(digits, bits));
  }
  if (starts_with(s, "sqrt:")) return TorusPoint(IntervalReal::sqrt_of(parse_integer(s.substr(5))));
  return TorusPoint(parse_rational(s));
}

const Rational& TorusPoint::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw std::logic_error("TorusPoint is not rational");
}

const IntervalReal& TorusPoint::interval() const {
  if (const auto* x = std::get_if<IntervalReal>(&value_)) return *x;
  throw std::logic_error("TorusPoint is rational");
}

std::string TorusPoint::literal() const {
  if (is_rational()) return to_string(rational());
  return interval().literal();
}

Enclosure TorusPoint::enclosure(mpfr_prec_t bits) const {
  if (is_rational()) return Enclosure::of(rational(), bits);
  return interval().at(bits);
}

TorusPoint TorusPoint::multiple(const Integer& k) const {
  if (is_rational()) return TorusPoint(Rational(rational() * k));
  return TorusPoint(interval().times(k));
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (is_rational() && other.is_rational()) return TorusPoint(Rational(rational() + other.rational()));
  if (is_rational()) return TorusPoint(other.interval().plus(rational()));
  if (other.is_rational()) return TorusPoint(interval().plus(other.rational()));
  return TorusPoint(interval().plus(other.interval()));
}

// Norms, chords, bands ------------------------------------------------------

Rational torus_norm(const Rational& x) {
  Rational r = reduce_mod1(x);
  Rational complement = Rational(1) - r;
  return r <= complement ? r : complement;
}

Enclosure torus_norm(const TorusPoint& x, mpfr_prec_t bits) {
  if (x.is_rational()) return Enclosure::of(torus_norm(x.rational()), bits);
  return torus_norm_of(x.enclosure(bits));
}

Enclosure chord_distance(const TorusPoint& x, const Integer& m, const Integer& n, mpfr_prec_t bits) {
  Integer d = m - n;
  if (d == 0) return Enclosure::of(Rational(0), bits);
  if (x.is_rational()) return chord_of_norm(torus_norm(Rational(x.rational() * d)), bits);
  return chord_of_norm(torus_norm(x.multiple(d), bits + 8), bits);
}

Verdict band_member(const TorusPoint& x, const Rational& delta, const PrecisionPolicy& policy) {
  if (delta <= 0 || delta > Rational(1, 2)) {
    throw std::invalid_argument("band_member: delta must lie in (0, 1/2], got " + to_string(delta));
  }
  if (x.is_rational()) {
    Rational norm = torus_norm(x.rational());
    if (norm <= delta) return Verdict::in("||x|| = " + to_string(norm) + " <= " + to_string(delta));
    return Verdict::out("||x|| = " + to_string(norm) + " > " + to_string(delta));
  }
  mpfr_prec_t bits = std::min(policy.start_bits, policy.ceiling_bits);
  for (;;) {
    Enclosure norm = torus_norm(x, bits);
    if (norm.certainly_le(delta)) {
      Verdict v = Verdict::in("||x|| in " + norm.to_string(12) + " <= " + to_string(delta));
      v.precision_bits = static_cast<unsigned>(bits);
      return v;
    }
    if (norm.certainly_gt(delta)) {
      Verdict v = Verdict::out("||x|| in " + norm.to_string(12) + " > " + to_string(delta));
      v.precision_bits = static_cast<unsigned>(bits);
      return v;
    }
    if (bits >= policy.ceiling_bits) {
      return Verdict::unknown("enclosure " + norm.to_string(12) + " straddles " + to_string(delta) +
                                  " at the precision ceiling",
                              static_cast<unsigned>(bits));
    }
    bits = std::min(bits * 2, policy.ceiling_bits);
  }
}

Verdict certified_nonzero(const TorusPoint& x, const PrecisionPolicy& policy) {
  if (x.is_rational()) {
    if (x.rational() == 0) return Verdict::out("point is the identity");
    return Verdict::in("||x|| = " + to_string(torus_norm(x.rational())) + " > 0");
  }
  mpfr_prec_t bits = std::min(policy.start_bits, policy.ceiling_bits);
  for (;;) {
    Enclosure norm = torus_norm(x, bits);
    if (norm.lo().sign() > 0) {
      Verdict v = Verdict::in("||x|| >= " + norm.lo().to_string(12) + " > 0");
      v.precision_bits = static_cast<unsigned>(bits);
      return v;
    }
    if (bits >= policy.ceiling_bits) {
      return Verdict::unknown("norm enclosure touches 0 at the precision ceiling", static_cast<unsigned>(bits));
    }
    bits = std::min(bits * 2, policy.ceiling_bits);
  }
}

}  // namespace ztop
