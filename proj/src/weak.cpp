#include "ztop/weak.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ztop {

CharacterSet::CharacterSet(std::vector<TorusPoint> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("character set needs at least one generator");
}

CharacterSet CharacterSet::parse(std::string_view literal) {
  std::vector<TorusPoint> points;
  std::size_t start = 0;
  for (;;) {
    auto comma = literal.find(',', start);
    points.push_back(TorusPoint::parse(literal.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return CharacterSet(std::move(points));
}

bool CharacterSet::all_rational() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const TorusPoint& x) { return x.is_rational(); });
}

std::optional<Integer> CharacterSet::period() const {
  if (!all_rational()) return std::nullopt;
  Integer m = 1;
  for (const TorusPoint& x : generators_) m = lcm(m, Integer(x.rational().get_den()));
  return m;
}

std::string CharacterSet::literal() const {
  std::string out;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ",";
    out += generators_[i].literal();
  }
  return out;
}

Verdict weak_member(const Integer& k, const CharacterSet& chars, const Rational& delta, const PrecisionPolicy& policy) {
  if (delta <= 0 || delta > Rational(1, 2)) {
    throw std::invalid_argument("weak_member: delta must lie in (0, 1/2], got " + to_string(delta));
  }
  if (k == 0) return Verdict::in("0 lies in every neighbourhood");
  std::vector<Verdict> verdicts;
  verdicts.reserve(chars.generators().size());
  for (const TorusPoint& x : chars.generators()) {
    Verdict v = band_member(x.multiple(k), delta, policy);
    if (v.is_out()) {
      v.reason = "character " + x.literal() + ": " + v.reason;
      return v;
    }
    verdicts.push_back(std::move(v));
  }
  return all_of(verdicts);
}

namespace {

// Calls visit(word) for every coefficient vector with sum |e_i| == length, in a
// fixed order: per coordinate, larger magnitude first and positive before negative.
bool for_each_word(std::size_t arity, std::size_t length, const std::function<bool(const std::vector<Integer>&)>& visit) {
  std::vector<Integer> word(arity, 0);
  std::function<bool(std::size_t, long)> rec = [&](std::size_t i, long remaining) -> bool {
    if (i + 1 == arity) {
      if (remaining == 0) {
        word[i] = 0;
        return visit(word);
      }
      word[i] = remaining;
      if (visit(word)) return true;
      word[i] = -remaining;
      return visit(word);
    }
    for (long v = remaining; v >= 0; --v) {
      word[i] = v;
      if (rec(i + 1, remaining - v)) return true;
      if (v != 0) {
        word[i] = -v;
        if (rec(i + 1, remaining - v)) return true;
      }
    }
    return false;
  };
  return rec(0, static_cast<long>(length));
}

}  // namespace

SeparationResult separation_witness(const Integer& m, const CharacterSet& chars, std::size_t cap,
                                    const PrecisionPolicy& policy) {
  if (m == 0) throw std::invalid_argument("separation_witness: nothing separates 0 from 0");
  SeparationResult result;
  const auto& gens = chars.generators();
  for (std::size_t length = 1; length <= cap; ++length) {
    bool found = for_each_word(gens.size(), length, [&](const std::vector<Integer>& word) {
      ++result.words_tried;
      TorusPoint chi;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (word[i] != 0) chi = chi + gens[i].multiple(word[i]);
      }
      Verdict nonzero = certified_nonzero(chi.multiple(m), policy);
      if (!nonzero.is_in()) return false;
      result.witness = chi;
      result.word = word;
      result.verdict = Verdict::in("chi = " + chi.literal() + " has ||m chi|| certified > 0 (" + nonzero.reason + ")");
      result.verdict.precision_bits = nonzero.precision_bits;
      return true;
    });
    if (found) return result;
  }
  std::string not_found = "NotFound(" + std::to_string(cap) + ")";
  if (auto order = chars.period(); order && m % *order == 0) {
    result.verdict = Verdict::out(not_found + ": H is cyclic of order " + order->get_str() + ", which divides " +
                                  m.get_str() + ", so m chi = 0 for every chi in H");
  } else {
    result.verdict = Verdict::unknown(not_found + ": no certified witness among words of length <= " +
                                      std::to_string(cap));
  }
  return result;
}

namespace {

std::size_t valuation(Integer n, const Integer& p) {
  std::size_t v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

ContinuityResult character_continuity(const TorusPoint& chi, const DSequence& b, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("character_continuity: cap must be >= 1");
  if (!chi.is_rational()) {
    return {Verdict::out("infinite order: an irrational character has no denominator dividing any b_n"), std::nullopt};
  }
  Integer q = chi.rational().get_den();
  if (q == 1) return {Verdict::in("trivial character"), 1};

  std::size_t last_checked = 0;
  for (std::size_t n = 1; n <= cap && b.has_term(n); ++n) {
    last_checked = n;
    if (b.term(n) % q == 0) {
      return {Verdict::in("q = " + q.get_str() + " divides b_" + std::to_string(n) + " = " + b.term(n).get_str()), n};
    }
  }

  auto primes = prime_factors(q);
  if (primes && b.prime_support()) {
    const auto& support = *b.prime_support();
    for (const Integer& p : *primes) {
      if (std::find(support.begin(), support.end(), p) == support.end()) {
        return {Verdict::out("prime " + p.get_str() + " of q = " + q.get_str() +
                             " lies outside the prime support of " + b.name()),
                std::nullopt};
      }
    }
  }
  if (primes && last_checked == cap) {
    Integer bcap = b.term(cap);
    for (const Integer& p : *primes) {
      std::size_t need = valuation(q, p);
      std::size_t have = valuation(bcap, p);
      if (have < need && b.tail_ratios_coprime_to(p, cap) == true) {
        return {Verdict::out("v_" + p.get_str() + "(b_n) stays at " + std::to_string(have) + " < v_" + p.get_str() +
                             "(q) = " + std::to_string(need) + " for all n"),
                std::nullopt};
      }
    }
  }
  Verdict unknown = Verdict::unknown("Unknown(" + std::to_string(cap) + "): q = " + q.get_str() +
                                     " divides no b_n with n <= " + std::to_string(last_checked) +
                                     " and the rule does not settle the tail");
  return {unknown, std::nullopt};
}

// Prufer group ------------------------------------------------------------------

PruferElement::PruferElement(const Integer& p, const Integer& numerator, std::size_t exponent)
    : p_(p), a_(numerator), n_(exponent) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("Prufer element needs a prime, got " + p.get_str());
  }
  Integer modulus;
  mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), n_);
  mpz_fdiv_r(a_.get_mpz_t(), a_.get_mpz_t(), modulus.get_mpz_t());
  while (n_ > 0 && a_ % p_ == 0) {
    a_ /= p_;
    --n_;
  }
  if (a_ == 0) n_ = 0;
}

PruferElement PruferElement::parse(std::string_view literal) {
  auto slash = literal.find('/');
  auto caret = literal.find('^');
  if (slash == std::string_view::npos || caret == std::string_view::npos || caret < slash) {
    throw std::invalid_argument("expected a Prufer literal 'a/p^n', got '" + std::string(literal) + "'");
  }
  Integer a = parse_integer(literal.substr(0, slash));
  Integer p = parse_integer(literal.substr(slash + 1, caret - slash - 1));
  Integer n = parse_integer(literal.substr(caret + 1));
  if (n < 0 || n > 1 << 20) throw std::invalid_argument("bad exponent in '" + std::string(literal) + "'");
  return PruferElement(p, a, n.get_ui());
}

Integer PruferElement::order() const {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), p_.get_mpz_t(), n_);
  return out;
}

Rational PruferElement::value() const {
  Rational q(a_, order());
  q.canonicalize();
  return q;
}

std::string PruferElement::literal() const {
  return a_.get_str() + "/" + p_.get_str() + "^" + std::to_string(n_);
}

PruferElement prufer_add(const PruferElement& u, const PruferElement& v) {
  if (u.prime() != v.prime()) {
    throw std::invalid_argument("prufer_add: mismatched primes " + u.prime().get_str() + " and " + v.prime().get_str());
  }
  std::size_t top = std::max(u.exponent(), v.exponent());
  Integer scale_u, scale_v;
  mpz_pow_ui(scale_u.get_mpz_t(), u.prime().get_mpz_t(), top - u.exponent());
  mpz_pow_ui(scale_v.get_mpz_t(), v.prime().get_mpz_t(), top - v.exponent());
  return PruferElement(u.prime(), u.numerator() * scale_u + v.numerator() * scale_v, top);
}

}  // namespace ztop
