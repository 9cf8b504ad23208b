#include "ztop/dsequence.hpp"

#include <algorithm>
#include <mutex>

#include "ztop/exact_torus.hpp"

namespace ztop {

namespace {

constexpr std::int64_t kSmallRatioClamp = std::int64_t{1} << 62;
constexpr std::size_t kSupportCheckRatios = 64;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join_integers(const std::vector<Integer>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].get_str();
  }
  return out;
}

bool factors_over(Integer n, const std::vector<Integer>& primes) {
  for (const Integer& p : primes) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

void merge_primes(std::vector<Integer>& into, const std::vector<Integer>& more) {
  for (const Integer& p : more) {
    if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
  }
  std::sort(into.begin(), into.end());
}

bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

}  // namespace

std::string to_string(DSequenceError::Code code) {
  switch (code) {
    case DSequenceError::Code::Empty:
      return "Empty";
    case DSequenceError::Code::NonPositive:
      return "NonPositive";
    case DSequenceError::Code::FirstTermNotOne:
      return "FirstTermNotOne";
    case DSequenceError::Code::NotMultiple:
      return "NotMultiple";
    case DSequenceError::Code::RepeatedTerm:
      return "RepeatedTerm";
  }
  return "Unknown";
}

std::optional<std::vector<Integer>> prime_factors(const Integer& n) {
  if (n < 1) throw std::invalid_argument("prime_factors: n must be positive");
  std::vector<Integer> primes;
  Integer rest = n;
  for (unsigned long d = 2; d <= 1000000 && Integer(d) * d <= rest; ++d) {
    if (rest % d == 0) {
      primes.emplace_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) {
    if (!is_prime(rest)) return std::nullopt;
    primes.push_back(rest);
  }
  return primes;
}

struct DSequence::Impl {
  std::string name;
  RatioRule rule;                      // used for indices past `prefix`
  std::vector<Integer> prefix;         // explicit b_1..b_s
  std::optional<std::size_t> length;   // finite sequences only
  std::optional<std::size_t> seam;
  std::optional<std::vector<Integer>> prime_support;
  TailShape shape = TailShape::Opaque;
  Integer constant_ratio;
  std::vector<Integer> period;
  std::shared_ptr<Impl> tail;  // rule after the seam, for tail queries

  mutable std::mutex mutex;
  mutable std::vector<Integer> terms;
  mutable std::vector<std::int64_t> small;  // small[i] = clamp(r_{i+2})

  void extend_locked(std::size_t n) const {
    if (length && n > *length) {
      throw std::out_of_range(name + ": term " + std::to_string(n) + " is past the finite prefix of length " +
                              std::to_string(*length));
    }
    if (terms.empty()) terms.emplace_back(1);
    while (terms.size() < n) {
      std::size_t next = terms.size() + 1;
      if (next <= prefix.size()) {
        terms.push_back(prefix[next - 1]);
        continue;
      }
      Integer r = rule(next);
      if (r < 2) throw std::logic_error(name + ": ratio rule returned r_" + std::to_string(next) + " < 2");
      terms.push_back(terms.back() * r);
    }
  }

  std::optional<bool> coprime_after(const Integer& p, std::size_t after) const {
    switch (shape) {
      case TailShape::Constant:
        return gcd(constant_ratio, p) == 1;
      case TailShape::Periodic:
        return std::all_of(period.begin(), period.end(), [&](const Integer& r) { return gcd(r, p) == 1; });
      case TailShape::Factorial:
        return false;
      case TailShape::Finite:
      case TailShape::Opaque:
        break;
    }
    if (!seam || !tail) return std::nullopt;
    std::size_t s = *seam;
    if (after >= s) return tail->coprime_after(p, after - s + 1);
    {
      std::lock_guard lock(mutex);
      extend_locked(s);
      for (std::size_t n = std::max<std::size_t>(after + 1, 2); n <= s; ++n) {
        if (gcd(Integer(terms[n - 1] / terms[n - 2]), p) != 1) return false;
      }
    }
    return tail->coprime_after(p, 1);
  }
};

const std::string& DSequence::name() const { return impl_->name; }
bool DSequence::has_term(std::size_t n) const { return !impl_->length || n <= *impl_->length; }
std::optional<std::size_t> DSequence::length() const { return impl_->length; }
std::optional<std::size_t> DSequence::seam() const { return impl_->seam; }
const std::optional<std::vector<Integer>>& DSequence::prime_support() const { return impl_->prime_support; }
TailShape DSequence::tail_shape() const { return impl_->shape; }

Integer DSequence::term(std::size_t n) const {
  if (n == 0) throw std::out_of_range("D-sequences are 1-indexed");
  std::lock_guard lock(impl_->mutex);
  impl_->extend_locked(n);
  return impl_->terms[n - 1];
}

Integer DSequence::ratio(std::size_t n) const {
  if (n < 2) throw std::out_of_range("ratios start at r_2");
  std::lock_guard lock(impl_->mutex);
  impl_->extend_locked(n);
  return impl_->terms[n - 1] / impl_->terms[n - 2];
}

std::int64_t DSequence::small_ratio(std::size_t n) const {
  if (n < 2) throw std::out_of_range("ratios start at r_2");
  std::lock_guard lock(impl_->mutex);
  auto& small = impl_->small;
  if (small.size() < n - 1) {
    impl_->extend_locked(n);
    while (small.size() < n - 1) {
      std::size_t idx = small.size() + 2;
      Integer r = impl_->terms[idx - 1] / impl_->terms[idx - 2];
      small.push_back(r >= kSmallRatioClamp ? kSmallRatioClamp : r.get_si());
    }
  }
  return small[n - 2];
}

std::optional<bool> DSequence::tail_ratios_coprime_to(const Integer& p, std::size_t after) const {
  return impl_->coprime_after(p, after);
}

DSequence DSequence::padic(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("'padic:" + p.get_str() + "': " + p.get_str() + " is not prime");
  auto impl = std::make_shared<Impl>();
  impl->name = "padic:" + p.get_str();
  impl->rule = [p](std::size_t) { return p; };
  impl->prime_support = std::vector<Integer>{p};
  impl->shape = TailShape::Constant;
  impl->constant_ratio = p;
  return DSequence(std::move(impl));
}

DSequence DSequence::factorial() {
  auto impl = std::make_shared<Impl>();
  impl->name = "factorial";
  impl->rule = [](std::size_t n) { return Integer(static_cast<unsigned long>(n)); };
  impl->shape = TailShape::Factorial;
  return DSequence(std::move(impl));
}

DSequence DSequence::periodic(std::vector<Integer> ratios) {
  if (ratios.empty()) throw std::invalid_argument("ratios: empty ratio list");
  std::vector<Integer> support;
  bool support_known = true;
  for (const Integer& r : ratios) {
    if (r < 2) throw std::invalid_argument("ratios: every ratio must be >= 2, got " + r.get_str());
    if (auto primes = prime_factors(r)) {
      merge_primes(support, *primes);
    } else {
      support_known = false;
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->name = "ratios:" + join_integers(ratios);
  impl->rule = [ratios](std::size_t n) { return ratios[(n - 2) % ratios.size()]; };
  if (support_known) impl->prime_support = std::move(support);
  impl->shape = TailShape::Periodic;
  impl->period = std::move(ratios);
  return DSequence(std::move(impl));
}

DSequence DSequence::from_rule(std::string name, RatioRule rule, std::optional<std::vector<Integer>> prime_support) {
  if (!rule) throw std::invalid_argument("from_rule: empty rule");
  if (prime_support) {
    for (std::size_t n = 2; n < 2 + kSupportCheckRatios; ++n) {
      Integer r = rule(n);
      if (r < 2) throw std::invalid_argument(name + ": ratio r_" + std::to_string(n) + " < 2");
      if (!factors_over(r, *prime_support)) {
        throw std::invalid_argument(name + ": ratio r_" + std::to_string(n) + " = " + r.get_str() +
                                    " does not factor over the declared prime support");
      }
    }
    std::sort(prime_support->begin(), prime_support->end());
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->rule = std::move(rule);
  impl->prime_support = std::move(prime_support);
  impl->shape = TailShape::Opaque;
  return DSequence(std::move(impl));
}

DSequence DSequence::validate(const std::vector<Integer>& candidate) {
  using Code = DSequenceError::Code;
  if (candidate.empty()) throw DSequenceError(Code::Empty, 0, "empty candidate sequence");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i] <= 0) {
      throw DSequenceError(Code::NonPositive, i + 1, "term " + std::to_string(i + 1) + " is not positive");
    }
  }
  if (candidate[0] != 1) throw DSequenceError(Code::FirstTermNotOne, 1, "b_1 = " + candidate[0].get_str() + " != 1");
  std::vector<Integer> support;
  for (std::size_t n = 1; n < candidate.size(); ++n) {
    const Integer& current = candidate[n - 1];
    const Integer& next = candidate[n];
    if (next == current) {
      throw DSequenceError(Code::RepeatedTerm, n, "b_" + std::to_string(n + 1) + " = b_" + std::to_string(n));
    }
    if (next % current != 0) {
      throw DSequenceError(Code::NotMultiple, n,
                           "b_" + std::to_string(n + 1) + " = " + next.get_str() + " is not a multiple of b_" +
                               std::to_string(n) + " = " + current.get_str());
    }
  }
  bool support_known = true;
  for (std::size_t n = 1; n < candidate.size(); ++n) {
    if (auto primes = prime_factors(Integer(candidate[n] / candidate[n - 1]))) {
      merge_primes(support, *primes);
    } else {
      support_known = false;
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->name = "list:" + join_integers(candidate);
  impl->prefix = candidate;
  impl->length = candidate.size();
  impl->shape = TailShape::Finite;
  if (support_known) impl->prime_support = std::move(support);
  return DSequence(std::move(impl));
}

DSequence DSequence::with_tail(const DSequence& prefix, const DSequence& tail) {
  if (!prefix.length()) throw std::invalid_argument("with_tail: the prefix must be a finite list");
  std::size_t s = *prefix.length();
  auto impl = std::make_shared<Impl>();
  impl->name = prefix.name() + ";" + tail.name();
  impl->prefix = prefix.impl_->prefix;
  impl->seam = s;
  impl->tail = tail.impl_;
  impl->rule = [tail, s](std::size_t n) { return tail.ratio(n - s + 1); };
  impl->shape = TailShape::Opaque;
  if (prefix.prime_support() && tail.prime_support()) {
    std::vector<Integer> support = *prefix.prime_support();
    merge_primes(support, *tail.prime_support());
    impl->prime_support = std::move(support);
  }
  return DSequence(std::move(impl));
}

DSequence DSequence::parse(std::string_view literal) {
  if (auto semi = literal.find(';'); semi != std::string_view::npos) {
    return with_tail(parse(literal.substr(0, semi)), parse(literal.substr(semi + 1)));
  }
  auto integers_after = [&](std::string_view prefix) {
    std::vector<Integer> out;
    for (std::string_view part : split(literal.substr(prefix.size()), ',')) out.push_back(parse_integer(part));
    return out;
  };
  if (literal == "factorial") return factorial();
  if (literal.starts_with("padic:")) return padic(parse_integer(literal.substr(6)));
  if (literal.starts_with("ratios:")) return periodic(integers_after("ratios:"));
  if (literal.starts_with("list:")) return validate(integers_after("list:"));
  throw std::invalid_argument("unknown sequence literal '" + std::string(literal) + "'");
}

// Digits, membership, levels ---------------------------------------------------

Integer DigitVector::reconstruct(const DSequence& b) const {
  Integer total = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) total += digits[i] * b.term(i + 1);
  return sign < 0 ? Integer(-total) : total;
}

DigitVector digits(const Integer& m, const DSequence& b) {
  DigitVector out;
  out.sign = sgn(m);
  Integer rest = abs(m);
  for (std::size_t i = 1; rest > 0; ++i) {
    Integer r = b.ratio(i + 1);
    out.digits.push_back(rest % r);
    rest /= r;
  }
  return out;
}

Verdict badic_member(const Integer& m, const DSequence& b, std::size_t level) {
  if (level == 0) throw std::invalid_argument("badic_member: level must be >= 1");
  Integer bn = b.term(level);
  if (m % bn == 0) return Verdict::in("b_" + std::to_string(level) + " = " + bn.get_str() + " divides " + m.get_str());
  return Verdict::out("b_" + std::to_string(level) + " = " + bn.get_str() + " does not divide " + m.get_str());
}

LevelResult badic_level(const Integer& m, const DSequence& b, std::size_t cap) {
  if (m == 0) throw std::invalid_argument("badic_level: m must be nonzero");
  if (cap == 0) throw std::invalid_argument("badic_level: cap must be >= 1");
  LevelResult out{1, cap == 1};
  Integer magnitude = abs(m);
  for (std::size_t n = 2; n <= cap; ++n) {
    Integer bn = b.term(n);
    if (bn > magnitude || magnitude % bn != 0) return out;
    out.level = n;
  }
  out.at_cap = true;
  return out;
}

// Convergence certificates ------------------------------------------------------

IntegerSequence IntegerSequence::terms_of(const DSequence& b) {
  return {"terms(" + b.name() + ")", [b](std::size_t k) { return b.term(k); }};
}

IntegerSequence IntegerSequence::index_times_terms_of(const DSequence& b) {
  return {"k*terms(" + b.name() + ")",
          [b](std::size_t k) -> Integer { return Integer(static_cast<unsigned long>(k)) * b.term(k); }};
}

IntegerSequence IntegerSequence::constant(const Integer& c) {
  return {"const:" + c.get_str(), [c](std::size_t) { return c; }};
}

IntegerSequence IntegerSequence::parse(std::string_view literal, const DSequence& b) {
  if (literal == "self") return terms_of(b);
  if (literal == "kself") return index_times_terms_of(b);
  if (literal.starts_with("const:")) return constant(parse_integer(literal.substr(6)));
  if (literal.starts_with("dseq:")) return terms_of(DSequence::parse(literal.substr(5)));
  throw std::invalid_argument("unknown integer-sequence literal '" + std::string(literal) + "'");
}

bool ConvergenceCertificate::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.threshold.has_value(); });
}

ConvergenceCertificate convergence_certificate(const IntegerSequence& x, const DSequence& b, std::size_t depth,
                                               std::size_t horizon) {
  if (depth == 0 || horizon == 0) throw std::invalid_argument("convergence_certificate: depth and horizon must be >= 1");
  ConvergenceCertificate cert;
  cert.sequence = x.name;
  cert.dsequence = b.name();
  cert.depth = depth;
  cert.horizon = horizon;
  cert.crosses_seam = b.seam().has_value() && std::max(depth, horizon) > *b.seam();

  std::vector<Integer> values;
  values.reserve(horizon);
  for (std::size_t k = 1; k <= horizon; ++k) values.push_back(x.term(k));

  for (std::size_t n = 1; n <= depth; ++n) {
    Integer bn = b.term(n);
    ConvergenceRow row;
    row.level = n;
    std::size_t last_failure = 0;
    for (std::size_t k = horizon; k >= 1; --k) {
      if (values[k - 1] % bn != 0) {
        last_failure = k;
        break;
      }
    }
    if (last_failure == horizon) {
      row.failure_at = horizon;
    } else {
      row.threshold = last_failure + 1;
    }
    cert.rows.push_back(row);
  }
  return cert;
}

}  // namespace ztop
