#pragma once

// Divisibility chains b_1 = 1 | b_2 | b_3 | ... with b_{n+1} != b_n. Each one
// induces the linear topology on Z with base {b_n Z}; the p-adic topology is
// padic:p with b_n = p^(n-1), so levels are shifted by one against the usual
// exponent.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ztop/real.hpp"
#include "ztop/verdict.hpp"

namespace ztop {

class DSequenceError : public std::invalid_argument {
 public:
  enum class Code { Empty, NonPositive, FirstTermNotOne, NotMultiple, RepeatedTerm };

  DSequenceError(Code code, std::size_t index, const std::string& what)
      : std::invalid_argument(what), code_(code), index_(index) {}

  Code code() const { return code_; }
  /// 1-based n such that the clause between b_n and b_{n+1} failed (0 when not applicable).
  std::size_t index() const { return index_; }

 private:
  Code code_;
  std::size_t index_;
};

std::string to_string(DSequenceError::Code code);

/// How ratios behave past any finite prefix; drives exact tail arguments.
enum class TailShape { Constant, Periodic, Factorial, Opaque, Finite };

class DSequence {
 public:
  /// Ratio rule r_n = b_n / b_{n-1}, called for n >= 2; must return >= 2.
  using RatioRule = std::function<Integer(std::size_t)>;

  static DSequence padic(const Integer& p);
  static DSequence factorial();
  /// Ratios repeat the list: r_2 = ratios[0], r_3 = ratios[1], ...
  static DSequence periodic(std::vector<Integer> ratios);
  /// Arbitrary rule. A supplied prime support is verified on the first 64 ratios.
  static DSequence from_rule(std::string name, RatioRule rule,
                             std::optional<std::vector<Integer>> prime_support = std::nullopt);
  /// Accepts a finite candidate prefix; throws DSequenceError.
  static DSequence validate(const std::vector<Integer>& candidate);
  /// Finite prefix followed by `tail` restarted at the seam: for n past the
  /// prefix length s, r_n = tail.ratio(n - s + 1).
  static DSequence with_tail(const DSequence& prefix, const DSequence& tail);

  /// "padic:2", "factorial", "ratios:2,3,4,5", "list:1,2,6,24", "list:1,2,6;padic:5".
  static DSequence parse(std::string_view literal);

  const std::string& name() const;
  /// b_n for n >= 1. Throws std::out_of_range past a finite sequence.
  Integer term(std::size_t n) const;
  /// r_n = b_n / b_{n-1} for n >= 2.
  Integer ratio(std::size_t n) const;
  /// min(r_n, 2^62), cached for hot loops.
  std::int64_t small_ratio(std::size_t n) const;
  bool has_term(std::size_t n) const;

  std::optional<std::size_t> length() const;
  /// Last index of an explicit prefix that is followed by a rule.
  std::optional<std::size_t> seam() const;
  /// Primes over which every ratio factors, when known exactly.
  const std::optional<std::vector<Integer>>& prime_support() const;
  TailShape tail_shape() const;

  /// Whether every ratio r_j with j > after is coprime to the prime p.
  /// nullopt when the rule does not say.
  std::optional<bool> tail_ratios_coprime_to(const Integer& p, std::size_t after) const;

 private:
  struct Impl;
  explicit DSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Mixed-radix digits of |m|: |m| = sum c_i b_i with 0 <= c_i < r_{i+1}.
struct DigitVector {
  int sign = 0;  // -1, 0, +1
  std::vector<Integer> digits;

  Integer reconstruct(const DSequence& b) const;
};

DigitVector digits(const Integer& m, const DSequence& b);

/// m in b_n Z. Always exact.
Verdict badic_member(const Integer& m, const DSequence& b, std::size_t level);

struct LevelResult {
  std::size_t level = 0;
  bool at_cap = false;  // b_cap | m, so larger levels were not examined
};

/// max{n <= cap : b_n | m} for m != 0. Equals v_p(m) + 1 for padic:p below the cap.
LevelResult badic_level(const Integer& m, const DSequence& b, std::size_t cap);

/// An integer sequence x_1, x_2, ... to be tested for convergence to 0 in lambda_b.
struct IntegerSequence {
  std::string name;
  std::function<Integer(std::size_t)> term;

  static IntegerSequence terms_of(const DSequence& b);
  static IntegerSequence index_times_terms_of(const DSequence& b);
  static IntegerSequence constant(const Integer& c);
  /// "self", "kself", "const:c", "dseq:<literal>" (with `b` bound to self).
  static IntegerSequence parse(std::string_view literal, const DSequence& b);
};

struct ConvergenceRow {
  std::size_t level = 0;
  std::optional<std::size_t> threshold;     // least K_n
  std::optional<std::size_t> failure_at;    // x_k not in b_n Z at k = horizon
};

/// Finite evidence that x_k -> 0 in lambda_b: K_n such that b_n | x_k for K_n <= k <= horizon.
struct ConvergenceCertificate {
  std::string sequence;
  std::string dsequence;
  std::size_t depth = 0;
  std::size_t horizon = 0;
  std::vector<ConvergenceRow> rows;
  bool crosses_seam = false;
  static constexpr const char* label = "finite evidence, not proof";

  bool all_converged() const;
};

ConvergenceCertificate convergence_certificate(const IntegerSequence& x, const DSequence& b,
                                               std::size_t depth, std::size_t horizon);

/// Prime factors of n by trial division; nullopt when a cofactor above the
/// trial bound cannot be certified prime.
std::optional<std::vector<Integer>> prime_factors(const Integer& n);

}  // namespace ztop
