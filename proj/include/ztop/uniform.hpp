#pragma once

// The pseudometric d_S(m, n) = sup_{x in S} 2|sin(pi (m - n) x)| and the
// basic neighbourhoods V_{S,n} = {k : ||k x|| <= 1/(4n) for all x in S} of
// the uniform-convergence topology rho_S.
//
// For rational points the chord 2 sin(pi t) is increasing in t = ||(m-n)x||,
// so every comparison between rational chords reduces to an exact comparison
// of torus norms; sines are only evaluated to report enclosures.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ztop/dsequence.hpp"
#include "ztop/exact_torus.hpp"

namespace ztop {

class SSpec {
 public:
  struct Explicit {
    std::vector<TorusPoint> points;
  };
  struct Grid {
    Integer size;  // {i/N : 0 <= i < N}
  };
  struct InvSeq {
    DSequence seq;  // {1/b_j mod 1 : j >= 1}
  };

  static SSpec explicit_set(std::vector<TorusPoint> points);
  static SSpec grid(const Integer& n);
  static SSpec inverse_sequence(const DSequence& b);
  /// "set:1/8,1/5", "grid:64", "inv:padic:2".
  static SSpec parse(std::string_view literal);

  const std::variant<Explicit, Grid, InvSeq>& variant() const { return value_; }
  bool all_rational() const;
  std::string literal() const;

 private:
  explicit SSpec(std::variant<Explicit, Grid, InvSeq> v) : value_(std::move(v)) {}
  std::variant<Explicit, Grid, InvSeq> value_;
};

struct DistanceValue {
  Enclosure value;
  /// Exact ||(m - n) x*|| at the maximising point, when that point is rational.
  std::optional<Rational> norm;
  std::optional<TorusPoint> attaining_point;
  /// InvSeq: number of leading terms examined (the rest are dominated).
  std::optional<std::size_t> prefix_bound;

  bool exact() const { return value.degenerate(); }
};

DistanceValue pseudometric(const Integer& m, const Integer& n, const SSpec& s, mpfr_prec_t bits = 64);

/// Largest j with b_j <= 4 n |k|: only these terms of InvSeq(b) can push k out of V_{S,n}.
/// For b_j > 4n|k| one has 0 < |k|/b_j < 1/(4n). Returns 0 for k = 0.
std::size_t invseq_violation_prefix(const Integer& k, const DSequence& b, std::size_t level);

/// k in V_{S,n}. Exact for InvSeq. `explicit_prefix` forces an InvSeq check of
/// exactly that many leading terms instead of the dominance bound.
Verdict uniform_member(const Integer& k, const SSpec& s, std::size_t level, const PrecisionPolicy& policy = {},
                       std::optional<std::size_t> explicit_prefix = std::nullopt);

struct TranslationReport {
  DistanceValue base;     // d(m, n)
  DistanceValue shifted;  // d(m + k, n + k)
  bool exact = false;     // compared by exact norms
  bool equal = false;     // exact equality, or overlapping enclosures
};

TranslationReport translation_invariance_check(const Integer& m, const Integer& n, const Integer& k, const SSpec& s,
                                               mpfr_prec_t bits = 64);

/// d(m, k) <= d(m, n) + d(n, k). In = holds, Out = violated, Unknown at the ceiling.
Verdict triangle_inequality(const Integer& m, const Integer& n, const Integer& k, const SSpec& s,
                            const PrecisionPolicy& policy = {});

struct ScanRow {
  Integer grid_size;
  DistanceValue value;
  Enclosure floor;             // 2 cos(pi / (2N))
  bool floor_applies = false;  // gcd(m - n, N) = 1, or N / gcd even
  bool meets_floor = false;    // value >= floor, decided exactly
};

std::vector<ScanRow> dense_limit_scan(const Integer& m, const Integer& n, const std::vector<Integer>& grid_sizes,
                                      mpfr_prec_t bits = 64);

/// max_i ||d i / N|| over the grid, with the least attaining i.
struct GridMax {
  Rational norm;
  Integer index;
};
GridMax grid_max_norm(const Integer& d, const Integer& grid_size);

}  // namespace ztop
