#pragma once

// Neighbourhoods of the finest group topology in which a T-sequence a
// converges to 0. With A*_m = {+-a_n : n >= m} u {0}:
//
//   [n_1, ..., n_k] = {g_1 + ... + g_k : g_i in A*_{n_i}}
//   V_{(n_i)}       = union over k of [n_1, ..., n_k]
//
// Here a is always a D-sequence.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ztop/dsequence.hpp"

namespace ztop {

struct SearchCaps {
  std::size_t index_cap = 12;
  std::size_t slot_cap = 4;
  std::size_t node_budget = 1'000'000;

  void validate() const;
};

struct SignedCombination {
  struct Term {
    std::size_t slot;   // 1-based position in the sorted mins
    std::size_t index;  // j with a_j used in that slot
    int sign;           // +1 or -1
  };
  std::vector<Term> terms;  // unused slots are omitted

  Integer value(const DSequence& a) const;
  std::size_t max_index() const;
  /// Sums to g, every slot used once, every index respects its slot minimum.
  bool replays(const Integer& g, const DSequence& a, const std::vector<std::size_t>& sorted_mins) const;
  std::string to_string() const;
};

/// A nondecreasing rule i -> n_i for i >= 1.
class MinsRule {
 public:
  enum class Kind { Constant, Linear, Identity, Shift };

  static MinsRule constant(std::size_t m);
  /// n_i = slope * i + offset.
  static MinsRule linear(std::size_t slope, long offset);
  static MinsRule identity() { return MinsRule(Kind::Identity, 1, 0); }
  static MinsRule shift(std::size_t s) { return MinsRule(Kind::Shift, 1, static_cast<long>(s)); }
  /// "const:2", "linear:2,1", "id", "shift:1".
  static MinsRule parse(std::string_view literal);

  std::size_t at(std::size_t i) const;
  std::vector<std::size_t> prefix(std::size_t k) const;
  std::string literal() const;

 private:
  MinsRule(Kind kind, std::size_t slope, long offset) : kind_(kind), slope_(slope), offset_(offset) {}
  Kind kind_;
  std::size_t slope_;
  long offset_;
};

/// Sorts ascending and checks every entry is >= 1.
std::vector<std::size_t> normalize_mins(std::vector<std::size_t> mins);
std::vector<std::size_t> parse_mins(std::string_view literal);

struct ZelenyukSpec {
  DSequence seq;
  std::variant<std::vector<std::size_t>, MinsRule> mins;
  SearchCaps caps;

  bool has_explicit_mins() const { return mins.index() == 0; }
  std::string mins_literal() const;
};

struct BracketResult {
  Verdict verdict;
  std::optional<SignedCombination> witness;
  std::vector<std::string> closures_applied;
  std::size_t nodes = 0;
  std::optional<std::size_t> slots;  // vn_member: the k that decided the answer
};

/// g in [n_1, ..., n_k] for the given mins (sorted internally).
BracketResult bracket_member(const Integer& g, const DSequence& a, std::vector<std::size_t> mins,
                             const SearchCaps& caps = {});
BracketResult bracket_member(const Integer& g, const ZelenyukSpec& spec);

/// g in V_{(n_i)}, trying k = 1 .. slot_cap.
BracketResult vn_member(const Integer& g, const DSequence& a, const MinsRule& rule, const SearchCaps& caps = {});
BracketResult vn_member(const Integer& g, const ZelenyukSpec& spec);

inline constexpr std::size_t kOracleSpaceLimit = 10'000'000;

/// Plain enumeration of every slot assignment with indices <= index_cap. Out
/// here only means "not representable within the cap".
BracketResult brute_force_oracle(const Integer& g, const DSequence& a, std::vector<std::size_t> mins,
                                 std::size_t index_cap, std::size_t space_limit = kOracleSpaceLimit);

/// All elements of [n_1, ..., n_k] using indices <= index_cap, for batch oracle queries.
class BracketSumset {
 public:
  BracketSumset(const DSequence& a, std::vector<std::size_t> mins, std::size_t index_cap,
                std::size_t space_limit = kOracleSpaceLimit);

  bool contains(std::int64_t g) const;
  const std::vector<std::int64_t>& sums() const { return sums_; }

 private:
  std::vector<std::int64_t> sums_;
};

struct TailRow {
  std::size_t index;
  Verdict verdict;
};

struct TailCertificate {
  std::string mins;
  std::size_t horizon = 0;
  std::vector<TailRow> rows;         // j = 1 .. horizon
  std::optional<std::size_t> entry;  // least J with a_j in V for all J <= j <= horizon
  static constexpr const char* label = "finite evidence, not proof";
};

TailCertificate tail_convergence_check(const DSequence& a, const MinsRule& rule, const SearchCaps& caps,
                                       std::size_t horizon);

}  // namespace ztop
