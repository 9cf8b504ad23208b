#pragma once

// Basic neighbourhoods of 0 from the four constructions behind one membership
// oracle, and finite-window checks built on it: the neighbourhood axioms,
// inclusion between two bases, and covers G = F + V.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ztop/dsequence.hpp"
#include "ztop/exact_torus.hpp"
#include "ztop/uniform.hpp"
#include "ztop/weak.hpp"
#include "ztop/zelenyuk.hpp"

namespace ztop {

class NeighborhoodSpec {
 public:
  struct Badic {
    DSequence seq;
    std::size_t level;
  };
  struct Weak {
    CharacterSet chars;
    Rational band;
  };
  struct Uniform {
    SSpec s;
    std::size_t level;
  };
  struct Zelenyuk {
    ZelenyukSpec spec;
  };
  using Variant = std::variant<Badic, Weak, Uniform, Zelenyuk>;

  static NeighborhoodSpec badic(const DSequence& seq, std::size_t level);
  static NeighborhoodSpec weak(const CharacterSet& chars, const Rational& band);
  static NeighborhoodSpec uniform(const SSpec& s, std::size_t level);
  static NeighborhoodSpec zelenyuk(const ZelenyukSpec& spec);

  /// "badic:factorial@3", "weak:1/5@1/10", "unif:set:1/2,1/4@1", "zel:padic:2@1,1",
  /// "zel:padic:2@rule:id". Zelenyuk caps come from `caps`.
  static NeighborhoodSpec parse(std::string_view literal, const SearchCaps& caps = {});
  /// As parse, but a trailing "@n=a..b" expands to one spec per n
  /// (levels for badic/unif, bands 1/(4n) for weak).
  static std::vector<NeighborhoodSpec> parse_family(std::string_view literal, const SearchCaps& caps = {});

  const Variant& variant() const { return value_; }
  std::string literal() const;
  std::string kind_name() const;

 private:
  explicit NeighborhoodSpec(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

struct Window {
  Integer lo;
  Integer hi;

  Window(Integer lo, Integer hi);
  /// "lo..hi", e.g. "-100..100".
  static Window parse(std::string_view literal);
  std::size_t size() const;
  std::string literal() const;
};

Verdict member(const Integer& k, const NeighborhoodSpec& v, const PrecisionPolicy& policy = {});

enum class AxiomStatus { Pass, Fail, Inconclusive, NotApplicable };
std::string to_string(AxiomStatus s);

struct AxiomReport {
  std::string axiom;
  AxiomStatus status = AxiomStatus::Inconclusive;
  std::optional<std::string> counterexample;
  std::optional<std::string> witness;
};

struct AxiomsReport {
  Window window;
  std::vector<AxiomReport> axioms;  // G1, G2, G3, G4, G5
  static constexpr const char* label = "window evidence, not proof";

  AxiomStatus overall() const;
};

inline constexpr std::size_t kDefaultWindowBudget = 1'000'000;

AxiomsReport axioms_check_window(const std::vector<NeighborhoodSpec>& family, const Window& w,
                                 const PrecisionPolicy& policy = {}, std::size_t budget = kDefaultWindowBudget);

struct InclusionEntry {
  std::size_t target;                       // index into the second family
  std::optional<std::size_t> included_by;   // first V1 with V1 n w inside V2 n w
  std::vector<std::pair<std::size_t, Integer>> counterexamples;  // (candidate, k in V1 \ V2)
  AxiomStatus status = AxiomStatus::Inconclusive;                // Pass = inclusion found
};

struct CompareReport {
  Window window;
  std::vector<InclusionEntry> first_refines_second;  // for each V2 in t2, some V1 in t1 inside it
  std::vector<InclusionEntry> second_refines_first;
  static constexpr const char* label = "window evidence, not proof";
};

CompareReport compare_window(const std::vector<NeighborhoodSpec>& t1, const std::vector<NeighborhoodSpec>& t2,
                             const Window& w, const PrecisionPolicy& policy = {},
                             std::size_t budget = kDefaultWindowBudget);

struct CoverWitness {
  std::vector<Integer> translates;
  std::string neighborhood;
  Window window;
};

struct CoverResult {
  std::optional<CoverWitness> witness;
  std::string failure;  // set when there is no witness
};

CoverResult cover_witness(const NeighborhoodSpec& v, const Window& w, std::size_t budget = kDefaultWindowBudget);

struct ReplayResult {
  std::vector<Integer> gaps;        // k with no f in F and k - f in V
  std::vector<Integer> undecided;   // k whose only candidates were Unknown
  bool complete() const { return gaps.empty() && undecided.empty(); }
};

ReplayResult replay_cover(const CoverWitness& cover, const NeighborhoodSpec& v, const PrecisionPolicy& policy = {});

}  // namespace ztop
