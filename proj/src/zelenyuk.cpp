#include "ztop/zelenyuk.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "ztop/exact_torus.hpp"

namespace ztop {

void SearchCaps::validate() const {
  if (index_cap == 0 || slot_cap == 0 || node_budget == 0) {
    throw std::invalid_argument("search caps must all be >= 1");
  }
}

// SignedCombination ----------------------------------------------------------

Integer SignedCombination::value(const DSequence& a) const {
  Integer sum = 0;
  for (const Term& t : terms) sum += t.sign * a.term(t.index);
  return sum;
}

std::size_t SignedCombination::max_index() const {
  std::size_t top = 0;
  for (const Term& t : terms) top = std::max(top, t.index);
  return top;
}

bool SignedCombination::replays(const Integer& g, const DSequence& a,
                                const std::vector<std::size_t>& sorted_mins) const {
  std::vector<bool> used(sorted_mins.size(), false);
  for (const Term& t : terms) {
    if (t.slot == 0 || t.slot > sorted_mins.size() || used[t.slot - 1]) return false;
    if (t.sign != 1 && t.sign != -1) return false;
    if (t.index < sorted_mins[t.slot - 1] || !a.has_term(t.index)) return false;
    used[t.slot - 1] = true;
  }
  return value(a) == g;
}

std::string SignedCombination::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const Term& t : terms) {
    if (!out.empty()) out += " ";
    out += (t.sign > 0 ? "+a" : "-a") + std::to_string(t.index) + "[slot " + std::to_string(t.slot) + "]";
  }
  return out;
}

// Mins -----------------------------------------------------------------------

namespace {

std::size_t parse_size(std::string_view text, const char* what) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

long parse_long(std::string_view text, const char* what) {
  long value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

MinsRule MinsRule::constant(std::size_t m) {
  if (m == 0) throw std::invalid_argument("slot minimum must be >= 1");
  return MinsRule(Kind::Constant, 0, static_cast<long>(m));
}

MinsRule MinsRule::linear(std::size_t slope, long offset) {
  if (static_cast<long>(slope) + offset < 1) throw std::invalid_argument("linear rule gives n_1 < 1");
  return MinsRule(Kind::Linear, slope, offset);
}

MinsRule MinsRule::parse(std::string_view literal) {
  if (literal == "id") return identity();
  if (literal.starts_with("const:")) return constant(parse_size(literal.substr(6), "constant"));
  if (literal.starts_with("shift:")) return shift(parse_size(literal.substr(6), "shift"));
  if (literal.starts_with("linear:")) {
    auto body = literal.substr(7);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("linear rule needs 'linear:a,b'");
    return linear(parse_size(body.substr(0, comma), "slope"), parse_long(body.substr(comma + 1), "offset"));
  }
  throw std::invalid_argument("unknown mins rule '" + std::string(literal) + "'");
}

std::size_t MinsRule::at(std::size_t i) const {
  if (i == 0) throw std::out_of_range("slots are numbered from 1");
  switch (kind_) {
    case Kind::Constant: return static_cast<std::size_t>(offset_);
    case Kind::Identity: return i;
    case Kind::Shift: return i + static_cast<std::size_t>(offset_);
    case Kind::Linear: break;
  }
  return static_cast<std::size_t>(static_cast<long>(slope_ * i) + offset_);
}

std::vector<std::size_t> MinsRule::prefix(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(at(i));
  return out;
}

std::string MinsRule::literal() const {
  switch (kind_) {
    case Kind::Constant: return "const:" + std::to_string(offset_);
    case Kind::Identity: return "id";
    case Kind::Shift: return "shift:" + std::to_string(offset_);
    case Kind::Linear: break;
  }
  return "linear:" + std::to_string(slope_) + "," + std::to_string(offset_);
}

std::vector<std::size_t> normalize_mins(std::vector<std::size_t> mins) {
  if (mins.empty()) throw std::invalid_argument("mins must be nonempty");
  for (std::size_t m : mins) {
    if (m == 0) throw std::invalid_argument("every slot minimum must be >= 1");
  }
  std::sort(mins.begin(), mins.end());
  return mins;
}

std::vector<std::size_t> parse_mins(std::string_view literal) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = literal.find(',', start);
    out.push_back(parse_size(literal.substr(start, comma == std::string_view::npos ? comma : comma - start), "slot minimum"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return normalize_mins(std::move(out));
}

std::string ZelenyukSpec::mins_literal() const {
  if (const auto* rule = std::get_if<MinsRule>(&mins)) return "rule:" + rule->literal();
  std::string out;
  for (std::size_t m : std::get<0>(mins)) {
    if (!out.empty()) out += ",";
    out += std::to_string(m);
  }
  return out;
}

// Carry search -----------------------------------------------------------------
//
// Group a combination by index: g = sum_j c_j a_j with sum |c_j| <= k. Walking
// j upwards, the residual g - sum_{i<j} c_i a_i is q a_j, and choosing c_j
// forces q - c_j to be divisible by r_{j+1}. Terms of index j fill the next
// |c_j| slots of the sorted mins, which is optimal because earlier terms have
// smaller indices.

namespace {

struct SmallKey {
  std::size_t j;
  std::size_t u;
  std::int64_t q;
  bool operator==(const SmallKey&) const = default;
};

struct SmallKeyHash {
  std::size_t operator()(const SmallKey& k) const {
    std::size_t h = std::hash<std::int64_t>()(k.q);
    h ^= (k.j * 0x9E3779B97F4A7C15ULL) + (k.u << 32) + (h << 6) + (h >> 2);
    return h;
  }
};

struct SmallTraits {
  using Int = std::int64_t;
  using Memo = std::unordered_set<SmallKey, SmallKeyHash>;
  static Int ratio(const DSequence& a, std::size_t n) { return a.small_ratio(n); }
  static bool seen(const Memo& m, std::size_t j, std::size_t u, Int q) { return m.contains({j, u, q}); }
  static void mark(Memo& m, std::size_t j, std::size_t u, Int q) { m.insert({j, u, q}); }
  static Int from(const Integer& g) { return g.get_si(); }
  static bool divides(Int r, Int x) { return x % r == 0; }
};

struct BigTraits {
  using Int = Integer;
  using Memo = std::set<std::tuple<std::size_t, std::size_t, Integer>>;
  static Int ratio(const DSequence& a, std::size_t n) { return a.ratio(n); }
  static bool seen(const Memo& m, std::size_t j, std::size_t u, const Int& q) { return m.contains({j, u, q}); }
  static void mark(Memo& m, std::size_t j, std::size_t u, const Int& q) { m.insert({j, u, q}); }
  static Int from(const Integer& g) { return g; }
  static bool divides(const Int& r, const Int& x) { return mpz_divisible_p(x.get_mpz_t(), r.get_mpz_t()) != 0; }
};

template <typename Traits>
class CarrySearch {
 public:
  using Int = typename Traits::Int;

  CarrySearch(const DSequence& a, const std::vector<std::size_t>& mins, std::size_t budget)
      : a_(a), mins_(mins), k_(mins.size()), budget_(budget), length_(a.length()) {}

  // true: found; false: exhausted (check exhausted_budget()).
  bool run(const Integer& g) { return step(1, Traits::from(g), 0); }

  bool exhausted_budget() const { return over_budget_; }
  std::size_t nodes() const { return nodes_; }

  SignedCombination witness() const {
    SignedCombination out;
    std::size_t slot = 1;
    for (const auto& [j, c] : path_) {
      int sign = c > 0 ? 1 : -1;
      for (Int t = 0; t < (c > 0 ? c : Int(-c)); ++t) out.terms.push_back({slot++, j, sign});
    }
    return out;
  }

 private:
  const Int& ratio_after(std::size_t j) {
    while (ratios_.size() < j) ratios_.push_back(Traits::ratio(a_, ratios_.size() + 2));
    return ratios_[j - 1];
  }

  bool step(std::size_t j, const Int& q, std::size_t used) {
    if (q == 0) return true;
    if (over_budget_) return false;
    if (++nodes_ > budget_) {
      over_budget_ = true;
      return false;
    }
    if (Traits::seen(memo_, j, used, q)) return false;
    const bool last = length_ && j >= *length_;
    if (length_ && j > *length_) return false;
    const std::size_t left = k_ - used;
    for (std::size_t t = 0; t <= left; ++t) {
      if (t > 0 && mins_[used + t - 1] > j) break;
      for (int sign : {1, -1}) {
        if (t == 0 && sign < 0) break;
        Int c = Int(static_cast<long>(t)) * sign;
        Int diff = q - c;
        if (last) {
          if (diff != 0) continue;
          path_.emplace_back(j, c);
          return true;
        }
        const Int& r = ratio_after(j);
        if (!Traits::divides(r, diff)) continue;
        if (t > 0) path_.emplace_back(j, c);
        if (step(j + 1, Int(diff / r), used + t)) return true;
        if (over_budget_) return false;
        if (t > 0) path_.pop_back();
      }
    }
    Traits::mark(memo_, j, used, q);
    return false;
  }

  const DSequence& a_;
  const std::vector<std::size_t>& mins_;
  std::size_t k_;
  std::size_t budget_;
  std::optional<std::size_t> length_;
  std::vector<Int> ratios_;
  typename Traits::Memo memo_;
  std::vector<std::pair<std::size_t, Int>> path_;
  std::size_t nodes_ = 0;
  bool over_budget_ = false;
};

template <typename Traits>
BracketResult run_carry_search(const Integer& g, const DSequence& a, const std::vector<std::size_t>& mins,
                               const SearchCaps& caps, BracketResult result) {
  CarrySearch<Traits> search(a, mins, caps.node_budget);
  bool found = search.run(g);
  result.nodes = search.nodes();
  if (found) {
    result.witness = search.witness();
    result.verdict = Verdict::in(result.witness->to_string());
    result.verdict.witness = result.witness->to_string();
    return result;
  }
  if (search.exhausted_budget()) {
    result.verdict = Verdict::unknown("Unknown(caps): node budget " + std::to_string(caps.node_budget) + " exhausted");
    return result;
  }
  result.closures_applied.push_back("carry-exhaustion");
  result.verdict = Verdict::out("no signed combination of at most " + std::to_string(mins.size()) +
                                " terms respects the slot minima (exhaustive carry search)");
  return result;
}

const Integer kSmallLimit = Integer(1) << 60;

}  // namespace

BracketResult bracket_member(const Integer& g, const DSequence& a, std::vector<std::size_t> mins,
                             const SearchCaps& caps) {
  caps.validate();
  mins = normalize_mins(std::move(mins));
  BracketResult result;
  if (g == 0) {
    result.witness = SignedCombination{};
    result.verdict = Verdict::in("every slot takes 0");
    result.verdict.witness = "0";
    return result;
  }
  if (!a.has_term(mins.front())) {
    result.closures_applied.push_back("divisibility");
    result.verdict = Verdict::out("every slot minimum exceeds the length of " + a.name() + ", so only 0 is reachable");
    return result;
  }
  const Integer lead = a.term(mins.front());
  if (g % lead != 0) {
    result.closures_applied.push_back("divisibility");
    result.verdict = Verdict::out("a_" + std::to_string(mins.front()) + " = " + lead.get_str() +
                                  " divides every element and does not divide " + g.get_str());
    return result;
  }
  if (abs(g) < kSmallLimit) return run_carry_search<SmallTraits>(g, a, mins, caps, std::move(result));
  return run_carry_search<BigTraits>(g, a, mins, caps, std::move(result));
}

BracketResult bracket_member(const Integer& g, const ZelenyukSpec& spec) {
  if (const auto* rule = std::get_if<MinsRule>(&spec.mins)) return vn_member(g, spec.seq, *rule, spec.caps);
  return bracket_member(g, spec.seq, std::get<0>(spec.mins), spec.caps);
}

BracketResult vn_member(const Integer& g, const DSequence& a, const MinsRule& rule, const SearchCaps& caps) {
  caps.validate();
  std::size_t total_nodes = 0;
  for (std::size_t k = 1; k <= caps.slot_cap; ++k) {
    BracketResult r = bracket_member(g, a, rule.prefix(k), caps);
    total_nodes += r.nodes;
    r.nodes = total_nodes;
    r.slots = k;
    if (r.verdict.is_in()) return r;
    bool divisibility = std::find(r.closures_applied.begin(), r.closures_applied.end(), "divisibility") !=
                        r.closures_applied.end();
    // a_{n_1} divides every element for every k, so this Out holds for V as a whole.
    if (r.verdict.is_out() && divisibility) return r;
  }
  BracketResult out;
  out.nodes = total_nodes;
  out.slots = caps.slot_cap;
  out.verdict = Verdict::unknown("Unknown(" + std::to_string(caps.slot_cap) + "): no combination with at most " +
                                 std::to_string(caps.slot_cap) + " slots, and larger k is not settled");
  return out;
}

BracketResult vn_member(const Integer& g, const ZelenyukSpec& spec) {
  if (const auto* rule = std::get_if<MinsRule>(&spec.mins)) return vn_member(g, spec.seq, *rule, spec.caps);
  return bracket_member(g, spec.seq, std::get<0>(spec.mins), spec.caps);
}

// Oracle -------------------------------------------------------------------------

namespace {

std::size_t choices_for(const DSequence& a, std::size_t min, std::size_t cap) {
  std::size_t top = cap;
  if (auto len = a.length()) top = std::min(top, *len);
  return min > top ? 1 : 2 * (top - min + 1) + 1;
}

void check_space(const DSequence& a, const std::vector<std::size_t>& mins, std::size_t cap, std::size_t limit) {
  double space = 1;
  for (std::size_t m : mins) space *= static_cast<double>(choices_for(a, m, cap));
  if (space > static_cast<double>(limit)) {
    throw std::length_error("oracle search space " + std::to_string(static_cast<long long>(space)) +
                            " exceeds the limit " + std::to_string(limit));
  }
}

}  // namespace

BracketResult brute_force_oracle(const Integer& g, const DSequence& a, std::vector<std::size_t> mins,
                                 std::size_t index_cap, std::size_t space_limit) {
  mins = normalize_mins(std::move(mins));
  if (index_cap == 0) throw std::invalid_argument("index_cap must be >= 1");
  check_space(a, mins, index_cap, space_limit);
  std::size_t top = index_cap;
  if (auto len = a.length()) top = std::min(top, *len);
  std::vector<Integer> terms(top + 1);
  for (std::size_t j = 1; j <= top; ++j) terms[j] = a.term(j);

  BracketResult result;
  std::vector<SignedCombination::Term> chosen;
  auto rec = [&](auto&& self, std::size_t slot, const Integer& sum) -> bool {
    ++result.nodes;
    if (slot == mins.size()) return sum == g;
    if (self(self, slot + 1, sum)) return true;
    for (std::size_t j = mins[slot]; j <= top; ++j) {
      for (int sign : {1, -1}) {
        chosen.push_back({slot + 1, j, sign});
        if (self(self, slot + 1, Integer(sum + sign * terms[j]))) return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  if (rec(rec, 0, Integer(0))) {
    result.witness = SignedCombination{chosen};
    result.verdict = Verdict::in(result.witness->to_string());
    result.verdict.witness = result.witness->to_string();
  } else {
    result.verdict = Verdict::out("Out-within-cap(" + std::to_string(index_cap) +
                                  "): no assignment with indices <= " + std::to_string(index_cap));
  }
  return result;
}

BracketSumset::BracketSumset(const DSequence& a, std::vector<std::size_t> mins, std::size_t index_cap,
                             std::size_t space_limit) {
  mins = normalize_mins(std::move(mins));
  check_space(a, mins, index_cap, space_limit);
  std::size_t top = index_cap;
  if (auto len = a.length()) top = std::min(top, *len);
  const Integer bound = Integer(1) << 62;
  std::vector<std::int64_t> terms(top + 1, 0);
  for (std::size_t j = 1; j <= top; ++j) {
    Integer t = a.term(j);
    if (t * static_cast<long>(mins.size()) >= bound) throw std::overflow_error("oracle sums overflow 64 bits");
    terms[j] = t.get_si();
  }
  sums_ = {0};
  for (std::size_t m : mins) {
    std::vector<std::int64_t> next;
    next.reserve(sums_.size() * choices_for(a, m, index_cap));
    for (std::int64_t s : sums_) {
      next.push_back(s);
      for (std::size_t j = m; j <= top; ++j) {
        next.push_back(s + terms[j]);
        next.push_back(s - terms[j]);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sums_ = std::move(next);
  }
}

bool BracketSumset::contains(std::int64_t g) const { return std::binary_search(sums_.begin(), sums_.end(), g); }

// Tails ----------------------------------------------------------------------------

TailCertificate tail_convergence_check(const DSequence& a, const MinsRule& rule, const SearchCaps& caps,
                                       std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  TailCertificate cert;
  cert.mins = rule.literal();
  cert.horizon = horizon;
  if (auto len = a.length()) cert.horizon = std::min(horizon, *len);
  for (std::size_t j = 1; j <= cert.horizon; ++j) {
    cert.rows.push_back({j, vn_member(a.term(j), a, rule, caps).verdict});
  }
  for (std::size_t j = cert.horizon; j >= 1 && cert.rows[j - 1].verdict.is_in(); --j) cert.entry = j;
  return cert;
}

}  // namespace ztop
