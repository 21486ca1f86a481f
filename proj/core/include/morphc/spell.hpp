#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morphc/description.hpp"
#include "morphc/features.hpp"
#include "morphc/unicode.hpp"

namespace morphc {

/// Characters bound to rule digits 0-9 in one rule application; 0 = unbound.
using ClassBindings = std::array<char32_t, 10>;

/// A spelling rule with its class digits resolved to character sets and its
/// feature list compiled. Left contexts are kept reversed so they can be
/// matched outwards from the target.
struct CompiledRule {
  std::string name;
  RuleOp op = RuleOp::optional;
  SpecString surface_target, surface_right, surface_left_rev;
  SpecString lexical_target, lexical_right, lexical_left_rev;
  std::array<std::vector<char32_t>, 10> classes;  // sorted members per digit
  FeatureVector features;
  bool is_default = false;

  bool in_class(int digit, char32_t c) const;
};

class RuleSet {
 public:
  RuleSet() = default;

  /// Throws std::invalid_argument on a class or feature the description does
  /// not declare.
  static RuleSet compile(const Description& d, const FeatureSpace& orth);

  const std::vector<CompiledRule>& rules() const { return rules_; }
  const CompiledRule& rule(std::size_t i) const { return rules_[i]; }
  std::size_t size() const { return rules_.size(); }
  std::optional<std::size_t> find(std::string_view name) const;
  const FeatureSpace& orth_space() const { return orth_; }
  bool is_boundary(char32_t c) const;
  const std::vector<char32_t>& boundary_chars() const { return boundary_; }
  /// Index of the rule named `default`, if any.
  std::optional<std::size_t> default_rule() const { return default_; }

 private:
  std::vector<CompiledRule> rules_;
  std::map<std::string, std::size_t, std::less<>> index_;
  FeatureSpace orth_;
  std::vector<char32_t> boundary_;
  std::optional<std::size_t> default_;
};

struct Partition {
  Text surface;  // may be empty
  Text lexical;  // never empty
  std::string rule;
  ClassBindings bindings{};

  auto operator<=>(const Partition&) const = default;
};

struct Partitioning {
  std::vector<Partition> parts;
  FeatureVector orth;  // conjunction of the applied rules' features

  Text surface() const;
  Text lexical() const;
  auto operator<=>(const Partitioning&) const = default;
};

struct SpellVerdict {
  enum class Outcome { licensed, broken, unlicensed };

  Outcome outcome = Outcome::licensed;
  std::string rule;       // broken: the obligatory rule
  std::size_t index = 0;  // broken/unlicensed: partition index

  bool ok() const { return outcome == Outcome::licensed; }
  auto operator<=>(const SpellVerdict&) const = default;
};

/// Offsets of one partition in the surface and lexical strings.
struct Site {
  std::size_t surface_begin = 0, surface_end = 0;
  std::size_t lexical_begin = 0, lexical_end = 0;
};

struct License {
  ClassBindings bindings{};
  FeatureVector constraint;  // orth unified with the rule's features
};

std::optional<License> licenses(const CompiledRule& rule, const Site& at, TextView surface, TextView lexical,
                                const FeatureVector& orth);

/// Whether the partition at `at` breaks obligatory `rule`: its lexical piece
/// is exactly the rule's lexical target, all four contexts match (surface
/// contexts on the surface string as realised), the features unify with
/// `orth`, and the rule does not license the surface piece.
bool breaks(const CompiledRule& rule, const Site& at, TextView surface, TextView lexical, const FeatureVector& orth);

/// Every partition breaking an obligatory rule, as (partition index, rule
/// name) in partition order then rule order. Assumes `p` is licensed.
std::vector<std::pair<std::size_t, std::string>> find_breaks(const Partitioning& p, const RuleSet& rules,
                                                             const FeatureVector& orth);

/// Fills each partition's class bindings and `p.orth` from its own rule.
/// False when some partition is not licensed by the rule it names.
bool bind_partitioning(Partitioning& p, const RuleSet& rules);

SpellVerdict check_partitioning(const Partitioning& p, const RuleSet& rules, const FeatureVector& orth);

struct SearchLimits {
  static constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

  /// Consecutive partitions with an empty surface piece. Bounds analysis,
  /// which could otherwise insert deleted lexical characters forever.
  std::size_t max_empty_run = 2;
  /// Lexical length bound for analysis; 0 means twice the surface length
  /// plus eight.
  std::size_t max_lexical_length = 0;
};

struct SpellResult {
  Text text;  // the other side: lexical for analysis, surface for generation
  Partitioning partitioning;
  SpellVerdict verdict;

  auto operator<=>(const SpellResult&) const = default;
};

/// Lexical strings with a licensed, unbroken partitioning against `surface`.
/// Sorted and duplicate free.
std::vector<SpellResult> analyze_direct(TextView surface, const RuleSet& rules, const FeatureVector& orth,
                                        SearchLimits limits = {});

/// Surface realisations of `lexical`. With `keep_broken`, partitionings that
/// only fail by breaking an obligatory rule are kept with their verdict.
std::vector<SpellResult> generate_direct(TextView lexical, const RuleSet& rules, const FeatureVector& orth,
                                         bool keep_broken = false);

}  // namespace morphc
