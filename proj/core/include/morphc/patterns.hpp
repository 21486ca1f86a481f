#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphc/description.hpp"
#include "morphc/features.hpp"
#include "morphc/morphotactics.hpp"
#include "morphc/spell.hpp"

namespace morphc {

/// Character set of a template variable. `any` admits every non-boundary
/// character.
struct Domain {
  bool any = true;
  std::vector<char32_t> chars;  // sorted; meaningful when !any

  bool contains(char32_t c) const;
  auto operator<=>(const Domain&) const = default;
};

/// One symbol of a pattern string: a fixed character, a template variable
/// shared between the surface and lexical sides, or the default-copied
/// middle of the root.
struct PatternSym {
  enum class Kind { chr, var, middle };

  Kind kind = Kind::chr;
  char32_t c = 0;
  int var = -1;

  static PatternSym chr_(char32_t ch) { return {Kind::chr, ch, -1}; }
  static PatternSym var_(int v) { return {Kind::var, 0, v}; }
  static PatternSym middle() { return {Kind::middle, 0, -1}; }
  auto operator<=>(const PatternSym&) const = default;
};

using PatternString = std::vector<PatternSym>;

/// One partition of a pattern. The middle part stands for any number of
/// default partitions.
struct PatternPart {
  std::string rule;
  PatternString surface;
  PatternString lexical;
  bool middle = false;

  auto operator<=>(const PatternPart&) const = default;
};

struct SpellingPattern {
  int id = 0;
  int sequence = 0;
  int m = 0;
  int n = 0;
  std::vector<PatternPart> parts;
  std::vector<Domain> vars;
  FeatureVector orth;                 // affix orth unified with the rules' features
  std::vector<std::string> deferred;  // obligatory rules re-checked once the root is known

  // Derived from `parts`.
  PatternString surface;
  PatternString lexical;
  std::size_t root_begin = 0;  // lexical root region [root_begin, root_end)
  std::size_t root_end = 0;
  Text surface_prefix;  // fixed characters at either end of the surface
  Text surface_suffix;

  /// Fills the derived fields. `before_root` and `after_root` count the
  /// lexical symbols outside the root region.
  void derive(std::size_t before_root, std::size_t after_root);
  /// Rule names in partition order, the middle as `default*`.
  std::vector<std::string> uses() const;
};

/// `{(m, n)}` root template sizes required by the rules' boundary contexts.
std::set<std::pair<int, int>> template_sizes(const RuleSet& rules);

struct TextPairHash {
  std::size_t operator()(const std::pair<Text, Text>& k) const noexcept;
};

struct PatternSet {
  std::vector<SpellingPattern> patterns;
  /// (surface prefix, surface suffix) -> pattern ids
  std::unordered_map<std::pair<Text, Text>, std::vector<int>, TextPairHash> analysis_index;
  std::vector<std::size_t> prefix_lengths;  // distinct key lengths, ascending
  std::vector<std::size_t> suffix_lengths;
  /// sequence id -> pattern ids
  std::vector<std::vector<int>> generation_index;
  std::vector<Diagnostic> diagnostics;

  void build_indexes(std::size_t sequence_count);
};

struct PatternOptions {
  /// Added to every template size; used to check that larger templates add
  /// no analyses.
  int extra_m = 0;
  int extra_n = 0;
};

/// Composes every affix sequence that has no pseudo-affix with the spelling
/// rules. Patterns are numbered in compilation order.
PatternSet compile_patterns(const Description& d, const RuleSet& rules, const Morphotactics& mt,
                            PatternOptions options = {});

}  // namespace morphc
