#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphc/runtime.hpp"

namespace morphc {

/// One side of a pattern: `"___è{lrt=A}e"`. The middle prints as `___`, a
/// variable as its character set and letter.
std::string render_pattern_side(const SpellingPattern& p, bool lexical);

/// `Pattern N:` followed by both sides, the trees served, and the rules used.
std::string render_pattern(const CompiledDescription& c, const SpellingPattern& p);

/// `Tree N:` followed by the shared and differing features of the root and
/// the inflected word, and the rule tree.
std::string render_tree(const CompiledDescription& c, const ProductionTree& t, const std::string& root_major,
                        const FeatureVector& root, const std::string& infl_major, const FeatureVector& infl);

/// Full trace of one analysis.
std::string render_trace(const CompiledDescription& c, const Analysis& a);

/// One direct rule application together with the obligatory rules each
/// partition breaks.
struct SpellEntry {
  Partitioning partitioning;
  std::vector<std::pair<std::size_t, std::string>> breaks;  // (partition index, rule)

  bool broken() const { return !breaks.empty(); }
};

/// Realisations of a lexical string, broken ones included, unbroken first.
std::vector<SpellEntry> spell_lexical(const RuleSet& rules, TextView lexical);
/// Lexical strings for a surface string. All are unbroken.
std::vector<SpellEntry> spell_surface(const RuleSet& rules, TextView surface, SearchLimits limits = {});

/// The partition-per-line listing, blocks separated by blank lines.
std::string render_spell(const RuleSet& rules, const std::vector<SpellEntry>& entries);

// JSON records; each function returns one JSON document followed by a newline.
std::string analyses_json(const CompiledDescription& c, std::string_view word, const std::vector<Analysis>& as);
std::string generated_json(const CompiledDescription& c, std::string_view root, const std::vector<Generated>& gs);
std::string inflections_json(std::string_view root, const std::vector<Inflection>& is);
std::string spell_json(const std::vector<SpellEntry>& entries);
std::string trace_json(const CompiledDescription& c, std::string_view word, const std::vector<Analysis>& as);

}  // namespace morphc
