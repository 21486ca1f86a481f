#pragma once

#include <string>
#include <vector>

#include "morphc/description.hpp"
#include "morphc/features.hpp"

namespace morphc {

/// One production rule application. `morphemes` has one entry per rhs item:
/// the affix chosen for it, or empty for the root daughter.
struct TreeStep {
  std::size_t rule = 0;
  std::vector<std::string> morphemes;
};

/// A chain of production rule applications over the root placeholder. Each
/// rule's root daughter is the mother of the next step; the last step's root
/// daughter is the root. Tree 0 is the identity tree with no steps, whose
/// categories are taken from the lexical entry.
struct ProductionTree {
  int id = 0;
  std::vector<TreeStep> steps;  // outermost first
  Bindings bindings;
  CompiledCategory root;
  CompiledCategory inflected;
  std::vector<std::string> prefixes;  // affix names, left to right
  std::vector<std::string> suffixes;
  int sequence = 0;

  bool identity() const { return steps.empty(); }
  /// Name of the outermost rule; empty for the identity tree.
  const std::string& top_rule(const Description& d) const;
  /// `adjp_adjp_fem=>[*,e]`, nested for deeper trees; `*` for the identity.
  std::string render(const Description& d) const;
};

struct AffixSequence {
  int id = 0;
  std::vector<std::string> prefixes;
  std::vector<std::string> suffixes;
  FeatureVector orth;    // conjunction of the affixes' orth constraints
  bool pseudo = false;   // contains a pseudo-affix; used only by irregular forms
  std::vector<int> trees;

  /// `un+*+ing`
  std::string render() const;
  /// Root citation followed by the affix names, in surface order.
  std::vector<std::string> morphemes(const std::string& root) const;
};

struct Morphotactics {
  std::vector<ProductionTree> trees;
  std::vector<AffixSequence> sequences;
  std::vector<Diagnostic> diagnostics;
};

/// All morpheme sequences derivable by at most `depth_bound` production rule
/// applications with the root left open. Trees come in rule declaration
/// order, depth first; sequences in order of their first tree. A warning is
/// reported when the bound cut off a derivation that could have continued.
Morphotactics enumerate_affix_sequences(const Description& d, const FeatureSpace& syn, const FeatureSpace& orth,
                                        int depth_bound);

}  // namespace morphc
