#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morphc/unicode.hpp"

namespace morphc {

/// Position of a construct in its source document. Locations never take
/// part in structural equality, so a reparsed printout compares equal.
struct SourceLoc {
  int source = 0;
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  SourceLoc loc;
  std::string message;
};

/// `file:line:col: severity: message`
std::string format_diagnostic(const Diagnostic& d, std::string_view file);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

struct CharClassDef {
  std::string name;
  std::set<char32_t> members;
  bool implicit = false;  // supplied by default, not written in the source
  SourceLoc loc;

  bool operator==(const CharClassDef&) const = default;
};

enum class FeatureKind { orthographic, syntactic };

struct FeatureDecl {
  std::string name;
  std::vector<std::string> values;
  FeatureKind kind = FeatureKind::syntactic;
  SourceLoc loc;

  bool operator==(const FeatureDecl&) const = default;
};

/// `macro(agr, [person, num, gender]).` lets `agr = @agr(3, sing, f)` stand
/// for `agr_person = 3, agr_num = sing, agr_gender = f`.
struct MacroDecl {
  std::string name;
  std::vector<std::string> fields;
  SourceLoc loc;

  bool operator==(const MacroDecl&) const = default;
};

/// Boolean expression over the atomic values of one feature.
struct FeatureExpr {
  enum class Kind { value, all_of, any_of, negation };

  Kind kind = Kind::value;
  std::string value;
  std::vector<FeatureExpr> operands;

  static FeatureExpr atom(std::string v) { return {Kind::value, std::move(v), {}}; }

  bool operator==(const FeatureExpr&) const = default;
};

struct VariableRef {
  std::string name;

  bool operator==(const VariableRef&) const = default;
};

/// `feature = expr` or, inside production rules, `feature = Var`.
struct FeatureConstraint {
  std::string feature;
  std::variant<FeatureExpr, VariableRef> value;
  SourceLoc loc;

  bool is_variable() const { return std::holds_alternative<VariableRef>(value); }
  bool operator==(const FeatureConstraint&) const = default;
};

/// One element of a rule string: a literal character or a class occurrence
/// written as a digit.
struct CharSpec {
  char32_t literal = 0;
  int digit = -1;

  bool is_class() const { return digit >= 0; }
  static CharSpec lit(char32_t c) { return {c, -1}; }
  static CharSpec cls(int d) { return {0, d}; }
  bool operator==(const CharSpec&) const = default;
};

using SpecString = std::vector<CharSpec>;

struct RuleSide {
  SpecString left;
  SpecString target;
  SpecString right;

  bool operator==(const RuleSide&) const = default;
};

enum class RuleOp { optional, obligatory };

struct SpellRule {
  std::string name;
  RuleOp op = RuleOp::optional;
  RuleSide surface;
  RuleSide lexical;
  std::map<int, std::string> classes;  // digit -> class name
  std::vector<FeatureConstraint> features;
  SourceLoc loc;

  bool operator==(const SpellRule&) const = default;
};

struct CategorySpec {
  std::string major;
  std::vector<FeatureConstraint> constraints;
  SourceLoc loc;

  bool operator==(const CategorySpec&) const = default;
};

struct MorphemeRef {
  std::string name;
  SourceLoc loc;

  bool operator==(const MorphemeRef&) const = default;
};

using RhsItem = std::variant<CategorySpec, MorphemeRef>;

/// Syntactic production rule: `morph(name, [Mother, Daughter...])`.
struct ProductionRule {
  std::string name;
  CategorySpec lhs;
  std::vector<RhsItem> rhs;
  SourceLoc loc;

  bool operator==(const ProductionRule&) const = default;
};

/// `affix(name, Orth)`, `affix(name, Orth, Category)` or `pseudo(name, Category)`.
struct AffixEntry {
  std::string name;
  bool pseudo = false;
  std::vector<FeatureConstraint> orth;
  std::optional<CategorySpec> category;
  SourceLoc loc;

  bool operator==(const AffixEntry&) const = default;
};

struct LexEntry {
  std::string citation;  // UTF-8
  CategorySpec category;
  std::vector<FeatureConstraint> orth;
  SourceLoc loc;

  bool operator==(const LexEntry&) const = default;
};

struct OrthDecl {
  std::string citation;
  std::vector<FeatureConstraint> orth;
  SourceLoc loc;

  bool operator==(const OrthDecl&) const = default;
};

struct IrregEntry {
  std::string surface;
  std::vector<std::string> morphemes;
  std::vector<std::string> rules;
  bool exclusive = false;
  SourceLoc loc;

  bool operator==(const IrregEntry&) const = default;
};

struct DescriptionConfig {
  int depth_bound = 3;
  bool depth_explicit = false;

  bool operator==(const DescriptionConfig&) const = default;
};

inline constexpr std::string_view kLetterClass = "letter";
inline constexpr std::string_view kBoundaryClass = "bmarker";
inline constexpr std::string_view kDefaultRule = "default";

struct Description {
  std::vector<CharClassDef> classes;
  std::vector<FeatureDecl> features;
  std::vector<MacroDecl> macros;
  std::vector<SpellRule> spell_rules;
  std::vector<ProductionRule> productions;
  std::vector<AffixEntry> affixes;
  std::vector<LexEntry> roots;
  std::vector<OrthDecl> orth_decls;
  std::vector<IrregEntry> irregulars;
  DescriptionConfig config;

  const CharClassDef* find_class(std::string_view name) const;
  const FeatureDecl* find_feature(std::string_view name) const;
  const AffixEntry* find_affix(std::string_view name) const;
  const ProductionRule* find_production(std::string_view name) const;
  const SpellRule* find_rule(std::string_view name) const;

  /// Orth constraints of a root: those written on its lex entry plus every
  /// `orth/2` statement naming its citation.
  std::vector<FeatureConstraint> root_orth(const LexEntry& entry) const;

  bool operator==(const Description&) const = default;
};

/// Characters of the default `letter` class when a description does not
/// declare one: ASCII letters and the Latin-1 / Latin Extended-A letters.
std::set<char32_t> default_letter_class();

struct ParseResult {
  Description description;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses a description document. `source` tags every location so that
/// diagnostics from several files can be told apart.
ParseResult parse_description(std::string_view text, int source = 0);

/// Parses a lexicon file: lex, orth and irreg statements only, with macros
/// taken from `context`. The result holds just those statements.
ParseResult parse_lexicon(std::string_view text, const Description& context, int source = 1);

/// Checks declarations and cross references. Diagnostics are the output.
std::vector<Diagnostic> validate_description(const Description& d);

/// Canonical textual form; parse(print(d)) == d.
std::string print_description(const Description& d);

/// Major categories carried by affix and pseudo-affix entries. A daughter of
/// one of these categories in a production rule is an affix slot, not the
/// root daughter.
std::set<std::string> affix_categories(const Description& d);

/// Index into `rule.rhs` of the root daughter: the only category daughter
/// whose major is not an affix category. nullopt when there is none or more
/// than one.
std::optional<std::size_t> root_daughter(const ProductionRule& rule, const std::set<std::string>& affix_cats);

/// Appends the lexical statements (lex, orth, irreg) of `extra` to `base`.
void merge_lexicon(Description& base, const Description& extra);

/// Parses a category written in description syntax, e.g. `adjp:[agr_gender=f]`.
/// Macros are expanded against `context`.
std::optional<CategorySpec> parse_category(std::string_view text, const Description& context,
                                           std::vector<Diagnostic>& diagnostics);

}  // namespace morphc
