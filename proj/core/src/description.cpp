#include "morphc/description.hpp"

#include <algorithm>

namespace morphc {
namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::string out(file);
  out += ':' + std::to_string(d.loc.line) + ':' + std::to_string(d.loc.column) + ": ";
  out += d.severity == Severity::error ? "error: " : "warning: ";
  out += d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

const CharClassDef* Description::find_class(std::string_view name) const { return find_named(classes, name); }
const FeatureDecl* Description::find_feature(std::string_view name) const { return find_named(features, name); }
const AffixEntry* Description::find_affix(std::string_view name) const { return find_named(affixes, name); }
const ProductionRule* Description::find_production(std::string_view name) const {
  return find_named(productions, name);
}
const SpellRule* Description::find_rule(std::string_view name) const { return find_named(spell_rules, name); }

std::vector<FeatureConstraint> Description::root_orth(const LexEntry& entry) const {
  std::vector<FeatureConstraint> out = entry.orth;
  for (const auto& o : orth_decls) {
    if (o.citation == entry.citation) out.insert(out.end(), o.orth.begin(), o.orth.end());
  }
  return out;
}

std::set<char32_t> default_letter_class() {
  std::set<char32_t> out;
  for (char32_t c = 'a'; c <= 'z'; ++c) out.insert(c);
  for (char32_t c = 'A'; c <= 'Z'; ++c) out.insert(c);
  for (char32_t c = 0xC0; c <= 0x17F; ++c) {
    if (c != 0xD7 && c != 0xF7) out.insert(c);
  }
  return out;
}

std::set<std::string> affix_categories(const Description& d) {
  std::set<std::string> out;
  for (const auto& a : d.affixes) {
    if (a.category) out.insert(a.category->major);
  }
  return out;
}

std::optional<std::size_t> root_daughter(const ProductionRule& rule, const std::set<std::string>& affix_cats) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    const auto* c = std::get_if<CategorySpec>(&rule.rhs[i]);
    if (!c || affix_cats.count(c->major)) continue;
    if (found) return std::nullopt;
    found = i;
  }
  return found;
}

void merge_lexicon(Description& base, const Description& extra) {
  base.roots.insert(base.roots.end(), extra.roots.begin(), extra.roots.end());
  base.orth_decls.insert(base.orth_decls.end(), extra.orth_decls.begin(), extra.orth_decls.end());
  base.irregulars.insert(base.irregulars.end(), extra.irregulars.begin(), extra.irregulars.end());
}

}  // namespace morphc
