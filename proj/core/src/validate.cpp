#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "morphc/description.hpp"

namespace morphc {
namespace {

class Validator {
 public:
  explicit Validator(const Description& d) : d_(d) {}

  std::vector<Diagnostic> run() {
    for (const auto& r : d_.spell_rules) spell_rule(r);
    obligatory_duplicates();
    if (!d_.find_rule(kDefaultRule)) {
      SourceLoc at = d_.spell_rules.empty() ? SourceLoc{} : d_.spell_rules.front().loc;
      warn(at, "no spelling rule named 'default'; root templates cannot be copied");
    }
    auto affix_cats = affix_categories(d_);
    for (const auto& p : d_.productions) production(p, affix_cats);
    for (const auto& a : d_.affixes) affix(a);
    unreachable_affixes(affix_cats);
    for (const auto& e : d_.roots) root(e);
    for (const auto& o : d_.orth_decls) constraints(o.orth, FeatureKind::orthographic, o.loc);
    for (const auto& i : d_.irregulars) irregular(i);
    if (d_.config.depth_bound < 0) error({}, "depth bound must not be negative");
    std::stable_sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
    });
    return std::move(out_);
  }

 private:
  void error(SourceLoc at, std::string message) { out_.push_back({Severity::error, at, std::move(message)}); }
  void warn(SourceLoc at, std::string message) { out_.push_back({Severity::warning, at, std::move(message)}); }

  void expr_values(const FeatureExpr& e, const FeatureDecl& f, SourceLoc at) {
    if (e.kind == FeatureExpr::Kind::value) {
      if (std::find(f.values.begin(), f.values.end(), e.value) == f.values.end()) {
        error(at, "'" + e.value + "' is not a declared value of feature " + f.name);
      }
      return;
    }
    for (const auto& op : e.operands) expr_values(op, f, at);
  }

  void constraints(const std::vector<FeatureConstraint>& cs, FeatureKind kind, SourceLoc fallback) {
    for (const auto& c : cs) {
      SourceLoc at = c.loc.line ? c.loc : fallback;
      const FeatureDecl* f = d_.find_feature(c.feature);
      if (!f) {
        error(at, "undeclared feature " + c.feature);
        continue;
      }
      if (f->kind != kind) {
        error(at, "feature " + c.feature + " is " +
                      (f->kind == FeatureKind::orthographic ? "orthographic" : "syntactic") + " and cannot be used here");
        continue;
      }
      if (const auto* e = std::get_if<FeatureExpr>(&c.value)) expr_values(*e, *f, at);
    }
  }

  void spell_rule(const SpellRule& r) {
    for (const auto& [digit, cls] : r.classes) {
      if (!d_.find_class(cls)) error(r.loc, "rule " + r.name + " binds digit " + std::to_string(digit) + " to undeclared class " + cls);
    }
    if (r.lexical.target.empty()) {
      error(r.loc, "rule " + r.name + " has an empty lexical target");
    } else if (r.lexical.target.size() > 1) {
      warn(r.loc, "rule " + r.name + " has a " + std::to_string(r.lexical.target.size()) +
                      "-character lexical target; it cannot block partitions whose lexical targets are single characters");
    }
    constraints(r.features, FeatureKind::orthographic, r.loc);
  }

  void obligatory_duplicates() {
    for (const auto& ob : d_.spell_rules) {
      if (ob.op != RuleOp::obligatory) continue;
      for (const auto& opt : d_.spell_rules) {
        if (opt.op != RuleOp::optional) continue;
        if (ob.surface == opt.surface && ob.lexical == opt.lexical && ob.classes == opt.classes &&
            ob.features == opt.features) {
          error(ob.loc, "obligatory rule " + ob.name + " duplicates optional rule " + opt.name);
        }
      }
    }
  }

  void category(const CategorySpec& c) { constraints(c.constraints, FeatureKind::syntactic, c.loc); }

  void production(const ProductionRule& p, const std::set<std::string>& affix_cats) {
    category(p.lhs);
    std::size_t roots = 0;
    for (const auto& item : p.rhs) {
      if (const auto* c = std::get_if<CategorySpec>(&item)) {
        category(*c);
        if (!affix_cats.count(c->major)) ++roots;
      } else {
        const auto& m = std::get<MorphemeRef>(item);
        if (!d_.find_affix(m.name)) error(m.loc.line ? m.loc : p.loc, "production rule " + p.name + " names unknown affix " + m.name);
      }
    }
    if (roots == 0) error(p.loc, "production rule " + p.name + " has no root daughter");
    if (roots > 1) error(p.loc, "production rule " + p.name + " has more than one root daughter");
  }

  void affix(const AffixEntry& a) {
    constraints(a.orth, FeatureKind::orthographic, a.loc);
    if (a.category) category(*a.category);
  }

  void unreachable_affixes(const std::set<std::string>& affix_cats) {
    std::set<std::string> named;
    std::set<std::string> slots;
    for (const auto& p : d_.productions) {
      for (const auto& item : p.rhs) {
        if (const auto* c = std::get_if<CategorySpec>(&item)) {
          if (affix_cats.count(c->major)) slots.insert(c->major);
        } else {
          named.insert(std::get<MorphemeRef>(item).name);
        }
      }
    }
    for (const auto& a : d_.affixes) {
      if (named.count(a.name)) continue;
      if (a.category && slots.count(a.category->major)) continue;
      warn(a.loc, std::string(a.pseudo ? "pseudo-affix " : "affix ") + a.name + " is not reachable from any production rule");
    }
  }

  void root(const LexEntry& e) {
    category(e.category);
    constraints(e.orth, FeatureKind::orthographic, e.loc);
    Text citation = decode_utf8(e.citation);
    if (citation.empty()) error(e.loc, "empty citation form");
    const CharClassDef* b = d_.find_class(kBoundaryClass);
    if (b && std::any_of(citation.begin(), citation.end(), [&](char32_t c) { return b->members.count(c) > 0; })) {
      error(e.loc, "citation form " + e.citation + " contains a boundary marker");
    }
  }

  void irregular(const IrregEntry& i) {
    for (std::size_t k = 1; k < i.morphemes.size(); ++k) {
      if (!d_.find_affix(i.morphemes[k])) error(i.loc, "irregular form " + i.surface + " names unknown affix " + i.morphemes[k]);
    }
    for (const auto& r : i.rules) {
      if (!d_.find_production(r)) error(i.loc, "irregular form " + i.surface + " names unknown production rule " + r);
    }
  }

  const Description& d_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_description(const Description& d) { return Validator(d).run(); }

}  // namespace morphc
