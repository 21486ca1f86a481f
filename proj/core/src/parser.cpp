#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "morphc/description.hpp"
#include "term.hpp"

namespace morphc {
namespace {

using detail::Clause;
using detail::describe;
using detail::SyntaxError;
using detail::Term;

[[noreturn]] void fail(const Term& at, const std::string& message) { throw SyntaxError(at.loc, message); }

std::string atom_text(const Term& t, std::string_view what) {
  if (t.is_atom() && t.args.empty()) return t.text;
  if (t.kind == Term::Kind::string) return t.text;
  fail(t, "expected " + std::string(what) + ", found " + describe(t));
}

const std::vector<Term>& list_items(const Term& t, std::string_view what) {
  if (t.kind != Term::Kind::list) fail(t, "expected " + std::string(what) + " list, found " + describe(t));
  if (!t.tail.empty()) fail(t.tail.front(), "unexpected list tail in " + std::string(what) + " list");
  return t.args;
}

FeatureExpr parse_expr(const Term& t) {
  if (t.is_atom() && t.args.empty()) return FeatureExpr::atom(t.text);
  if (t.kind == Term::Kind::compound) {
    FeatureExpr e;
    if (t.text == "and" && !t.args.empty()) {
      e.kind = FeatureExpr::Kind::all_of;
    } else if (t.text == "or" && !t.args.empty()) {
      e.kind = FeatureExpr::Kind::any_of;
    } else if (t.text == "not" && t.args.size() == 1) {
      e.kind = FeatureExpr::Kind::negation;
    } else {
      fail(t, "unknown feature expression " + describe(t));
    }
    for (const auto& a : t.args) e.operands.push_back(parse_expr(a));
    return e;
  }
  fail(t, "expected a feature value or and/or/not expression, found " + describe(t));
}

// Per-clause state for expanding `| Shared` tails and `@macro(...)` values.
class ConstraintReader {
 public:
  ConstraintReader(const Description& d, const Clause* clause, bool allow_variables)
      : d_(d), allow_variables_(allow_variables) {
    if (!clause) return;
    for (const auto& b : clause->body) {
      if (!b.is_compound("=", 2) || b.args[0].kind != Term::Kind::variable) {
        fail(b, "clause body must consist of Var = [Constraints] bindings");
      }
      const std::string& name = b.args[0].text;
      if (bindings_.count(name)) fail(b, "variable " + name + " bound twice in clause body");
      bindings_.emplace(name, &b.args[1]);
    }
  }

  std::vector<FeatureConstraint> read_list(const Term& list) {
    std::vector<FeatureConstraint> out;
    std::set<std::string> expanding;
    append_list(list, out, expanding);
    return out;
  }

 private:
  void append_list(const Term& list, std::vector<FeatureConstraint>& out, std::set<std::string>& expanding) {
    if (list.kind != Term::Kind::list) fail(list, "expected a constraint list, found " + describe(list));
    for (const auto& item : list.args) append_item(item, out);
    if (list.tail.empty()) return;
    const Term& tail = list.tail.front();
    if (tail.kind != Term::Kind::variable) fail(tail, "constraint list tail must be a variable");
    auto it = bindings_.find(tail.text);
    if (it == bindings_.end()) fail(tail, "list tail " + tail.text + " has no binding in the clause body");
    if (!expanding.insert(tail.text).second) fail(tail, "cyclic constraint list binding " + tail.text);
    append_list(*it->second, out, expanding);
    expanding.erase(tail.text);
  }

  void append_item(const Term& item, std::vector<FeatureConstraint>& out) {
    if (!item.is_compound("=", 2)) fail(item, "expected feature=value, found " + describe(item));
    const Term& lhs = item.args[0];
    const Term& rhs = item.args[1];
    std::string feature = atom_text(lhs, "feature name");
    if (rhs.is_compound("@", 1)) {
      expand_macro(feature, rhs.args[0], out);
      return;
    }
    FeatureConstraint c;
    c.feature = feature;
    c.loc = item.loc;
    if (rhs.kind == Term::Kind::variable) {
      if (rhs.text == "_") return;
      if (!allow_variables_) fail(rhs, "variables are only allowed in production rules");
      c.value = VariableRef{rhs.text};
    } else {
      c.value = parse_expr(rhs);
    }
    out.push_back(std::move(c));
  }

  void expand_macro(const std::string& feature, const Term& call, std::vector<FeatureConstraint>& out) {
    std::string name = call.text;
    auto macro = std::find_if(d_.macros.begin(), d_.macros.end(), [&](const MacroDecl& m) { return m.name == name; });
    if (macro == d_.macros.end()) fail(call, "undeclared macro @" + name);
    if (feature != name) fail(call, "macro @" + name + " must be the value of feature " + name);
    if (call.args.size() != macro->fields.size()) {
      fail(call, "macro @" + name + " takes " + std::to_string(macro->fields.size()) + " arguments");
    }
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      Term eq;
      eq.kind = Term::Kind::compound;
      eq.text = "=";
      eq.loc = call.args[i].loc;
      Term field;
      field.kind = Term::Kind::atom;
      field.text = name + "_" + macro->fields[i];
      field.loc = call.args[i].loc;
      eq.args = {field, call.args[i]};
      append_item(eq, out);
    }
  }

  const Description& d_;
  bool allow_variables_;
  std::map<std::string, const Term*> bindings_;
};

CategorySpec parse_category_term(const Term& t, ConstraintReader& reader) {
  CategorySpec c;
  c.loc = t.loc;
  if (t.is_compound(":", 2)) {
    c.major = atom_text(t.args[0], "category symbol");
    c.constraints = reader.read_list(t.args[1]);
  } else {
    c.major = atom_text(t, "category");
  }
  std::set<std::string> seen;
  for (const auto& k : c.constraints) {
    if (!seen.insert(k.feature).second) throw SyntaxError(k.loc, "feature " + k.feature + " repeated in category");
  }
  return c;
}

SpecString parse_spec(std::u32string_view s) {
  SpecString out;
  for (char32_t c : s) {
    if (c >= '0' && c <= '9') {
      out.push_back(CharSpec::cls(static_cast<int>(c - '0')));
    } else {
      out.push_back(CharSpec::lit(c));
    }
  }
  return out;
}

RuleSide parse_rule_string(const Term& t) {
  if (t.kind != Term::Kind::string) fail(t, "expected a \"left|target|right\" string, found " + describe(t));
  Text s = decode_utf8(t.text);
  auto first = s.find(U'|');
  auto second = first == Text::npos ? Text::npos : s.find(U'|', first + 1);
  if (second == Text::npos || s.find(U'|', second + 1) != Text::npos) {
    fail(t, "rule string \"" + t.text + "\" must contain exactly two '|' separators");
  }
  RuleSide side;
  side.left = parse_spec(std::u32string_view(s).substr(0, first));
  side.target = parse_spec(std::u32string_view(s).substr(first + 1, second - first - 1));
  side.right = parse_spec(std::u32string_view(s).substr(second + 1));
  return side;
}

class DescriptionBuilder {
 public:
  explicit DescriptionBuilder(int source) : source_(source) {}

  // Accepts only lex, orth and irreg statements; macros come from `context`.
  DescriptionBuilder(int source, const Description& context) : source_(source), lexicon_only_(true) {
    d_.macros = context.macros;
  }

  void statement(const Clause& c) {
    const Term& h = c.head;
    if (h.kind != Term::Kind::compound) fail(h, "expected a statement, found " + describe(h));
    if (!c.body.empty() && h.text != "morph") fail(c.body.front(), "only morph/2 statements take a clause body");
    if (lexicon_only_ && h.text != "lex" && h.text != "orth" && h.text != "irreg") {
      fail(h, "lexicon files may only contain lex, orth and irreg statements, found " + describe(h));
    }
    const std::string& f = h.text;
    std::size_t n = h.args.size();
    if (f == "class" && n == 2) return class_decl(h);
    if (f == "feature" && n == 3) return feature_decl(h);
    if (f == "macro" && n == 2) return macro_decl(h);
    if (f == "spell" && n == 4) return spell(h);
    if (f == "morph" && n == 2) return morph(c);
    if (f == "affix" && (n == 2 || n == 3)) return affix(h, false);
    if (f == "pseudo" && n == 2) return affix(h, true);
    if (f == "lex" && n == 2) return lex(h);
    if (f == "orth" && n == 2) return orth(h);
    if (f == "irreg" && n == 3) return irreg(h);
    if (f == "config" && n == 2) return config(h);
    fail(h, "unknown statement " + describe(h));
  }

  Description finish() {
    if (!d_.find_class(kBoundaryClass)) {
      d_.classes.push_back({std::string(kBoundaryClass), {U'+'}, true, {source_, 0, 0}});
    }
    if (!d_.find_class(kLetterClass)) {
      d_.classes.push_back({std::string(kLetterClass), default_letter_class(), true, {source_, 0, 0}});
    }
    return std::move(d_);
  }

  Description take() { return std::move(d_); }

 private:
  void unique(const Term& at, std::set<std::string>& names, const std::string& name, std::string_view what) {
    if (!names.insert(name).second) fail(at, "duplicate " + std::string(what) + " '" + name + "'");
  }

  void class_decl(const Term& h) {
    CharClassDef c;
    c.loc = h.loc;
    c.name = atom_text(h.args[0], "class name");
    unique(h.args[0], class_names_, c.name, "class");
    const Term& members = h.args[1];
    if (members.kind == Term::Kind::string) {
      for (char32_t ch : decode_utf8(members.text)) c.members.insert(ch);
    } else {
      for (const auto& m : list_items(members, "class member")) {
        Text ch = decode_utf8(atom_text(m, "character"));
        if (ch.size() != 1) fail(m, "class members must be single characters");
        c.members.insert(ch[0]);
      }
    }
    if (c.members.empty()) fail(h, "class '" + c.name + "' has no members");
    d_.classes.push_back(std::move(c));
  }

  void feature_decl(const Term& h) {
    FeatureDecl f;
    f.loc = h.loc;
    f.name = atom_text(h.args[0], "feature name");
    unique(h.args[0], feature_names_, f.name, "feature");
    std::set<std::string> seen;
    for (const auto& v : list_items(h.args[1], "feature value")) {
      std::string value = atom_text(v, "feature value");
      if (!seen.insert(value).second) fail(v, "value '" + value + "' repeated in feature " + f.name);
      f.values.push_back(value);
    }
    if (f.values.empty()) fail(h.args[1], "feature " + f.name + " must declare at least one value");
    std::string kind = atom_text(h.args[2], "feature kind");
    if (kind == "orth" || kind == "orthographic") {
      f.kind = FeatureKind::orthographic;
    } else if (kind == "syn" || kind == "syntactic") {
      f.kind = FeatureKind::syntactic;
    } else {
      fail(h.args[2], "feature kind must be orth or syn");
    }
    d_.features.push_back(std::move(f));
  }

  void macro_decl(const Term& h) {
    MacroDecl m;
    m.loc = h.loc;
    m.name = atom_text(h.args[0], "macro name");
    unique(h.args[0], macro_names_, m.name, "macro");
    for (const auto& v : list_items(h.args[1], "macro field")) m.fields.push_back(atom_text(v, "macro field"));
    if (m.fields.empty()) fail(h.args[1], "macro " + m.name + " needs at least one field");
    d_.macros.push_back(std::move(m));
  }

  void spell(const Term& h) {
    SpellRule r;
    r.loc = h.loc;
    r.name = atom_text(h.args[0], "rule name");
    unique(h.args[0], rule_names_, r.name, "spelling rule");
    const Term& pair = h.args[1];
    if (pair.is_compound("=>", 2)) {
      r.op = RuleOp::optional;
    } else if (pair.is_compound("<=>", 2)) {
      r.op = RuleOp::obligatory;
    } else {
      fail(pair, "expected \"Surface\" => \"Lexical\" or \"Surface\" <=> \"Lexical\"");
    }
    r.surface = parse_rule_string(pair.args[0]);
    r.lexical = parse_rule_string(pair.args[1]);
    for (const auto& item : list_items(h.args[2], "class binding")) {
      if (!item.is_compound("/", 2) || item.args[0].kind != Term::Kind::number || item.args[0].text.size() != 1) {
        fail(item, "expected Digit/ClassName, found " + describe(item));
      }
      int digit = item.args[0].text[0] - '0';
      if (r.classes.count(digit)) fail(item, "digit " + item.args[0].text + " bound twice");
      r.classes[digit] = atom_text(item.args[1], "class name");
    }
    for (const SpecString* s : {&r.surface.left, &r.surface.target, &r.surface.right, &r.lexical.left,
                                &r.lexical.target, &r.lexical.right}) {
      for (const auto& spec : *s) {
        if (spec.is_class() && !r.classes.count(spec.digit)) {
          fail(pair, "rule " + r.name + " uses digit " + std::to_string(spec.digit) + " with no class binding");
        }
      }
    }
    ConstraintReader reader(d_, nullptr, false);
    r.features = reader.read_list(h.args[3]);
    d_.spell_rules.push_back(std::move(r));
  }

  void morph(const Clause& c) {
    const Term& h = c.head;
    ProductionRule p;
    p.loc = h.loc;
    p.name = atom_text(h.args[0], "production rule name");
    unique(h.args[0], production_names_, p.name, "production rule");
    const auto& items = list_items(h.args[1], "production");
    if (items.size() < 2) fail(h.args[1], "production rule needs a mother and at least one daughter");
    ConstraintReader reader(d_, &c, true);
    p.lhs = parse_category_term(items[0], reader);
    for (std::size_t i = 1; i < items.size(); ++i) {
      const Term& it = items[i];
      if (it.is_compound(":", 2)) {
        p.rhs.push_back(parse_category_term(it, reader));
      } else {
        p.rhs.push_back(MorphemeRef{atom_text(it, "morpheme or category"), it.loc});
      }
    }
    d_.productions.push_back(std::move(p));
  }

  void affix(const Term& h, bool pseudo) {
    AffixEntry a;
    a.loc = h.loc;
    a.pseudo = pseudo;
    a.name = atom_text(h.args[0], "affix name");
    unique(h.args[0], affix_names_, a.name, "affix");
    ConstraintReader reader(d_, nullptr, false);
    if (pseudo) {
      a.category = parse_category_term(h.args[1], reader);
    } else {
      a.orth = reader.read_list(h.args[1]);
      if (h.args.size() == 3) a.category = parse_category_term(h.args[2], reader);
    }
    d_.affixes.push_back(std::move(a));
  }

  void lex(const Term& h) {
    LexEntry e;
    e.loc = h.loc;
    e.citation = atom_text(h.args[0], "citation form");
    ConstraintReader reader(d_, nullptr, false);
    e.category = parse_category_term(h.args[1], reader);
    d_.roots.push_back(std::move(e));
  }

  void orth(const Term& h) {
    OrthDecl o;
    o.loc = h.loc;
    o.citation = atom_text(h.args[0], "citation form");
    ConstraintReader reader(d_, nullptr, false);
    o.orth = reader.read_list(h.args[1]);
    d_.orth_decls.push_back(std::move(o));
  }

  void irreg(const Term& h) {
    IrregEntry e;
    e.loc = h.loc;
    e.surface = atom_text(h.args[0], "surface form");
    for (const auto& m : list_items(h.args[1], "morpheme")) e.morphemes.push_back(atom_text(m, "morpheme"));
    if (e.morphemes.empty()) fail(h.args[1], "irregular form needs at least its root morpheme");
    for (const auto& r : list_items(h.args[2], "rule")) {
      if (r.is_compound("-", 2) && r.args[1].is_atom() && r.args[1].text == "only") {
        e.rules.push_back(atom_text(r.args[0], "rule name"));
        e.exclusive = true;
      } else {
        e.rules.push_back(atom_text(r, "rule name"));
      }
    }
    d_.irregulars.push_back(std::move(e));
  }

  void config(const Term& h) {
    std::string key = atom_text(h.args[0], "config key");
    if (key == "depth") {
      if (h.args[1].kind != Term::Kind::number) fail(h.args[1], "depth must be a number");
      d_.config.depth_bound = std::stoi(h.args[1].text);
      d_.config.depth_explicit = true;
      return;
    }
    fail(h.args[0], "unknown config key '" + key + "'");
  }

  int source_;
  bool lexicon_only_ = false;
  Description d_;
  std::set<std::string> class_names_, feature_names_, macro_names_, rule_names_, production_names_, affix_names_;
};

}  // namespace

namespace {

ParseResult run_builder(DescriptionBuilder& builder, std::string_view text, int source, bool lexicon) {
  ParseResult result;
  auto clauses = detail::parse_clauses(text, source, result.diagnostics);
  for (const auto& c : clauses) {
    try {
      builder.statement(c);
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back({Severity::error, e.loc, e.what()});
    } catch (const std::invalid_argument& e) {
      result.diagnostics.push_back({Severity::error, c.loc, e.what()});
    }
  }
  if (lexicon) {
    Description built = builder.take();
    result.description.roots = std::move(built.roots);
    result.description.orth_decls = std::move(built.orth_decls);
    result.description.irregulars = std::move(built.irregulars);
  } else {
    result.description = builder.finish();
  }
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
  });
  return result;
}

}  // namespace

ParseResult parse_description(std::string_view text, int source) {
  DescriptionBuilder builder(source);
  return run_builder(builder, text, source, false);
}

ParseResult parse_lexicon(std::string_view text, const Description& context, int source) {
  DescriptionBuilder builder(source, context);
  return run_builder(builder, text, source, true);
}

std::optional<CategorySpec> parse_category(std::string_view text, const Description& context,
                                           std::vector<Diagnostic>& diagnostics) {
  try {
    Term t = detail::parse_single_term(text, 0);
    ConstraintReader reader(context, nullptr, false);
    return parse_category_term(t, reader);
  } catch (const SyntaxError& e) {
    diagnostics.push_back({Severity::error, e.loc, e.what()});
  } catch (const std::invalid_argument& e) {
    diagnostics.push_back({Severity::error, {0, 1, 1}, e.what()});
  }
  return std::nullopt;
}

}  // namespace morphc
