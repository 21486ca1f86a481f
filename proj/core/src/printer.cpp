#include <sstream>

#include "morphc/description.hpp"

namespace morphc {
namespace {

bool bare_atom(std::string_view s) {
  if (s.empty()) return false;
  bool digits = true;
  for (unsigned char c : s) {
    if (!(c >= '0' && c <= '9')) digits = false;
  }
  if (digits) return true;
  auto first = static_cast<unsigned char>(s[0]);
  if (!((first >= 'a' && first <= 'z') || first >= 0x80)) return false;
  for (unsigned char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c >= 0x80;
    if (!ok) return false;
  }
  // Operator glyphs are non-ASCII but never part of an atom.
  for (std::string_view glyph : {"⇔", "↔", "⇒", "→"}) {
    if (s.find(glyph) != std::string_view::npos) return false;
  }
  return true;
}

std::string quote(std::string_view s, char q) {
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out += '\\';
    out += c;
  }
  out += q;
  return out;
}

std::string atom(std::string_view s) { return bare_atom(s) ? std::string(s) : quote(s, '\''); }

std::string expr(const FeatureExpr& e) {
  if (e.kind == FeatureExpr::Kind::value) return atom(e.value);
  std::string out = e.kind == FeatureExpr::Kind::all_of ? "and(" : e.kind == FeatureExpr::Kind::any_of ? "or(" : "not(";
  for (std::size_t i = 0; i < e.operands.size(); ++i) {
    if (i) out += ',';
    out += expr(e.operands[i]);
  }
  return out + ')';
}

std::string constraints(const std::vector<FeatureConstraint>& cs) {
  std::string out = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += atom(cs[i].feature) + '=';
    if (cs[i].is_variable()) {
      out += std::get<VariableRef>(cs[i].value).name;
    } else {
      out += expr(std::get<FeatureExpr>(cs[i].value));
    }
  }
  return out + ']';
}

std::string category(const CategorySpec& c) { return atom(c.major) + ':' + constraints(c.constraints); }

std::string spec_string(const RuleSide& side) {
  auto part = [](const SpecString& s) {
    Text t;
    for (const auto& c : s) t.push_back(c.is_class() ? static_cast<char32_t>('0' + c.digit) : c.literal);
    return encode_utf8(t);
  };
  return quote(part(side.left) + '|' + part(side.target) + '|' + part(side.right), '"');
}

}  // namespace

std::string print_description(const Description& d) {
  std::ostringstream out;
  if (d.config.depth_explicit) out << "config(depth, " << d.config.depth_bound << ").\n";
  for (const auto& c : d.classes) {
    if (c.implicit) continue;
    Text members(c.members.begin(), c.members.end());
    out << "class(" << atom(c.name) << ", " << quote(encode_utf8(members), '"') << ").\n";
  }
  for (const auto& f : d.features) {
    out << "feature(" << atom(f.name) << ", [";
    for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? "," : "") << atom(f.values[i]);
    out << "], " << (f.kind == FeatureKind::orthographic ? "orth" : "syn") << ").\n";
  }
  for (const auto& m : d.macros) {
    out << "macro(" << atom(m.name) << ", [";
    for (std::size_t i = 0; i < m.fields.size(); ++i) out << (i ? "," : "") << atom(m.fields[i]);
    out << "]).\n";
  }
  for (const auto& r : d.spell_rules) {
    out << "spell(" << atom(r.name) << ", " << spec_string(r.surface)
        << (r.op == RuleOp::obligatory ? " <=> " : " => ") << spec_string(r.lexical) << ", [";
    bool first = true;
    for (const auto& [digit, cls] : r.classes) {
      out << (first ? "" : ", ") << digit << '/' << atom(cls);
      first = false;
    }
    out << "], " << constraints(r.features) << ").\n";
  }
  for (const auto& p : d.productions) {
    out << "morph(" << atom(p.name) << ", [" << category(p.lhs);
    for (const auto& item : p.rhs) {
      out << ", ";
      if (const auto* c = std::get_if<CategorySpec>(&item)) {
        out << category(*c);
      } else {
        out << atom(std::get<MorphemeRef>(item).name);
      }
    }
    out << "]).\n";
  }
  for (const auto& a : d.affixes) {
    if (a.pseudo) {
      out << "pseudo(" << atom(a.name) << ", " << category(*a.category) << ").\n";
    } else {
      out << "affix(" << atom(a.name) << ", " << constraints(a.orth);
      if (a.category) out << ", " << category(*a.category);
      out << ").\n";
    }
  }
  for (const auto& e : d.roots) out << "lex(" << atom(e.citation) << ", " << category(e.category) << ").\n";
  for (const auto& o : d.orth_decls) out << "orth(" << atom(o.citation) << ", " << constraints(o.orth) << ").\n";
  for (const auto& i : d.irregulars) {
    out << "irreg(" << atom(i.surface) << ", [";
    for (std::size_t k = 0; k < i.morphemes.size(); ++k) out << (k ? "," : "") << atom(i.morphemes[k]);
    out << "], [";
    for (std::size_t k = 0; k < i.rules.size(); ++k) {
      out << (k ? "," : "") << atom(i.rules[k]) << (i.exclusive ? "-only" : "");
    }
    out << "]).\n";
  }
  return out.str();
}

}  // namespace morphc
