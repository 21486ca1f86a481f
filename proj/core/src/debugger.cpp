#include "morphc/debugger.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace morphc {

using nlohmann::json;

namespace {

std::string var_name(int v) {
  if (v < 26) return std::string(1, static_cast<char>('A' + v));
  return "V" + std::to_string(v);
}

std::string quote(std::string_view s) { return '"' + std::string(s) + '"'; }

// `[cher,e]`
std::string bracket_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out + ']';
}

// `1`, `1 and 2`, `1, 2 and 3`
std::string and_list(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += i + 1 == ids.size() ? " and " : ", ";
    out += std::to_string(ids[i]);
  }
  return out;
}

json category_json(const std::string& major, const FeatureVector& v, const FeatureSpace& space) {
  json features = json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.mask(i) == space.full_mask(i)) continue;
    json values = json::array();
    for (std::size_t k = 0; k < space.values(i).size(); ++k) {
      if (v.mask(i) & (ValueMask{1} << k)) values.push_back(space.values(i)[k]);
    }
    features[space.name(i)] = values;
  }
  return {{"major", major}, {"features", features}};
}

json partitioning_json(const Partitioning& p) {
  json out = json::array();
  for (const auto& part : p.parts) {
    out.push_back({{"surface", encode_utf8(part.surface)}, {"lexical", encode_utf8(part.lexical)}, {"rule", part.rule}});
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string render_pattern_side(const SpellingPattern& p, bool lexical) {
  // Letters go to variables with more than one candidate, in order of first
  // appearance; a single-candidate variable prints as its character.
  std::map<int, std::string> names;
  for (const auto* side : {&p.surface, &p.lexical}) {
    for (const auto& s : *side) {
      if (s.kind != PatternSym::Kind::var || names.count(s.var)) continue;
      const Domain& d = p.vars[static_cast<std::size_t>(s.var)];
      if (!d.any && d.chars.size() == 1) {
        names[s.var] = encode_utf8(d.chars[0]);
        continue;
      }
      std::string chars = d.any ? "*" : encode_utf8(Text(d.chars.begin(), d.chars.end()));
      int letter = static_cast<int>(std::count_if(names.begin(), names.end(), [](const auto& kv) {
        return kv.second.front() == '{';
      }));
      names[s.var] = '{' + chars + '=' + var_name(letter) + '}';
    }
  }
  std::string out = "\"";
  for (const auto& s : lexical ? p.lexical : p.surface) {
    switch (s.kind) {
      case PatternSym::Kind::chr: out += encode_utf8(s.c); break;
      case PatternSym::Kind::middle: out += "___"; break;
      case PatternSym::Kind::var: out += names[s.var]; break;
    }
  }
  return out + '"';
}

std::string render_pattern(const CompiledDescription& c, const SpellingPattern& p) {
  const AffixSequence& seq = c.morphotactics.sequences[static_cast<std::size_t>(p.sequence)];
  std::string out = "Pattern " + std::to_string(p.id) + ":\n";
  out += "    " + render_pattern_side(p, false) + " <-> " + render_pattern_side(p, true) + "\n";
  out += "    => tree " + and_list(seq.trees);
  if (!p.orth.is_top(c.orth)) out += " if " + render_constraint_list(p.orth, c.orth);
  out += "\n    Uses:";
  for (const auto& u : p.uses()) out += ' ' + u;
  out += '\n';
  if (!p.deferred.empty()) {
    out += "    Checks:";
    for (const auto& r : p.deferred) out += ' ' + r;
    out += '\n';
  }
  return out;
}

std::string render_tree(const CompiledDescription& c, const ProductionTree& t, const std::string& root_major,
                        const FeatureVector& root, const std::string& infl_major, const FeatureVector& infl) {
  const FeatureSpace& syn = c.syn;
  FeatureVector both = FeatureVector::top(syn), root_only = both, infl_only = both;
  for (std::size_t i = 0; i < syn.size(); ++i) {
    if (root.mask(i) == infl.mask(i)) {
      both.set_mask(i, root.mask(i));
    } else {
      root_only.set_mask(i, root.mask(i));
      infl_only.set_mask(i, infl.mask(i));
    }
  }
  std::string out = "Tree " + std::to_string(t.id) + ":\n";
  out += "   Both = " + render_category(infl_major, both, syn) + "\n";
  out += "   Root = " + render_category(root_major, root_only, syn) + "\n";
  out += "   Infl = " + render_category(infl_major, infl_only, syn) + "\n";
  out += "   Tree = " + t.render(c.description) + "\n";
  return out;
}

std::string render_trace(const CompiledDescription& c, const Analysis& a) {
  const ProductionTree& t = c.morphotactics.trees[static_cast<std::size_t>(a.tree_id)];
  std::string out = quote(a.surface) + " has root " + quote(a.root.citation);
  if (a.irregular()) {
    out += " as an irregular form " + bracket_list(a.morphemes) + " with tree " + std::to_string(t.id) + ".\n\n";
  } else {
    out += " with pattern " + std::to_string(a.pattern_id) + " and tree " + std::to_string(t.id) + ".\n\n";
    out += render_pattern(c, c.patterns.patterns[static_cast<std::size_t>(a.pattern_id)]);
    out += "    Partitions:";
    for (const auto& part : a.partitioning.parts) {
      out += ' ' + encode_utf8(part.surface) + ':' + encode_utf8(part.lexical);
    }
    out += '\n';
  }
  std::string root_major = t.identity() ? a.major : t.root.major;
  out += render_tree(c, t, root_major, a.root_category, a.major, a.category);
  return out;
}

// --- direct rule application ----------------------------------------------

std::vector<SpellEntry> spell_lexical(const RuleSet& rules, TextView lexical) {
  FeatureVector top = FeatureVector::top(rules.orth_space());
  std::vector<SpellEntry> out;
  for (auto& r : generate_direct(lexical, rules, top, true)) {
    SpellEntry e{std::move(r.partitioning), {}};
    e.breaks = find_breaks(e.partitioning, rules, top);
    out.push_back(std::move(e));
  }
  std::stable_partition(out.begin(), out.end(), [](const SpellEntry& e) { return !e.broken(); });
  return out;
}

std::vector<SpellEntry> spell_surface(const RuleSet& rules, TextView surface, SearchLimits limits) {
  FeatureVector top = FeatureVector::top(rules.orth_space());
  std::vector<SpellEntry> out;
  for (auto& r : analyze_direct(surface, rules, top, limits)) out.push_back({std::move(r.partitioning), {}});
  return out;
}

std::string render_spell(const RuleSet& rules, const std::vector<SpellEntry>& entries) {
  const FeatureSpace& orth = rules.orth_space();
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += '\n';
    const Partitioning& p = e.partitioning;
    out += "Surface: " + quote(encode_utf8(p.surface())) + " <->\n";
    std::vector<std::string> morphemes;
    std::string current;
    for (char32_t ch : p.lexical()) {
      if (rules.is_boundary(ch)) {
        if (!current.empty()) morphemes.push_back(current);
        current.clear();
      } else {
        current += encode_utf8(ch);
      }
    }
    if (!current.empty()) morphemes.push_back(current);
    out += "Lexical: " + quote(morphemes.empty() ? "" : morphemes.front()) + '.';
    for (std::size_t i = 1; i < morphemes.size(); ++i) out += " Suffix: " + quote(morphemes[i]) + '.';
    out.pop_back();
    out += '\n';

    FeatureVector acc = FeatureVector::top(orth);
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
      const Partition& part = p.parts[i];
      out += (part.surface.empty() ? std::string(" ") : encode_utf8(part.surface)) + " :: " +
             encode_utf8(part.lexical) + " <- " + part.rule;
      for (const auto& [at, rule] : e.breaks) {
        if (at == i) out += "  (breaks " + quote(rule) + ")";
      }
      out += '\n';
      if (auto r = rules.find(part.rule)) {
        if (auto u = unify(acc, rules.rule(*r).features)) acc = *u;
      }
      bool closes = part.lexical.size() == 1 && rules.is_boundary(part.lexical[0]);
      if (closes || i + 1 == p.parts.size()) {
        if (!acc.is_top(orth)) out += "Category: orth:" + render_constraint_list(acc, orth) + "\n";
        acc = FeatureVector::top(orth);
      }
    }
  }
  return out;
}

// --- JSON -------------------------------------------------------------------

std::string analyses_json(const CompiledDescription& c, std::string_view word, const std::vector<Analysis>& as) {
  json records = json::array();
  for (const auto& a : as) {
    records.push_back({{"word", a.surface},
                       {"root", a.root.citation},
                       {"morphemes", a.morphemes},
                       {"category", category_json(a.major, a.category, c.syn)},
                       {"patternId", a.pattern_id},
                       {"treeId", a.tree_id},
                       {"irregular", a.irregular()}});
  }
  return dump({{"word", std::string(word)}, {"analyses", records}});
}

std::string generated_json(const CompiledDescription& c, std::string_view root, const std::vector<Generated>& gs) {
  json records = json::array();
  for (const auto& g : gs) {
    records.push_back({{"surface", g.surface},
                       {"morphemes", g.morphemes},
                       {"category", category_json(g.major, g.category, c.syn)},
                       {"patternId", g.pattern_id},
                       {"treeId", g.tree_id}});
  }
  return dump({{"root", std::string(root)}, {"forms", records}});
}

std::string inflections_json(std::string_view root, const std::vector<Inflection>& is) {
  json records = json::array();
  for (const auto& i : is) records.push_back({{"morphemes", i.morphemes}, {"major", i.major}, {"surface", i.surface}});
  return dump({{"root", std::string(root)}, {"inflections", records}});
}

std::string spell_json(const std::vector<SpellEntry>& entries) {
  json records = json::array();
  for (const auto& e : entries) {
    json breaks = json::array();
    for (const auto& [at, rule] : e.breaks) breaks.push_back({{"partition", at}, {"rule", rule}});
    records.push_back({{"surface", encode_utf8(e.partitioning.surface())},
                       {"lexical", encode_utf8(e.partitioning.lexical())},
                       {"partitions", partitioning_json(e.partitioning)},
                       {"breaks", breaks}});
  }
  return dump({{"results", records}});
}

std::string trace_json(const CompiledDescription& c, std::string_view word, const std::vector<Analysis>& as) {
  json records = json::array();
  for (const auto& a : as) {
    const ProductionTree& t = c.morphotactics.trees[static_cast<std::size_t>(a.tree_id)];
    json r = {{"root", a.root.citation},
              {"morphemes", a.morphemes},
              {"treeId", a.tree_id},
              {"tree", t.render(c.description)},
              {"category", category_json(a.major, a.category, c.syn)},
              {"rootCategory", category_json(t.identity() ? a.major : t.root.major, a.root_category, c.syn)},
              {"patternId", a.pattern_id}};
    if (!a.irregular()) {
      const SpellingPattern& p = c.patterns.patterns[static_cast<std::size_t>(a.pattern_id)];
      r["pattern"] = {{"surface", render_pattern_side(p, false)},
                      {"lexical", render_pattern_side(p, true)},
                      {"uses", p.uses()},
                      {"deferred", p.deferred}};
      r["partitions"] = partitioning_json(a.partitioning);
    }
    records.push_back(std::move(r));
  }
  return dump({{"word", std::string(word)}, {"traces", records}});
}

}  // namespace morphc
