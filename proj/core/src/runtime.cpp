#include "morphc/runtime.hpp"

#include <algorithm>
#include <set>
#include <span>
#include <tuple>

namespace morphc {

std::uint64_t description_fingerprint(const Description& d) {
  Description rules_only = d;
  rules_only.roots.clear();
  rules_only.orth_decls.clear();
  rules_only.irregulars.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : print_description(rules_only)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CompileOutput compile_description(const Description& d, const CompileOptions& options) {
  CompileOutput out;
  out.diagnostics = validate_description(d);
  if (has_errors(out.diagnostics)) return out;
  auto c = std::make_unique<CompiledDescription>();
  c->description = d;
  try {
    c->orth = FeatureSpace::build(d.features, FeatureKind::orthographic);
    c->syn = FeatureSpace::build(d.features, FeatureKind::syntactic);
    c->rules = RuleSet::compile(d, c->orth);
  } catch (const std::invalid_argument& e) {
    out.diagnostics.push_back({Severity::error, {}, e.what()});
    return out;
  }
  int depth = options.depth.value_or(d.config.depth_bound);
  c->morphotactics = enumerate_affix_sequences(d, c->syn, c->orth, depth);
  out.diagnostics.insert(out.diagnostics.end(), c->morphotactics.diagnostics.begin(),
                         c->morphotactics.diagnostics.end());
  c->patterns = compile_patterns(d, c->rules, c->morphotactics, options.patterns);
  out.diagnostics.insert(out.diagnostics.end(), c->patterns.diagnostics.begin(), c->patterns.diagnostics.end());
  if (has_errors(out.diagnostics)) return out;
  c->fingerprint = description_fingerprint(d);
  out.compiled = std::move(c);
  return out;
}

// --- lexicon ----------------------------------------------------------------

InMemoryLexicon::InMemoryLexicon(const Description& d) {
  for (const auto& e : d.roots) add(e);
  for (const auto& o : d.orth_decls) add_orth(o);
  for (const auto& i : d.irregulars) add_irregular(i);
}

void InMemoryLexicon::add(LexEntry entry) {
  ++count_;
  std::string key = entry.citation;
  entries_[key].push_back(std::move(entry));
}

void InMemoryLexicon::add_orth(const OrthDecl& decl) {
  auto& list = orth_[decl.citation];
  list.insert(list.end(), decl.orth.begin(), decl.orth.end());
}

void InMemoryLexicon::add_irregular(IrregEntry entry) {
  by_root_[entry.morphemes.front()].push_back(entry);
  std::string key = entry.surface;
  by_surface_[key].push_back(std::move(entry));
}

std::vector<LexEntry> InMemoryLexicon::lookup(std::string_view citation) const {
  auto it = entries_.find(citation);
  if (it == entries_.end()) return {};
  std::vector<LexEntry> out = it->second;
  auto o = orth_.find(citation);
  if (o != orth_.end()) {
    for (auto& e : out) e.orth.insert(e.orth.end(), o->second.begin(), o->second.end());
  }
  return out;
}

std::vector<std::string> InMemoryLexicon::citations() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

std::vector<IrregEntry> InMemoryLexicon::irregular_forms(std::string_view surface) const {
  auto it = by_surface_.find(surface);
  return it == by_surface_.end() ? std::vector<IrregEntry>{} : it->second;
}

std::vector<IrregEntry> InMemoryLexicon::irregulars_of(std::string_view root) const {
  auto it = by_root_.find(root);
  return it == by_root_.end() ? std::vector<IrregEntry>{} : it->second;
}

std::string render_inflection(const Inflection& i) {
  std::string out = "[";
  for (std::size_t k = 0; k < i.morphemes.size(); ++k) {
    if (k) out += ',';
    out += i.morphemes[k];
  }
  return out + "]: " + i.major + " -> " + i.surface;
}

// --- morphology -----------------------------------------------------------

std::optional<FeatureVector> Morphology::entry_orth(const LexEntry& e) const {
  try {
    return compile_constraints(e.orth, c_.orth);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<Morphology::RootReading> Morphology::apply_tree(const LexEntry& e, const ProductionTree& t) const {
  try {
    Bindings b = t.bindings;
    std::map<std::string, CellId> vars;
    CompiledCategory ec = compile_category(e.category, c_.syn, b, vars);
    if (t.identity()) return RootReading{ec.major, resolve(b, ec), resolve(b, ec)};
    auto u = unify_categories(std::move(b), t.root, ec);
    if (!u) return std::nullopt;
    return RootReading{t.inflected.major, resolve(*u, t.inflected), resolve(*u, t.root)};
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::vector<Morphology::IrregularReading> Morphology::irregular_readings(const IrregEntry& irr,
                                                                        const LexEntry& e) const {
  std::vector<IrregularReading> out;
  if (irr.morphemes.front() != e.citation) return out;
  std::vector<std::string> affixes(irr.morphemes.begin() + 1, irr.morphemes.end());
  const Description& d = c_.description;
  for (const auto& t : c_.morphotactics.trees) {
    if (t.identity() || !t.prefixes.empty() || t.suffixes != affixes) continue;
    bool admitted = std::all_of(t.steps.begin(), t.steps.end(), [&](const TreeStep& s) {
      return std::find(irr.rules.begin(), irr.rules.end(), d.productions[s.rule].name) != irr.rules.end();
    });
    if (!admitted) continue;
    if (auto r = apply_tree(e, t)) out.push_back({&t, *r});
  }
  return out;
}

bool Morphology::blocked(const LexEntry& e, const ProductionTree& t, const RootReading& reading) const {
  if (t.identity()) return false;
  const std::string& top = t.top_rule(c_.description);
  for (const auto& irr : lexicon_.irregulars_of(e.citation)) {
    if (!irr.exclusive) continue;
    if (std::find(irr.rules.begin(), irr.rules.end(), top) == irr.rules.end()) continue;
    for (const auto& r : irregular_readings(irr, e)) {
      if (r.reading.major == reading.major && unify(r.reading.category, reading.category)) return true;
    }
  }
  return false;
}

namespace {

using Sym = PatternSym;

bool bind(const Sym& s, char32_t ch, const SpellingPattern& p, const RuleSet& rules, std::vector<char32_t>& vals) {
  if (s.kind == Sym::Kind::chr) return s.c == ch;
  char32_t& v = vals[static_cast<std::size_t>(s.var)];
  if (v) return v == ch;
  const Domain& d = p.vars[static_cast<std::size_t>(s.var)];
  if (!d.contains(ch) || rules.is_boundary(ch)) return false;
  v = ch;
  return true;
}

// Matches `text` against `syms`, which hold exactly one middle symbol.
// On success `mid` holds the characters the middle stands for.
bool match_template(const SpellingPattern& p, const RuleSet& rules, std::span<const Sym> syms, std::u32string_view text,
                    std::vector<char32_t>& vals, std::u32string_view& mid) {
  auto m = std::find_if(syms.begin(), syms.end(), [](const Sym& s) { return s.kind == Sym::Kind::middle; });
  if (m == syms.end()) return false;
  auto left = static_cast<std::size_t>(m - syms.begin());
  std::size_t right = syms.size() - left - 1;
  if (text.size() < left + right) return false;
  for (std::size_t i = 0; i < left; ++i) {
    if (!bind(syms[i], text[i], p, rules, vals)) return false;
  }
  for (std::size_t i = 0; i < right; ++i) {
    if (!bind(syms[syms.size() - 1 - i], text[text.size() - 1 - i], p, rules, vals)) return false;
  }
  mid = text.substr(left, text.size() - left - right);
  return true;
}

// Calls `emit` for every assignment of the still unbound variables among
// `needed`, drawing from their domains (`fallback` for unrestricted ones).
template <typename Emit>
void enumerate_unbound(const SpellingPattern& p, const std::vector<int>& needed, std::size_t k,
                       std::vector<char32_t>& vals, const std::vector<char32_t>& fallback, const RuleSet& rules,
                       Emit&& emit) {
  if (k == needed.size()) {
    emit();
    return;
  }
  auto v = static_cast<std::size_t>(needed[k]);
  if (vals[v]) {
    enumerate_unbound(p, needed, k + 1, vals, fallback, rules, emit);
    return;
  }
  const Domain& d = p.vars[v];
  for (char32_t c : d.any ? fallback : d.chars) {
    if (rules.is_boundary(c)) continue;
    vals[v] = c;
    enumerate_unbound(p, needed, k + 1, vals, fallback, rules, emit);
  }
  vals[v] = 0;
}

Text instantiate(const PatternString& syms, const std::vector<char32_t>& vals, std::u32string_view mid) {
  Text out;
  for (const auto& s : syms) {
    if (s.kind == Sym::Kind::chr) {
      out.push_back(s.c);
    } else if (s.kind == Sym::Kind::var) {
      out.push_back(vals[static_cast<std::size_t>(s.var)]);
    } else {
      out += mid;
    }
  }
  return out;
}

Partitioning instantiate_parts(const SpellingPattern& p, const std::vector<char32_t>& vals, std::u32string_view mid) {
  Partitioning out;
  for (const auto& part : p.parts) {
    if (part.middle) {
      for (char32_t c : mid) out.parts.push_back({Text(1, c), Text(1, c), part.rule, {}});
      continue;
    }
    out.parts.push_back({instantiate(part.surface, vals, mid), instantiate(part.lexical, vals, mid), part.rule, {}});
  }
  return out;
}

std::vector<int> vars_in(const PatternString& syms) {
  std::vector<int> out;
  for (const auto& s : syms) {
    if (s.kind == Sym::Kind::var && std::find(out.begin(), out.end(), s.var) == out.end()) out.push_back(s.var);
  }
  return out;
}

std::vector<char32_t> letters(const Description& d) {
  const CharClassDef* c = d.find_class(kLetterClass);
  return c ? std::vector<char32_t>(c->members.begin(), c->members.end()) : std::vector<char32_t>{};
}

}  // namespace

void Morphology::analyze_pattern(const SpellingPattern& p, std::u32string_view word, std::vector<Analysis>& out) const {
  const RuleSet& rules = c_.rules;
  std::vector<char32_t> vals(p.vars.size(), 0);
  std::u32string_view mid;
  if (!match_template(p, rules, p.surface, word, vals, mid)) return;
  const AffixSequence& seq = c_.morphotactics.sequences[static_cast<std::size_t>(p.sequence)];
  std::vector<int> needed = vars_in(p.lexical);
  std::vector<char32_t> fallback = letters(c_.description);
  enumerate_unbound(p, needed, 0, vals, fallback, rules, [&] {
    PatternString root_syms(p.lexical.begin() + static_cast<std::ptrdiff_t>(p.root_begin),
                            p.lexical.begin() + static_cast<std::ptrdiff_t>(p.root_end));
    std::string root = encode_utf8(instantiate(root_syms, vals, mid));
    if (root.empty()) return;
    std::vector<LexEntry> entries = lexicon_.lookup(root);
    if (entries.empty()) return;
    Partitioning part = instantiate_parts(p, vals, mid);
    if (!bind_partitioning(part, rules)) return;
    for (const auto& e : entries) {
      auto eo = entry_orth(e);
      if (!eo) continue;
      auto o = unify(*eo, p.orth);
      if (!o) continue;
      if (!check_partitioning(part, rules, *o).ok()) continue;
      for (int tid : seq.trees) {
        const ProductionTree& t = c_.morphotactics.trees[static_cast<std::size_t>(tid)];
        auto reading = apply_tree(e, t);
        if (!reading || blocked(e, t, *reading)) continue;
        out.push_back({e, seq.morphemes(e.citation), encode_utf8(word), reading->major, reading->category, p.id, t.id,
                       part, reading->root});
      }
    }
  });
}

std::vector<Analysis> Morphology::analyze(std::string_view word) const {
  std::vector<Analysis> out;
  Text w;
  try {
    w = decode_utf8(word);
  } catch (const std::invalid_argument&) {
    return out;
  }
  for (const auto& irr : lexicon_.irregular_forms(word)) {
    for (const auto& e : lexicon_.lookup(irr.morphemes.front())) {
      for (const auto& r : irregular_readings(irr, e)) {
        out.push_back({e, irr.morphemes, std::string(word), r.reading.major, r.reading.category, -1, r.tree->id, {},
                       r.reading.root});
      }
    }
  }
  const PatternSet& ps = c_.patterns;
  for (std::size_t pl : ps.prefix_lengths) {
    if (pl > w.size()) break;
    for (std::size_t sl : ps.suffix_lengths) {
      if (pl + sl > w.size()) break;
      auto it = ps.analysis_index.find({w.substr(0, pl), w.substr(w.size() - sl)});
      if (it == ps.analysis_index.end()) continue;
      for (int pid : it->second) analyze_pattern(ps.patterns[static_cast<std::size_t>(pid)], w, out);
    }
  }
  auto key = [](const Analysis& a) { return std::tie(a.morphemes, a.major, a.category, a.tree_id); };
  std::stable_sort(out.begin(), out.end(), [&](const Analysis& a, const Analysis& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    // Irregular readings (-1) sort before regular ones.
    return a.pattern_id < b.pattern_id;
  });
  std::vector<Analysis> unique;
  for (auto& a : out) {
    bool seen = false;
    for (auto it = unique.rbegin(); it != unique.rend() && key(*it) == key(a); ++it) {
      if (it->root == a.root) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(std::move(a));
  }
  return unique;
}

std::vector<Generated> Morphology::generate_tree(const LexEntry& e, int tree) const {
  std::vector<Generated> out;
  const ProductionTree& t = c_.morphotactics.trees[static_cast<std::size_t>(tree)];
  const AffixSequence& seq = c_.morphotactics.sequences[static_cast<std::size_t>(t.sequence)];
  if (seq.pseudo) {
    for (const auto& irr : lexicon_.irregulars_of(e.citation)) {
      for (const auto& r : irregular_readings(irr, e)) {
        if (r.tree->id == tree) {
          out.push_back({irr.surface, irr.morphemes, r.reading.major, r.reading.category, -1, tree, {}});
        }
      }
    }
    return out;
  }
  auto reading = apply_tree(e, t);
  if (!reading || blocked(e, t, *reading)) return out;
  auto eo = entry_orth(e);
  if (!eo) return out;
  Text root;
  try {
    root = decode_utf8(e.citation);
  } catch (const std::invalid_argument&) {
    return out;
  }
  const RuleSet& rules = c_.rules;
  std::vector<char32_t> fallback = letters(c_.description);
  for (int pid : c_.patterns.generation_index[static_cast<std::size_t>(seq.id)]) {
    const SpellingPattern& p = c_.patterns.patterns[static_cast<std::size_t>(pid)];
    auto o = unify(*eo, p.orth);
    if (!o) continue;
    std::vector<char32_t> vals(p.vars.size(), 0);
    std::u32string_view mid;
    std::span<const Sym> root_syms(p.lexical.data() + p.root_begin, p.root_end - p.root_begin);
    if (!match_template(p, rules, root_syms, root, vals, mid)) continue;
    enumerate_unbound(p, vars_in(p.surface), 0, vals, fallback, rules, [&] {
      Partitioning part = instantiate_parts(p, vals, mid);
      if (!bind_partitioning(part, rules)) return;
      if (!check_partitioning(part, rules, *o).ok()) return;
      out.push_back({encode_utf8(part.surface()), seq.morphemes(e.citation), reading->major, reading->category, p.id,
                     tree, std::move(part)});
    });
  }
  std::stable_sort(out.begin(), out.end(), [](const Generated& a, const Generated& b) {
    return std::tie(a.surface, a.pattern_id) < std::tie(b.surface, b.pattern_id);
  });
  out.erase(std::unique(out.begin(), out.end(), [](const Generated& a, const Generated& b) { return a.surface == b.surface; }),
            out.end());
  return out;
}

std::vector<Generated> Morphology::generate(std::string_view root, const CategorySpec& target) const {
  std::vector<Generated> out;
  FeatureVector want;
  try {
    want = compile_constraints(target.constraints, c_.syn);
  } catch (const std::invalid_argument&) {
    return out;
  }
  for (const auto& e : lexicon_.lookup(root)) {
    for (const auto& t : c_.morphotactics.trees) {
      auto reading = apply_tree(e, t);
      if (!reading || reading->major != target.major || !unify(reading->category, want)) continue;
      auto forms = generate_tree(e, t.id);
      out.insert(out.end(), forms.begin(), forms.end());
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Generated& a, const Generated& b) {
    return std::tie(a.surface, a.morphemes, a.tree_id) < std::tie(b.surface, b.morphemes, b.tree_id);
  });
  return out;
}

std::optional<std::vector<Inflection>> Morphology::inflections(std::string_view root) const {
  auto entries = lexicon_.lookup(root);
  if (entries.empty()) return std::nullopt;
  std::set<Inflection> forms;
  for (const auto& e : entries) {
    for (const auto& t : c_.morphotactics.trees) {
      if (t.identity()) continue;
      for (const auto& g : generate_tree(e, t.id)) forms.insert({g.morphemes, g.major, g.surface});
    }
  }
  if (forms.empty()) {
    for (const auto& e : entries) {
      for (const auto& g : generate_tree(e, 0)) forms.insert({g.morphemes, g.major, g.surface});
    }
  }
  return std::vector<Inflection>(forms.begin(), forms.end());
}

// --- cache ----------------------------------------------------------------

std::vector<Analysis> AnalysisCache::analyze(std::string_view word) {
  std::string key(word);
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;
  auto result = m_.analyze(word);
  std::lock_guard lock(mutex_);
  memo_.emplace(std::move(key), result);
  return result;
}

void AnalysisCache::clear() {
  std::lock_guard lock(mutex_);
  memo_.clear();
}

}  // namespace morphc
