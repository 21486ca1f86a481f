// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fixtures.hpp"
#include "micro.hpp"
#include "morphc/debugger.hpp"
#include "morphc/runtime.hpp"
#include "run.hpp"
#include "spell_oracle.hpp"

using namespace morphc;
using morphc::testing::Fixture;
using morphc::testing::golden_path;
using morphc::testing::load_fixture;
using morphc::testing::load_text;
using morphc::testing::read_text;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string note;

 private:
  std::vector<std::string> failures_;
};

CategorySpec category(const Description& d, const std::string& text) {
  std::vector<Diagnostic> ds;
  auto c = parse_category(text, d, ds);
  if (!c) throw std::runtime_error("bad category " + text);
  return *c;
}

std::set<std::string> surfaces(const std::vector<Generated>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(g.surface);
  return out;
}

std::set<std::string> surfaces(const std::vector<SpellResult>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) out.insert(encode_utf8(r.text));
  return out;
}

std::string show(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

std::string partition_string(const Partitioning& p) {
  std::string out;
  for (const auto& part : p.parts) {
    out += encode_utf8(part.surface) + ":" + encode_utf8(part.lexical) + "/" + part.rule + " ";
  }
  return out;
}

Fixture french_with_lexicon() {
  Fixture f = load_fixture("french.morph");
  ParseResult extra = parse_lexicon(read_text(testing::fixture_path("french.lex")), f.description);
  if (!extra.ok()) throw std::runtime_error("french.lex does not parse");
  for (const auto& e : extra.description.roots) f.lexicon->add(e);
  for (const auto& o : extra.description.orth_decls) f.lexicon->add_orth(o);
  return f;
}

// --- 1 ----------------------------------------------------------------------

Checks criterion_chere() {
  Checks c;
  auto start = Clock::now();
  Fixture f = load_fixture("french.morph");
  auto as = f.m().analyze("chère");
  c.expect(as.size() == 1, "analyze(chère) gives " + std::to_string(as.size()) + " analyses");
  if (as.size() == 1) {
    const Analysis& a = as[0];
    std::size_t g = *f.c().syn.index_of("agr_gender");
    std::size_t fem = *f.c().syn.value_index(g, "f");
    c.expect(a.root.citation == "cher", "root is " + a.root.citation);
    c.expect(a.morphemes == std::vector<std::string>{"cher", "e"}, "morphemes");
    c.expect(a.major == "adjp", "major is " + a.major);
    c.expect(a.category.mask(g) == (ValueMask{1} << fem), "inflected gender is not feminine");
  }
  auto gen = surfaces(f.m().generate("cher", category(f.description, "adjp:[agr_gender=f, agr_num=sing]")));
  c.expect(gen == std::set<std::string>{"chère"}, "generate(cher, feminine) = " + show(gen));
  c.expect(f.m().analyze("chere").empty(), "chere has analyses");

  auto entries = spell_lexical(f.c().rules, U"cher+e+");
  std::string listing = render_spell(f.c().rules, entries);
  c.expect(listing == read_text(golden_path("spell_cher_e.txt")), "spell listing differs from golden");
  bool chere_breaks = false;
  for (const auto& e : entries) {
    if (e.partitioning.surface() != U"chere") continue;
    for (const auto& [at, rule] : e.breaks) chere_breaks = chere_breaks || rule == "change_e_è1";
  }
  c.expect(chere_breaks, "chere is not annotated as breaking change_e_è1");
  auto cli = testing::run_morphc("french.morph", "spell cher+e+");
  c.expect(cli.status == 0 && cli.out == read_text(golden_path("spell_cher_e.txt")), "CLI spell differs from golden");
  c.expect(cli.out.find("(breaks \"change_e_è1\")") != std::string::npos, "CLI spell lacks the breaks note");

  std::string trace;
  for (const auto& a : as) trace += render_trace(f.c(), a);
  c.expect(trace == read_text(golden_path("trace_chere.txt")), "trace differs from golden");

  double t = seconds_since(start);
  c.expect(t < 1.0, "took " + std::to_string(t) + " s");
  c.note = std::to_string(t).substr(0, 5) + " s";
  return c;
}

// --- 2 ----------------------------------------------------------------------

Checks criterion_multi_letter() {
  Checks c;
  std::string text = read_text(testing::fixture_path("french.morph"));
  const std::string two_rules =
      "spell(change_au_ll1, \"|l|\" <=> \"|a|u+e\", [], []).\n"
      "spell(change_au_ll2, \"|l|\" <=> \"a|u|+e\", [], []).\n";
  std::string naive_text = text;
  auto at = naive_text.find(two_rules);
  c.expect(at != std::string::npos, "fixture does not contain the two-rule formulation");
  if (at == std::string::npos) return c;
  naive_text.replace(at, two_rules.size(), "spell(change_au_ll, \"|ll|\" <=> \"|au|+e\", [], []).\n");

  Fixture naive = load_text(naive_text);
  Fixture split = load_text(text);
  FeatureVector top_naive = FeatureVector::top(naive.c().orth);
  FeatureVector top_split = FeatureVector::top(split.c().orth);

  auto n = surfaces(generate_direct(U"beau+e+", naive.c().rules, top_naive));
  c.expect(n.count("belle") && n.count("beaue"), "naive rule gives " + show(n));
  auto s = surfaces(generate_direct(U"beau+e+", split.c().rules, top_split));
  c.expect(s == std::set<std::string>{"belle"}, "two rules give " + show(s));
  auto cham = surfaces(generate_direct(U"chameau+e+", split.c().rules, top_split));
  c.expect(cham == std::set<std::string>{"chamelle"}, "chameau+e+ gives " + show(cham));
  auto gen = surfaces(split.m().generate("chameau", category(split.description, "noun:[agr_gender=f, agr_num=sing]")));
  c.expect(gen == std::set<std::string>{"chamelle"}, "generate(chameau, feminine) = " + show(gen));
  auto beau = surfaces(split.m().generate("beau", category(split.description, "adjp:[agr_gender=f, agr_num=sing]")));
  c.expect(beau == std::set<std::string>{"belle"}, "generate(beau, feminine) = " + show(beau));
  return c;
}

// --- 3 ----------------------------------------------------------------------

Checks criterion_polish() {
  Checks c;
  Fixture f = load_fixture("polish.morph");
  CategorySpec plural = category(f.description, "noun:[num=plur]");
  const std::map<std::string, std::string> expected{{"bój", "boje"}, {"bór", "bory"}, {"krój", "kroje"}, {"zbój", "zbóje"}};
  for (const auto& [root, form] : expected) {
    auto gs = f.m().generate(root, plural);
    c.expect(surfaces(gs) == std::set<std::string>{form}, root + " gives " + show(surfaces(gs)));
  }
  // The two tables: bój with the accent change, zbój with defaults only. They
  // must be the only partitionings, in generation and in analysis.
  const std::map<std::string, std::string> tables{
      {"bój", "b:b/default o:ó/change_ó_o j:j/default :+/boundary e:e/default :+/boundary "},
      {"zbój", "z:z/default b:b/default ó:ó/default j:j/default :+/boundary e:e/default :+/boundary "}};
  for (const auto& [root, table] : tables) {
    std::set<std::string> seen;
    for (const auto& g : f.m().generate(root, plural)) seen.insert(partition_string(g.partitioning));
    c.expect(seen == std::set<std::string>{table}, root + " generation partitionings " + show(seen));
    std::set<std::string> traced;
    for (const auto& a : f.m().analyze(expected.at(root))) traced.insert(partition_string(a.partitioning));
    c.expect(traced == std::set<std::string>{table}, root + " analysis partitionings " + show(traced));
  }
  auto boje = testing::run_morphc("polish.morph", "trace boje");
  c.expect(boje.out == read_text(golden_path("trace_boje.txt")), "trace boje differs from golden");
  c.expect(boje.out.find("Partitions: b:b o:ó j:j :+ e:e :+") != std::string::npos, "trace boje lacks partitions");
  auto zboje = testing::run_morphc("polish.morph", "trace zbóje");
  c.expect(zboje.out == read_text(golden_path("trace_zboje.txt")), "trace zbóje differs from golden");
  for (const auto& w : {"bory", "kroje"}) {
    auto r = testing::run_morphc("polish.morph", std::string("trace ") + w);
    c.expect(r.out == read_text(golden_path(std::string("trace_") + w + ".txt")), std::string("trace ") + w);
  }
  return c;
}

// --- 4 ----------------------------------------------------------------------

Checks criterion_listing() {
  Checks c;
  const std::string listing = "[cher,e]: adjp -> chère\n[cher,e,s]: adjp -> chères\n[cher,s]: adjp -> chers\n";
  auto r = testing::run_morphc("french.morph", "inflections cher");
  c.expect(r.status == 0, "exit status " + std::to_string(r.status));
  c.expect(r.out == listing, "output differs from the three-line listing:\n" + r.out);
  c.expect(read_text(golden_path("cher_inflections.txt")) == listing, "golden file differs from the listing");
  return c;
}

// --- 5 ----------------------------------------------------------------------

using AnalysisKey = std::tuple<std::string, std::vector<std::string>, int, std::string, std::vector<ValueMask>>;

std::vector<ValueMask> masks_of(const FeatureVector& v) { return {v.masks().begin(), v.masks().end()}; }

/// Inflected category of `e` under tree `t`, by unifying the entry's
/// category with the tree's root daughter.
std::optional<std::pair<std::string, FeatureVector>> tree_reading(const CompiledDescription& c, const LexEntry& e,
                                                                  const ProductionTree& t) {
  std::map<std::string, CellId> vars;
  if (t.identity()) {
    Bindings b;
    auto cat = compile_category(e.category, c.syn, b, vars);
    FeatureVector v = resolve(b, cat);
    if (!v.consistent()) return std::nullopt;
    return std::make_pair(e.category.major, v);
  }
  Bindings b = t.bindings;
  auto cat = compile_category(e.category, c.syn, b, vars);
  auto u = unify_categories(b, t.root, cat);
  if (!u) return std::nullopt;
  FeatureVector v = resolve(*u, t.inflected);
  if (!v.consistent()) return std::nullopt;
  return std::make_pair(t.inflected.major, v);
}

/// Whether an exclusive irregular form of `e` pre-empts the regular reading
/// under `t`: it names `t`'s top rule and yields the same major with a
/// unifiable category.
bool blocked_by_irregular(const CompiledDescription& c, const LexiconProvider& lex, const LexEntry& e,
                          const ProductionTree& t, const FeatureVector& category, const std::string& major) {
  if (t.identity()) return false;
  const std::string& top = t.top_rule(c.description);
  for (const auto& irr : lex.irregulars_of(e.citation)) {
    if (!irr.exclusive || std::find(irr.rules.begin(), irr.rules.end(), top) == irr.rules.end()) continue;
    for (const auto& seq : c.morphotactics.sequences) {
      if (seq.morphemes(e.citation) != irr.morphemes) continue;
      for (int tid : seq.trees) {
        const ProductionTree& it = c.morphotactics.trees[static_cast<std::size_t>(tid)];
        if (it.top_rule(c.description) != top) continue;
        auto r = tree_reading(c, e, it);
        if (r && r->first == major && unify(r->second, category)) return true;
      }
    }
  }
  return false;
}

struct Candidate {
  LexEntry entry;
  const AffixSequence* sequence;
};

/// Lexicon-filtered direct analysis: every lexical string analyze_direct
/// finds under a root's combined orth, matched against root x sequence
/// spellings and filtered through the trees and irregular blocking.
class DirectReference {
 public:
  DirectReference(const Fixture& f) : f_(f) {
    const CompiledDescription& c = f.c();
    for (const auto& citation : f.lexicon->citations()) {
      for (const auto& e : f.lexicon->lookup(citation)) {
        FeatureVector eo = compile_constraints(e.orth, c.orth);
        for (const auto& seq : c.morphotactics.sequences) {
          if (seq.pseudo) continue;
          auto o = unify(eo, seq.orth);
          if (!o) continue;
          Text lexical;
          for (const auto& m : seq.morphemes(citation)) lexical += decode_utf8(m) + U"+";
          by_orth_[*o][lexical].push_back({e, &seq});
        }
      }
    }
  }

  std::set<AnalysisKey> analyze(const std::string& word) const {
    const CompiledDescription& c = f_.c();
    std::set<AnalysisKey> out;
    Text w = decode_utf8(word);
    for (const auto& [orth, table] : by_orth_) {
      // No candidate is longer than the longest spelling in its table, so
      // that bound loses nothing; empty surface runs are left unbounded.
      SearchLimits limits{SearchLimits::unlimited, 0};
      for (const auto& [lexical, cands] : table) limits.max_lexical_length = std::max(limits.max_lexical_length, lexical.size());
      for (const auto& r : analyze_direct(w, c.rules, orth, limits)) {
        auto it = table.find(r.text);
        if (it == table.end()) continue;
        for (const auto& cand : it->second) {
          for (int tid : cand.sequence->trees) {
            const ProductionTree& t = c.morphotactics.trees[static_cast<std::size_t>(tid)];
            auto reading = tree_reading(c, cand.entry, t);
            if (!reading) continue;
            if (blocked_by_irregular(c, *f_.lexicon, cand.entry, t, reading->second, reading->first)) continue;
            out.emplace(cand.entry.citation, cand.sequence->morphemes(cand.entry.citation), tid, reading->first,
                        masks_of(reading->second));
          }
        }
      }
    }
    return out;
  }

  /// Surface realisations of every root x sequence spelling.
  std::set<std::string> corpus() const {
    std::set<std::string> out;
    for (const auto& [orth, table] : by_orth_) {
      for (const auto& [lexical, cands] : table) {
        for (const auto& s : surfaces(generate_direct(lexical, f_.c().rules, orth))) out.insert(s);
      }
    }
    return out;
  }

 private:
  const Fixture& f_;
  std::map<FeatureVector, std::map<Text, std::vector<Candidate>>> by_orth_;
};

std::set<AnalysisKey> pattern_keys(const Morphology& m, const std::string& word) {
  std::set<AnalysisKey> out;
  for (const auto& a : m.analyze(word)) {
    if (a.irregular()) continue;
    out.emplace(a.root.citation, a.morphemes, a.tree_id, a.major, masks_of(a.category));
  }
  return out;
}

std::vector<char32_t> letters_of(const Description& d) {
  const CharClassDef* l = d.find_class(kLetterClass);
  return {l->members.begin(), l->members.end()};
}

/// Random strings over the fixture's letters plus one-character edits of
/// corpus words.
std::vector<std::string> non_words(const Description& d, const std::set<std::string>& corpus, std::size_t count,
                                   unsigned seed) {
  std::mt19937 rng(seed);
  auto letters = letters_of(d);
  std::vector<std::string> words(corpus.begin(), corpus.end());
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<std::string> out;
  while (out.size() < count) {
    Text t;
    if (out.size() % 2 == 0 || words.empty()) {
      std::size_t len = 1 + pick(9);
      for (std::size_t i = 0; i < len; ++i) t += letters[pick(letters.size())];
    } else {
      t = decode_utf8(words[pick(words.size())]);
      std::size_t at = pick(t.size() + 1);
      switch (pick(3)) {
        case 0: t.insert(t.begin() + static_cast<std::ptrdiff_t>(at), letters[pick(letters.size())]); break;
        case 1:
          if (at < t.size()) t.erase(at, 1);
          break;
        default:
          if (at < t.size()) t[at] = letters[pick(letters.size())];
      }
    }
    std::string s = encode_utf8(t);
    if (!corpus.count(s)) out.push_back(s);
  }
  return out;
}

Checks criterion_oracle_equivalence() {
  Checks c;
  auto start = Clock::now();
  std::size_t words = 0, discrepancies = 0, analysed = 0;
  std::vector<Fixture> fixtures;
  fixtures.push_back(french_with_lexicon());
  fixtures.push_back(load_fixture("polish.morph"));
  fixtures.push_back(load_fixture("english.morph"));
  const char* names[] = {"french", "polish", "english"};
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const Fixture& f = fixtures[k];
    DirectReference ref(f);
    std::set<std::string> corpus = ref.corpus();
    std::vector<std::string> all(corpus.begin(), corpus.end());
    for (auto& w : non_words(f.description, corpus, 500, 11 + static_cast<unsigned>(k))) all.push_back(w);
    for (const auto& w : all) {
      ++words;
      auto got = pattern_keys(f.m(), w);
      auto want = ref.analyze(w);
      if (!want.empty()) ++analysed;
      if (got != want) {
        ++discrepancies;
        if (discrepancies <= 5) {
          c.expect(false, std::string(names[k]) + " " + w + ": patterns " + std::to_string(got.size()) + ", direct " +
                              std::to_string(want.size()));
        }
      }
    }
  }
  double t = seconds_since(start);
  c.expect(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  c.expect(analysed > 0, "no word had an analysis");
  c.expect(t < 60.0, "took " + std::to_string(t) + " s");
  c.note = std::to_string(words) + " words, " + std::to_string(analysed) + " analysable, " +
           std::to_string(t).substr(0, 5) + " s";
  return c;
}

// --- 6 ----------------------------------------------------------------------

std::set<oracle::Parting> partings(const std::vector<SpellResult>& rs) {
  std::set<oracle::Parting> out;
  for (const auto& r : rs) {
    oracle::Parting p;
    for (const auto& part : r.partitioning.parts) p.push_back({part.surface, part.lexical, part.rule});
    out.insert(p);
  }
  return out;
}

Checks criterion_micro() {
  Checks c;
  const unsigned cases = 1000;
  std::size_t discrepancies = 0, nonempty = 0;
  for (unsigned i = 0; i < cases; ++i) {
    testing::MicroGenerator g(1000 + i);
    testing::MicroSystem m = g.system();
    ParseResult pr = parse_description(m.text);
    if (!pr.ok()) {
      c.expect(false, "case " + std::to_string(i) + " does not parse");
      continue;
    }
    const Description& d = pr.description;
    FeatureSpace orth = FeatureSpace::build(d.features, FeatureKind::orthographic);
    RuleSet rules = RuleSet::compile(d, orth);
    oracle::SpellOracle o(d);
    std::vector<Diagnostic> ds;
    auto cons = parse_category("x:" + m.orth_choices[static_cast<std::size_t>(g.pick(0, 2))], d, ds)->constraints;
    FeatureVector ov = compile_constraints(cons, orth);
    oracle::OrthSet os = o.orth_of(cons);

    Text lex = decode_utf8(g.lexical(7));
    auto lib_gen = partings(generate_direct(lex, rules, ov));
    auto ora_gen = o.generate(lex, os);
    if (lib_gen != ora_gen) {
      ++discrepancies;
      c.expect(false, "generate case " + std::to_string(i) + " " + encode_utf8(lex));
    }
    Text surf = decode_utf8(g.surface(5));
    SearchLimits limits{SearchLimits::unlimited, 7};
    auto lib_ana = partings(analyze_direct(surf, rules, ov, limits));
    auto ora_ana = o.analyze(surf, os, 7);
    if (lib_ana != ora_ana) {
      ++discrepancies;
      c.expect(false, "analyze case " + std::to_string(i) + " " + encode_utf8(surf));
    }
    nonempty += !ora_gen.empty() + !ora_ana.empty();
  }
  c.expect(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  c.note = std::to_string(cases) + " systems, " + std::to_string(2 * cases) + " comparisons, " +
           std::to_string(nonempty) + " non-empty";
  return c;
}

// --- 7 ----------------------------------------------------------------------

Checks criterion_round_trip() {
  Checks c;
  std::size_t pairs = 0, recovered = 0;
  std::vector<Fixture> fixtures;
  fixtures.push_back(french_with_lexicon());
  fixtures.push_back(load_fixture("polish.morph"));
  fixtures.push_back(load_fixture("english.morph"));
  for (const auto& f : fixtures) {
    for (const auto& citation : f.lexicon->citations()) {
      for (const auto& i : morphc::testing::inflections_of(f.m(), citation)) {
        ++pairs;
        bool ok = false;
        for (const auto& a : f.m().analyze(i.surface)) {
          ok = ok || (a.root.citation == citation && a.morphemes == i.morphemes && a.major == i.major);
        }
        recovered += ok;
        if (!ok) c.expect(false, citation + " -> " + i.surface + " not recovered");
      }
      for (const auto& e : f.lexicon->lookup(citation)) {
        for (const auto& t : f.c().morphotactics.trees) {
          for (const auto& g : f.m().generate_tree(e, t.id)) {
            ++pairs;
            bool ok = false;
            for (const auto& a : f.m().analyze(g.surface)) {
              ok = ok || (a.root.citation == citation && a.tree_id == t.id);
            }
            recovered += ok;
            if (!ok) c.expect(false, citation + " tree " + std::to_string(t.id) + " -> " + g.surface + " not recovered");
          }
        }
      }
    }
  }
  c.expect(pairs > 0, "no pairs");
  c.note = std::to_string(recovered) + "/" + std::to_string(pairs) + " recovered";
  return c;
}

// --- 8 ----------------------------------------------------------------------

/// Assignments (one value index per feature) admitted by `v`, by brute force.
std::set<std::vector<int>> admitted(const FeatureVector& v, const std::vector<int>& widths) {
  std::set<std::vector<int>> out;
  std::vector<int> a(widths.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == widths.size()) {
      out.insert(a);
      return;
    }
    for (int k = 0; k < widths[i]; ++k) {
      if (!(v.mask(i) >> k & 1)) continue;
      a[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Checks criterion_features() {
  Checks c;
  std::mt19937 rng(2024);
  const std::vector<int> widths{2, 3, 5, 8};
  auto random = [&] {
    std::vector<ValueMask> ms;
    for (int w : widths) ms.push_back(std::uniform_int_distribution<ValueMask>(1, (ValueMask{1} << w) - 1)(rng));
    return FeatureVector::from_masks(ms);
  };
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    FeatureVector a = random(), b = random(), d = random();
    bool ok = unify(a, b) == unify(b, a) && unify(a, a) == a;
    auto ab = unify(a, b), bd = unify(b, d);
    ok = ok && (ab ? unify(*ab, d) : std::nullopt) == (bd ? unify(a, *bd) : std::nullopt);
    violations += !ok;
  }
  c.expect(violations == 0, std::to_string(violations) + " algebra violations");

  // Every pair of vectors over small spaces: unification fails exactly when
  // no assignment satisfies both, and otherwise admits exactly the common
  // assignments.
  std::size_t pairs = 0, mismatches = 0;
  for (const auto& space : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {2, 3}, {3, 2}}) {
    std::vector<FeatureVector> all{FeatureVector::from_masks(std::vector<ValueMask>(space.size(), 0))};
    for (std::size_t f = 0; f < space.size(); ++f) {
      std::vector<FeatureVector> next;
      for (const auto& v : all) {
        for (ValueMask m = 0; m < (ValueMask{1} << space[f]); ++m) {
          FeatureVector w = v;
          w.set_mask(f, m);
          next.push_back(w);
        }
      }
      all = std::move(next);
    }
    for (const auto& a : all) {
      for (const auto& b : all) {
        ++pairs;
        auto sa = admitted(a, space), sb = admitted(b, space);
        std::set<std::vector<int>> both;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(both, both.begin()));
        auto u = unify(a, b);
        bool ok = both.empty() ? !u.has_value() : (u.has_value() && admitted(*u, space) == both);
        mismatches += !ok;
      }
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " unsatisfiability mismatches");
  c.note = "10000 random triples, " + std::to_string(pairs) + " exhaustive pairs";
  return c;
}

// --- 9 ----------------------------------------------------------------------

Checks criterion_performance() {
  Checks c;
  double worst_compile = 0;
  for (const auto& file : testing::fixture_files()) {
    auto start = Clock::now();
    Fixture f = load_fixture(file);
    worst_compile = std::max(worst_compile, seconds_since(start));
  }
  c.expect(worst_compile < 10.0, "compile took " + std::to_string(worst_compile) + " s");

  Fixture f = french_with_lexicon();
  DirectReference ref(f);
  std::set<std::string> corpus = ref.corpus();
  std::vector<std::string> words(corpus.begin(), corpus.end());
  for (auto& w : non_words(f.description, corpus, 200, 5)) words.push_back(w);

  std::size_t analysed = 0;
  auto start = Clock::now();
  double uncached = 0;
  while ((uncached = seconds_since(start)) < 0.5) {
    for (const auto& w : words) {
      f.m().analyze(w);
      ++analysed;
    }
  }
  double analysis_rate = static_cast<double>(analysed) / uncached;
  c.expect(analysis_rate >= 500, "analysis " + std::to_string(analysis_rate) + " words/s");

  std::vector<std::pair<std::string, CategorySpec>> requests;
  std::set<std::string> majors;
  for (const auto& t : f.c().morphotactics.trees) {
    if (!t.identity()) majors.insert(t.inflected.major);
  }
  for (const auto& citation : f.lexicon->citations()) {
    for (const auto& major : majors) requests.push_back({citation, CategorySpec{major, {}, {}}});
  }
  std::size_t generated = 0, forms = 0;
  start = Clock::now();
  double gen_time = 0;
  while ((gen_time = seconds_since(start)) < 0.5) {
    for (const auto& [root, spec] : requests) {
      forms += f.m().generate(root, spec).size();
      ++generated;
    }
  }
  double generation_rate = static_cast<double>(generated) / gen_time;
  c.expect(forms > 0, "generation produced nothing");
  c.expect(generation_rate >= 500, "generation " + std::to_string(generation_rate) + " requests/s");

  AnalysisCache cache(f.m());
  for (const auto& w : words) cache.analyze(w);
  start = Clock::now();
  for (const auto& w : words) f.m().analyze(w);
  double cold = seconds_since(start);
  start = Clock::now();
  for (int rep = 0; rep < 10; ++rep) {
    for (const auto& w : words) cache.analyze(w);
  }
  double warm = seconds_since(start) / 10;
  double speedup = cold / warm;
  c.expect(speedup >= 10, "cached speedup " + std::to_string(speedup));
  std::set<std::string> distinct(words.begin(), words.end());
  c.expect(cache.misses() == distinct.size(), "unexpected cache misses");

  std::ostringstream note;
  note.precision(0);
  note << std::fixed << "compile " << worst_compile * 1000 << " ms, analysis " << analysis_rate
       << " w/s, generation " << generation_rate << " w/s, cache x" << speedup;
  c.note = note.str();
  return c;
}

// --- 10 ---------------------------------------------------------------------

std::uint64_t analyses_hash(const Morphology& m, const std::vector<std::string>& words) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  const FeatureSpace& syn = m.compiled().syn;
  for (const auto& w : words) {
    mix(w);
    for (const auto& a : m.analyze(w)) {
      mix(a.root.citation);
      for (const auto& x : a.morphemes) mix(x);
      mix(render_category(a.major, a.category, syn));
      mix(std::to_string(a.pattern_id) + "/" + std::to_string(a.tree_id));
    }
  }
  return h;
}

Checks criterion_lexicon_independence() {
  Checks c;
  Fixture f = french_with_lexicon();
  DirectReference ref(f);
  std::set<std::string> corpus = ref.corpus();
  std::vector<std::string> words(corpus.begin(), corpus.end());
  for (auto& w : non_words(f.description, corpus, 300, 99)) words.push_back(w);

  const CompiledDescription* compiled = &f.c();
  std::uint64_t fingerprint = f.c().fingerprint;
  std::size_t patterns = f.c().patterns.patterns.size();
  std::uint64_t before = analyses_hash(f.m(), words);

  std::mt19937 rng(10000);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::vector<LexEntry> templates;
  for (const auto& citation : f.lexicon->citations()) {
    for (const auto& e : f.lexicon->lookup(citation)) templates.push_back(e);
  }
  std::vector<std::string> added;
  std::set<std::string> taken(corpus.begin(), corpus.end());
  while (added.size() < 10000) {
    std::string root = "zq";
    std::size_t len = 2 + rng() % 6;
    for (std::size_t i = 0; i < len; ++i) root += alphabet[rng() % alphabet.size()];
    if (!taken.insert(root).second) continue;
    LexEntry e = templates[rng() % templates.size()];
    e.citation = root;
    f.lexicon->add(e);
    added.push_back(root);
  }
  std::uint64_t after = analyses_hash(f.m(), words);
  c.expect(before == after, "analysis hash changed");
  c.expect(&f.m().compiled() == compiled && f.c().fingerprint == fingerprint &&
               f.c().patterns.patterns.size() == patterns,
           "compiled object changed");
  std::size_t reachable = 0;
  for (std::size_t i = 0; i < added.size(); i += 100) reachable += !f.m().analyze(added[i]).empty();
  c.expect(reachable == 100, "only " + std::to_string(reachable) + "/100 sampled synthetic roots analyse");
  std::ostringstream note;
  note << std::hex << "hash " << before << " before and after, " << std::dec << f.lexicon->size() << " entries";
  c.note = note.str();
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Checks()>>> criteria{
      {"chère analysis, generation and spell listing", criterion_chere},
      {"multi-letter change needs two rules", criterion_multi_letter},
      {"feature-controlled accent dropping", criterion_polish},
      {"inflection listing for cher", criterion_listing},
      {"patterns agree with direct analysis", criterion_oracle_equivalence},
      {"direct spelling agrees with exhaustive enumeration", criterion_micro},
      {"inflections round-trip through analysis", criterion_round_trip},
      {"feature unification properties", criterion_features},
      {"performance floors", criterion_performance},
      {"lexicon growth needs no recompilation", criterion_lexicon_independence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checks result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (result.ok() ? "PASS" : "FAIL") << " - " << criteria[i].first;
    if (!result.note.empty()) std::cout << " (" << result.note << ")";
    std::cout << '\n';
    for (const auto& f : result.failures()) std::cout << "    " << f << '\n';
    std::cout.flush();
    failed += !result.ok();
  }
  return failed == 0 ? 0 : 1;
}
