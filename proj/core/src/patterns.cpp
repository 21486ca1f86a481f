#include "morphc/patterns.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

namespace morphc {

bool Domain::contains(char32_t c) const { return any || std::binary_search(chars.begin(), chars.end(), c); }

void SpellingPattern::derive(std::size_t before_root, std::size_t after_root) {
  surface.clear();
  lexical.clear();
  for (const auto& p : parts) {
    surface.insert(surface.end(), p.surface.begin(), p.surface.end());
    lexical.insert(lexical.end(), p.lexical.begin(), p.lexical.end());
  }
  root_begin = before_root;
  root_end = lexical.size() - after_root;
  surface_prefix.clear();
  surface_suffix.clear();
  for (const auto& s : surface) {
    if (s.kind != PatternSym::Kind::chr) break;
    surface_prefix.push_back(s.c);
  }
  for (auto it = surface.rbegin(); it != surface.rend(); ++it) {
    if (it->kind != PatternSym::Kind::chr) break;
    surface_suffix.insert(surface_suffix.begin(), it->c);
  }
  // A surface of fixed characters only has no middle; the two runs overlap.
  if (surface_prefix.size() == surface.size()) surface_suffix.clear();
}

std::vector<std::string> SpellingPattern::uses() const {
  std::vector<std::string> out;
  for (const auto& p : parts) out.push_back(p.middle ? p.rule + "*" : p.rule);
  return out;
}

std::size_t TextPairHash::operator()(const std::pair<Text, Text>& k) const noexcept {
  std::size_t h1 = std::hash<Text>{}(k.first);
  std::size_t h2 = std::hash<Text>{}(k.second);
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

void PatternSet::build_indexes(std::size_t sequence_count) {
  analysis_index.clear();
  generation_index.assign(sequence_count, {});
  std::set<std::size_t> pre, suf;
  for (const auto& p : patterns) {
    analysis_index[{p.surface_prefix, p.surface_suffix}].push_back(p.id);
    pre.insert(p.surface_prefix.size());
    suf.insert(p.surface_suffix.size());
    generation_index[static_cast<std::size_t>(p.sequence)].push_back(p.id);
  }
  prefix_lengths.assign(pre.begin(), pre.end());
  suffix_lengths.assign(suf.begin(), suf.end());
}

namespace {

bool mentions_boundary(const CompiledRule& r, const CharSpec& s, const RuleSet& rules) {
  if (!s.is_class()) return rules.is_boundary(s.literal);
  const auto& members = r.classes[static_cast<std::size_t>(s.digit)];
  return std::any_of(members.begin(), members.end(), [&](char32_t c) { return rules.is_boundary(c); });
}

}  // namespace

std::set<std::pair<int, int>> template_sizes(const RuleSet& rules) {
  std::set<int> ms{0}, ns{0};
  for (const auto& r : rules.rules()) {
    int k = static_cast<int>(r.lexical_target.size());
    bool target_boundary = std::any_of(r.lexical_target.begin(), r.lexical_target.end(),
                                       [&](const CharSpec& s) { return mentions_boundary(r, s, rules); });
    if (target_boundary) continue;
    for (std::size_t i = 0; i < r.lexical_right.size(); ++i) {
      if (mentions_boundary(r, r.lexical_right[i], rules)) {
        ns.insert(k + static_cast<int>(i));
        break;
      }
    }
    for (std::size_t i = 0; i < r.lexical_left_rev.size(); ++i) {
      if (mentions_boundary(r, r.lexical_left_rev[i], rules)) {
        ms.insert(k + static_cast<int>(i));
        break;
      }
    }
  }
  std::set<std::pair<int, int>> out;
  for (int m : ms) {
    for (int n : ns) out.emplace(m, n);
  }
  return out;
}

namespace {

using Sym = PatternSym;
using SymBindings = std::array<std::optional<Sym>, 10>;

class VarStore {
 public:
  explicit VarStore(const RuleSet& rules) : rules_(&rules) {}

  int fresh(Domain d) {
    parent_.push_back(static_cast<int>(parent_.size()));
    domains_.push_back(std::move(d));
    return parent_.back();
  }

  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }

  const Domain& domain(int v) const { return domains_[static_cast<std::size_t>(find(v))]; }

  bool restrict(int v, const Domain& d) {
    Domain& dom = domains_[static_cast<std::size_t>(find(v))];
    dom = intersect(dom, d);
    return dom.any || !dom.chars.empty();
  }

  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    return restrict(a, domains_[static_cast<std::size_t>(b)]);
  }

  std::size_t size() const { return parent_.size(); }

 private:
  Domain intersect(const Domain& a, const Domain& b) const {
    if (a.any && b.any) return a;
    Domain out{false, {}};
    if (a.any || b.any) {
      for (char32_t c : a.any ? b.chars : a.chars) {
        if (!rules_->is_boundary(c)) out.chars.push_back(c);
      }
      return out;
    }
    std::set_intersection(a.chars.begin(), a.chars.end(), b.chars.begin(), b.chars.end(),
                          std::back_inserter(out.chars));
    return out;
  }

  const RuleSet* rules_;
  std::vector<int> parent_;
  std::vector<Domain> domains_;
};

Domain class_domain(const CompiledRule& r, int digit) { return {false, r.classes[static_cast<std::size_t>(digit)]}; }

bool unify_syms(const Sym& a, const Sym& b, VarStore& vs) {
  if (a.kind == Sym::Kind::chr && b.kind == Sym::Kind::chr) return a.c == b.c;
  if (a.kind == Sym::Kind::var && b.kind == Sym::Kind::var) return vs.merge(a.var, b.var);
  const Sym& v = a.kind == Sym::Kind::var ? a : b;
  const Sym& c = a.kind == Sym::Kind::var ? b : a;
  return vs.restrict(v.var, {false, {c.c}});
}

// Unifies a pattern symbol (never the middle) with one rule character spec.
bool unify_spec(const Sym& a, const CharSpec& s, const CompiledRule& r, SymBindings& b, VarStore& vs) {
  if (!s.is_class()) return unify_syms(a, Sym::chr_(s.literal), vs);
  auto& slot = b[static_cast<std::size_t>(s.digit)];
  if (slot) return unify_syms(a, *slot, vs);
  if (a.kind == Sym::Kind::chr) {
    if (!r.in_class(s.digit, a.c)) return false;
  } else if (!vs.restrict(a.var, class_domain(r, s.digit))) {
    return false;
  }
  slot = a;
  return true;
}

// Contexts reaching the middle are accepted without looking further.
bool unify_after(const SpecString& spec, const PatternString& seq, std::size_t pos, const CompiledRule& r,
                 SymBindings& b, VarStore& vs) {
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (pos + k >= seq.size()) return false;
    const Sym& a = seq[pos + k];
    if (a.kind == Sym::Kind::middle) return true;
    if (!unify_spec(a, spec[k], r, b, vs)) return false;
  }
  return true;
}

bool unify_before(const SpecString& rev, const PatternString& seq, std::size_t end, const CompiledRule& r,
                  SymBindings& b, VarStore& vs) {
  for (std::size_t k = 0; k < rev.size(); ++k) {
    if (k >= end) return false;
    const Sym& a = seq[end - 1 - k];
    if (a.kind == Sym::Kind::middle) return true;
    if (!unify_spec(a, rev[k], r, b, vs)) return false;
  }
  return true;
}

bool unify_target(const SpecString& spec, const PatternString& seq, std::size_t pos, const CompiledRule& r,
                  SymBindings& b, VarStore& vs) {
  if (pos + spec.size() > seq.size()) return false;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Sym& a = seq[pos + k];
    if (a.kind == Sym::Kind::middle || !unify_spec(a, spec[k], r, b, vs)) return false;
  }
  return true;
}

// --- three-valued matching over a finished pattern ------------------------

enum class Tri { no, maybe, yes };

Tri meet(Tri a, Tri b) { return std::min(a, b); }

class TriMatcher {
 public:
  TriMatcher(const CompiledRule& r, const std::vector<Domain>& doms) : r_(r), doms_(doms) {}

  Tri after(const SpecString& spec, const PatternString& seq, std::size_t pos) {
    Tri t = Tri::yes;
    for (std::size_t k = 0; k < spec.size() && t != Tri::no; ++k) {
      if (pos + k >= seq.size()) return Tri::no;
      if (seq[pos + k].kind == Sym::Kind::middle) return meet(t, Tri::maybe);
      t = meet(t, sym(seq[pos + k], spec[k]));
    }
    return t;
  }

  Tri before(const SpecString& rev, const PatternString& seq, std::size_t end) {
    Tri t = Tri::yes;
    for (std::size_t k = 0; k < rev.size() && t != Tri::no; ++k) {
      if (k >= end) return Tri::no;
      if (seq[end - 1 - k].kind == Sym::Kind::middle) return meet(t, Tri::maybe);
      t = meet(t, sym(seq[end - 1 - k], rev[k]));
    }
    return t;
  }

  Tri exact(const SpecString& spec, const PatternString& seq, std::size_t begin, std::size_t end) {
    if (end - begin != spec.size()) return Tri::no;
    return after(spec, seq, begin);
  }

 private:
  const Domain& dom(const Sym& s) const { return doms_[static_cast<std::size_t>(s.var)]; }

  Tri literal(const Sym& a, char32_t c) const {
    if (a.kind == Sym::Kind::chr) return a.c == c ? Tri::yes : Tri::no;
    const Domain& d = dom(a);
    if (!d.contains(c)) return Tri::no;
    return !d.any && d.chars.size() == 1 ? Tri::yes : Tri::maybe;
  }

  Tri same(const Sym& a, const Sym& b) const {
    if (a.kind == Sym::Kind::chr) return literal(b, a.c);
    if (b.kind == Sym::Kind::chr) return literal(a, b.c);
    if (a.var == b.var) return Tri::yes;
    const Domain& da = dom(a);
    const Domain& db = dom(b);
    if (da.any || db.any) return Tri::maybe;
    std::vector<char32_t> common;
    std::set_intersection(da.chars.begin(), da.chars.end(), db.chars.begin(), db.chars.end(),
                          std::back_inserter(common));
    return common.empty() ? Tri::no : Tri::maybe;
  }

  Tri sym(const Sym& a, const CharSpec& s) {
    if (!s.is_class()) return literal(a, s.literal);
    auto& slot = bindings_[static_cast<std::size_t>(s.digit)];
    if (slot) return same(a, *slot);
    const auto& cls = r_.classes[static_cast<std::size_t>(s.digit)];
    slot = a;
    if (a.kind == Sym::Kind::chr) return r_.in_class(s.digit, a.c) ? Tri::yes : Tri::no;
    const Domain& d = dom(a);
    if (d.any) return Tri::maybe;
    bool all = std::includes(cls.begin(), cls.end(), d.chars.begin(), d.chars.end());
    if (all) return Tri::yes;
    bool some = std::any_of(d.chars.begin(), d.chars.end(), [&](char32_t c) { return r_.in_class(s.digit, c); });
    return some ? Tri::maybe : Tri::no;
  }

  const CompiledRule& r_;
  const std::vector<Domain>& doms_;
  SymBindings bindings_;
};

struct Step {
  std::size_t rule;
  bool middle;
  std::size_t sb, se, lb, le;
  SymBindings bindings;
};

class SequenceCompiler {
 public:
  SequenceCompiler(const RuleSet& rules, const AffixSequence& seq, int m, int n, std::vector<SpellingPattern>& out,
                   std::set<std::pair<std::vector<PatternPart>, std::vector<Domain>>>& seen)
      : rules_(rules), seq_(seq), m_(m), n_(n), out_(out), seen_(seen), vars_(rules) {}

  void run() {
    char32_t boundary = rules_.boundary_chars().empty() ? U'+' : rules_.boundary_chars().front();
    for (const auto& p : seq_.prefixes) {
      for (char32_t c : decode_utf8(p)) lexical_.push_back(Sym::chr_(c));
      lexical_.push_back(Sym::chr_(boundary));
    }
    before_root_ = lexical_.size();
    for (int i = 0; i < m_; ++i) lexical_.push_back(Sym::var_(vars_.fresh({})));
    middle_ = lexical_.size();
    lexical_.push_back(Sym::middle());
    for (int i = 0; i < n_; ++i) lexical_.push_back(Sym::var_(vars_.fresh({})));
    lexical_.push_back(Sym::chr_(boundary));
    std::size_t after_start = lexical_.size() - 1;
    for (const auto& s : seq_.suffixes) {
      for (char32_t c : decode_utf8(s)) lexical_.push_back(Sym::chr_(c));
      lexical_.push_back(Sym::chr_(boundary));
    }
    after_root_ = lexical_.size() - after_start;
    gen(0, seq_.orth, vars_, false);
  }

 private:
  void gen(std::size_t p, const FeatureVector& acc, const VarStore& vs, bool need_nondefault) {
    if (p == lexical_.size()) {
      finish(acc, vs);
      return;
    }
    if (p == middle_) {
      if (m_ > 0 && rules_.rule(steps_.back().rule).is_default) return;
      if (!rules_.default_rule()) return;
      std::size_t sb = surface_.size();
      surface_.push_back(Sym::middle());
      steps_.push_back({*rules_.default_rule(), true, sb, sb + 1, p, p + 1, {}});
      gen(p + 1, acc, vs, n_ > 0);
      steps_.pop_back();
      surface_.pop_back();
      return;
    }
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      const CompiledRule& r = rules_.rule(ri);
      if (need_nondefault && r.is_default) continue;
      if (r.lexical_target.empty()) continue;
      VarStore v = vs;
      SymBindings b{};
      std::size_t le = p + r.lexical_target.size();
      if (!unify_target(r.lexical_target, lexical_, p, r, b, v)) continue;
      if (!unify_before(r.lexical_left_rev, lexical_, p, r, b, v)) continue;
      if (!unify_after(r.lexical_right, lexical_, le, r, b, v)) continue;
      if (!unify_before(r.surface_left_rev, surface_, surface_.size(), r, b, v)) continue;
      auto next = unify(acc, r.features);
      if (!next) continue;
      std::size_t sb = surface_.size();
      for (const auto& s : r.surface_target) {
        if (!s.is_class()) {
          surface_.push_back(Sym::chr_(s.literal));
          continue;
        }
        auto& slot = b[static_cast<std::size_t>(s.digit)];
        if (!slot) slot = Sym::var_(v.fresh(class_domain(r, s.digit)));
        surface_.push_back(*slot);
      }
      steps_.push_back({ri, false, sb, surface_.size(), p, le, b});
      gen(le, *next, v, false);
      steps_.pop_back();
      surface_.resize(sb);
    }
  }

  void finish(const FeatureVector& acc, VarStore vs) {
    for (auto s : steps_) {
      if (s.middle) continue;
      const CompiledRule& r = rules_.rule(s.rule);
      if (!unify_after(r.surface_right, surface_, s.se, r, s.bindings, vs)) return;
    }
    // Renumber variables by first occurrence, lexical side first.
    std::vector<int> renumber(vs.size(), -1);
    std::vector<Domain> doms;
    auto canon = [&](Sym s) {
      if (s.kind != Sym::Kind::var) return s;
      int root = vs.find(s.var);
      auto& slot = renumber[static_cast<std::size_t>(root)];
      if (slot < 0) {
        slot = static_cast<int>(doms.size());
        doms.push_back(vs.domain(root));
      }
      return Sym::var_(slot);
    };
    PatternString lex, surf;
    for (const auto& s : lexical_) lex.push_back(canon(s));
    for (const auto& s : surface_) surf.push_back(canon(s));
    SpellingPattern pat;
    for (const auto& s : steps_) {
      PatternPart part;
      part.rule = rules_.rule(s.rule).name;
      part.middle = s.middle;
      part.surface.assign(surf.begin() + static_cast<std::ptrdiff_t>(s.sb), surf.begin() + static_cast<std::ptrdiff_t>(s.se));
      part.lexical.assign(lex.begin() + static_cast<std::ptrdiff_t>(s.lb), lex.begin() + static_cast<std::ptrdiff_t>(s.le));
      pat.parts.push_back(std::move(part));
    }
    for (const auto& s : steps_) {
      for (const auto& r : rules_.rules()) {
        if (r.op != RuleOp::obligatory) continue;
        switch (s.middle ? middle_status(r, acc) : break_status(r, s, lex, surf, doms, acc)) {
          case Tri::yes:
            return;
          case Tri::maybe:
            if (std::find(pat.deferred.begin(), pat.deferred.end(), r.name) == pat.deferred.end()) {
              pat.deferred.push_back(r.name);
            }
            break;
          case Tri::no:
            break;
        }
      }
    }
    if (!seen_.emplace(pat.parts, doms).second) return;
    pat.id = static_cast<int>(out_.size());
    pat.sequence = seq_.id;
    pat.m = m_;
    pat.n = n_;
    pat.vars = std::move(doms);
    pat.orth = acc;
    pat.derive(before_root_, after_root_);
    out_.push_back(std::move(pat));
  }

  // The middle copies root characters unseen at compile time, so any rule
  // that could fire on a root character there is left to the run time check.
  Tri middle_status(const CompiledRule& r, const FeatureVector& acc) const {
    if (!unify(acc, r.features)) return Tri::no;
    bool literal_boundary = std::any_of(r.lexical_target.begin(), r.lexical_target.end(), [&](const CharSpec& c) {
      return !c.is_class() && rules_.is_boundary(c.literal);
    });
    return literal_boundary ? Tri::no : Tri::maybe;
  }

  // yes: the partition breaks `r` whatever the root; maybe: it might,
  // depending on the root's characters or orth features.
  Tri break_status(const CompiledRule& r, const Step& s, const PatternString& lex, const PatternString& surf,
                   const std::vector<Domain>& doms, const FeatureVector& acc) const {
    if (!unify(acc, r.features)) return Tri::no;
    TriMatcher t(r, doms);
    Tri cond = t.exact(r.lexical_target, lex, s.lb, s.le);
    if (cond != Tri::no) cond = meet(cond, t.before(r.lexical_left_rev, lex, s.lb));
    if (cond != Tri::no) cond = meet(cond, t.after(r.lexical_right, lex, s.le));
    if (cond != Tri::no) cond = meet(cond, t.before(r.surface_left_rev, surf, s.sb));
    if (cond != Tri::no) cond = meet(cond, t.after(r.surface_right, surf, s.se));
    if (cond == Tri::no) return Tri::no;
    Tri surface_match = t.exact(r.surface_target, surf, s.sb, s.se);
    if (surface_match == Tri::yes) return Tri::no;
    if (cond == Tri::yes && surface_match == Tri::no && acc.implies(r.features)) return Tri::yes;
    return Tri::maybe;
  }

  const RuleSet& rules_;
  const AffixSequence& seq_;
  int m_, n_;
  std::vector<SpellingPattern>& out_;
  std::set<std::pair<std::vector<PatternPart>, std::vector<Domain>>>& seen_;
  VarStore vars_;
  PatternString lexical_;
  PatternString surface_;
  std::vector<Step> steps_;
  std::size_t middle_ = 0;
  std::size_t before_root_ = 0;
  std::size_t after_root_ = 0;
};

}  // namespace

PatternSet compile_patterns(const Description& d, const RuleSet& rules, const Morphotactics& mt,
                            PatternOptions options) {
  PatternSet set;
  auto sizes = template_sizes(rules);
  if (options.extra_m || options.extra_n) {
    std::set<std::pair<int, int>> grown;
    for (auto [m, n] : sizes) {
      for (int dm = 0; dm <= options.extra_m; ++dm) {
        for (int dn = 0; dn <= options.extra_n; ++dn) grown.emplace(m + dm, n + dn);
      }
    }
    sizes = std::move(grown);
  }
  if (!rules.default_rule()) {
    set.diagnostics.push_back({Severity::error, {}, "no default spelling rule; spelling patterns need one"});
  }
  for (const auto& seq : mt.sequences) {
    if (seq.pseudo) continue;
    std::size_t before = set.patterns.size();
    std::set<std::pair<std::vector<PatternPart>, std::vector<Domain>>> seen;
    for (auto [m, n] : sizes) SequenceCompiler(rules, seq, m, n, set.patterns, seen).run();
    if (set.patterns.size() == before) {
      SourceLoc at = d.productions.empty() ? SourceLoc{} : d.productions.front().loc;
      set.diagnostics.push_back({Severity::warning, at, "affix sequence " + seq.render() + " has no spelling realisation"});
    }
  }
  set.build_indexes(mt.sequences.size());
  return set;
}

}  // namespace morphc
