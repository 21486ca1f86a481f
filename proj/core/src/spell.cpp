#include "morphc/spell.hpp"

#include <algorithm>
#include <stdexcept>

namespace morphc {

bool CompiledRule::in_class(int digit, char32_t c) const {
  const auto& members = classes[static_cast<std::size_t>(digit)];
  return std::binary_search(members.begin(), members.end(), c);
}

RuleSet RuleSet::compile(const Description& d, const FeatureSpace& orth) {
  RuleSet rs;
  rs.orth_ = orth;
  for (const auto& r : d.spell_rules) {
    CompiledRule c;
    c.name = r.name;
    c.op = r.op;
    c.surface_target = r.surface.target;
    c.surface_right = r.surface.right;
    c.surface_left_rev.assign(r.surface.left.rbegin(), r.surface.left.rend());
    c.lexical_target = r.lexical.target;
    c.lexical_right = r.lexical.right;
    c.lexical_left_rev.assign(r.lexical.left.rbegin(), r.lexical.left.rend());
    for (const auto& [digit, cls] : r.classes) {
      const CharClassDef* def = d.find_class(cls);
      if (!def) throw std::invalid_argument("rule " + r.name + " uses undeclared class " + cls);
      c.classes[static_cast<std::size_t>(digit)].assign(def->members.begin(), def->members.end());
    }
    c.features = compile_constraints(r.features, orth);
    c.is_default = r.name == kDefaultRule;
    if (c.is_default) rs.default_ = rs.rules_.size();
    rs.index_.emplace(c.name, rs.rules_.size());
    rs.rules_.push_back(std::move(c));
  }
  if (const CharClassDef* b = d.find_class(kBoundaryClass)) rs.boundary_.assign(b->members.begin(), b->members.end());
  return rs;
}

std::optional<std::size_t> RuleSet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RuleSet::is_boundary(char32_t c) const { return std::binary_search(boundary_.begin(), boundary_.end(), c); }

Text Partitioning::surface() const {
  Text out;
  for (const auto& p : parts) out += p.surface;
  return out;
}

Text Partitioning::lexical() const {
  Text out;
  for (const auto& p : parts) out += p.lexical;
  return out;
}

namespace {

bool match_sym(const CompiledRule& r, const CharSpec& s, char32_t c, ClassBindings& b) {
  if (!s.is_class()) return s.literal == c;
  char32_t& slot = b[static_cast<std::size_t>(s.digit)];
  if (slot) return slot == c;
  if (!r.in_class(s.digit, c)) return false;
  slot = c;
  return true;
}

// `spec` against text[pos, pos + spec.size()).
bool match_after(const CompiledRule& r, const SpecString& spec, TextView text, std::size_t pos, ClassBindings& b) {
  if (pos > text.size() || spec.size() > text.size() - pos) return false;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (!match_sym(r, spec[k], text[pos + k], b)) return false;
  }
  return true;
}

// Reversed `rev` against the characters ending at `end`, innermost first.
bool match_before(const CompiledRule& r, const SpecString& rev, TextView text, std::size_t end, ClassBindings& b) {
  if (rev.size() > end) return false;
  for (std::size_t k = 0; k < rev.size(); ++k) {
    if (!match_sym(r, rev[k], text[end - 1 - k], b)) return false;
  }
  return true;
}

bool match_exact(const CompiledRule& r, const SpecString& spec, TextView text, std::size_t begin, std::size_t end,
                 ClassBindings& b) {
  return end - begin == spec.size() && match_after(r, spec, text, begin, b);
}

std::vector<Site> sites_of(const Partitioning& p) {
  std::vector<Site> sites;
  sites.reserve(p.parts.size());
  Site s;
  for (const auto& part : p.parts) {
    s.surface_begin = s.surface_end;
    s.lexical_begin = s.lexical_end;
    s.surface_end += part.surface.size();
    s.lexical_end += part.lexical.size();
    sites.push_back(s);
  }
  return sites;
}

}  // namespace

std::optional<License> licenses(const CompiledRule& rule, const Site& at, TextView surface, TextView lexical,
                                const FeatureVector& orth) {
  License lic;
  ClassBindings& b = lic.bindings;
  if (at.lexical_end <= at.lexical_begin) return std::nullopt;
  if (!match_exact(rule, rule.surface_target, surface, at.surface_begin, at.surface_end, b)) return std::nullopt;
  if (!match_exact(rule, rule.lexical_target, lexical, at.lexical_begin, at.lexical_end, b)) return std::nullopt;
  if (!match_before(rule, rule.surface_left_rev, surface, at.surface_begin, b)) return std::nullopt;
  if (!match_after(rule, rule.surface_right, surface, at.surface_end, b)) return std::nullopt;
  if (!match_before(rule, rule.lexical_left_rev, lexical, at.lexical_begin, b)) return std::nullopt;
  if (!match_after(rule, rule.lexical_right, lexical, at.lexical_end, b)) return std::nullopt;
  auto u = unify(orth, rule.features);
  if (!u) return std::nullopt;
  lic.constraint = std::move(*u);
  return lic;
}

bool breaks(const CompiledRule& rule, const Site& at, TextView surface, TextView lexical, const FeatureVector& orth) {
  if (rule.op != RuleOp::obligatory) return false;
  ClassBindings b{};
  if (!match_exact(rule, rule.lexical_target, lexical, at.lexical_begin, at.lexical_end, b)) return false;
  if (!match_before(rule, rule.lexical_left_rev, lexical, at.lexical_begin, b)) return false;
  if (!match_after(rule, rule.lexical_right, lexical, at.lexical_end, b)) return false;
  if (!match_before(rule, rule.surface_left_rev, surface, at.surface_begin, b)) return false;
  if (!match_after(rule, rule.surface_right, surface, at.surface_end, b)) return false;
  if (!unify(orth, rule.features)) return false;
  // Every digit is forced by the characters it met, so the surface target
  // either matches under these bindings or under none.
  return !match_exact(rule, rule.surface_target, surface, at.surface_begin, at.surface_end, b);
}

namespace {

// Own-rule licensing of every partition; on success `total` is orth unified
// with every applied rule's features.
SpellVerdict license_all(const Partitioning& p, const RuleSet& rules, const FeatureVector& orth,
                         const std::vector<Site>& sites, TextView surface, TextView lexical, FeatureVector& total) {
  total = orth;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    auto idx = rules.find(p.parts[i].rule);
    std::optional<License> lic;
    if (idx) lic = licenses(rules.rule(*idx), sites[i], surface, lexical, total);
    if (!lic) return {SpellVerdict::Outcome::unlicensed, p.parts[i].rule, i};
    total = std::move(lic->constraint);
  }
  return {};
}

}  // namespace

std::vector<std::pair<std::size_t, std::string>> find_breaks(const Partitioning& p, const RuleSet& rules,
                                                             const FeatureVector& orth) {
  auto sites = sites_of(p);
  Text surface = p.surface();
  Text lexical = p.lexical();
  FeatureVector total = orth;
  // A hand-built partitioning may carry no orth of its own.
  if (p.orth.size() == orth.size()) {
    if (auto u = unify(orth, p.orth)) total = std::move(*u);
  }
  std::vector<std::pair<std::size_t, std::string>> out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (const auto& r : rules.rules()) {
      if (breaks(r, sites[i], surface, lexical, total)) out.emplace_back(i, r.name);
    }
  }
  return out;
}

bool bind_partitioning(Partitioning& p, const RuleSet& rules) {
  auto sites = sites_of(p);
  Text surface = p.surface();
  Text lexical = p.lexical();
  FeatureVector total = FeatureVector::top(rules.orth_space());
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    auto idx = rules.find(p.parts[i].rule);
    if (!idx) return false;
    const CompiledRule& r = rules.rule(*idx);
    auto lic = licenses(r, sites[i], surface, lexical, FeatureVector::top(rules.orth_space()));
    if (!lic) return false;
    p.parts[i].bindings = lic->bindings;
    auto u = unify(total, r.features);
    if (!u) return false;
    total = std::move(*u);
  }
  p.orth = std::move(total);
  return true;
}

SpellVerdict check_partitioning(const Partitioning& p, const RuleSet& rules, const FeatureVector& orth) {
  auto sites = sites_of(p);
  Text surface = p.surface();
  Text lexical = p.lexical();
  FeatureVector total;
  SpellVerdict v = license_all(p, rules, orth, sites, surface, lexical, total);
  if (!v.ok()) return v;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (const auto& r : rules.rules()) {
      if (breaks(r, sites[i], surface, lexical, total)) return {SpellVerdict::Outcome::broken, r.name, i};
    }
  }
  return {};
}

namespace {

struct Step {
  std::size_t rule;
  Site site;
  ClassBindings bindings;
};

Partitioning assemble(const std::vector<Step>& steps, const RuleSet& rules, TextView surface, TextView lexical) {
  Partitioning p;
  p.orth = FeatureVector::top(rules.orth_space());
  for (const auto& s : steps) {
    const CompiledRule& r = rules.rule(s.rule);
    p.parts.push_back({Text(surface.substr(s.site.surface_begin, s.site.surface_end - s.site.surface_begin)),
                       Text(lexical.substr(s.site.lexical_begin, s.site.lexical_end - s.site.lexical_begin)), r.name,
                       s.bindings});
    if (auto u = unify(p.orth, r.features)) p.orth = std::move(*u);
  }
  return p;
}

// Calls `emit` once per instantiation of `spec` under `b`, binding free
// digits to each member of their class in turn.
template <typename Emit>
void instantiate(const CompiledRule& r, const SpecString& spec, std::size_t k, ClassBindings& b, Text& out,
                 Emit&& emit) {
  if (k == spec.size()) {
    emit();
    return;
  }
  const CharSpec& s = spec[k];
  if (!s.is_class()) {
    out.push_back(s.literal);
    instantiate(r, spec, k + 1, b, out, emit);
    out.pop_back();
    return;
  }
  auto d = static_cast<std::size_t>(s.digit);
  if (b[d]) {
    out.push_back(b[d]);
    instantiate(r, spec, k + 1, b, out, emit);
    out.pop_back();
    return;
  }
  for (char32_t c : r.classes[d]) {
    b[d] = c;
    out.push_back(c);
    instantiate(r, spec, k + 1, b, out, emit);
    out.pop_back();
  }
  b[d] = 0;
}

class Search {
 public:
  Search(const RuleSet& rules, const FeatureVector& orth) : rules_(rules), orth_(orth) {}

  std::vector<SpellResult> generate(TextView lexical, bool keep_broken) {
    fixed_ = lexical;
    generating_ = true;
    keep_broken_ = keep_broken;
    built_.clear();
    gen(0, orth_);
    return finish();
  }

  std::vector<SpellResult> analyze(TextView surface, SearchLimits limits) {
    fixed_ = surface;
    limits_ = limits;
    if (limits_.max_lexical_length == 0) limits_.max_lexical_length = 2 * surface.size() + 8;
    built_.clear();
    ana(0, orth_, 0);
    return finish();
  }

 private:
  // Generation: fixed_ is lexical, built_ is the surface so far.
  void gen(std::size_t lpos, const FeatureVector& acc) {
    if (lpos == fixed_.size()) {
      record(built_, fixed_);
      return;
    }
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      const CompiledRule& r = rules_.rule(ri);
      ClassBindings b{};
      std::size_t lend = lpos + r.lexical_target.size();
      if (r.lexical_target.empty() || !match_after(r, r.lexical_target, fixed_, lpos, b)) continue;
      if (!match_before(r, r.lexical_left_rev, fixed_, lpos, b)) continue;
      if (!match_after(r, r.lexical_right, fixed_, lend, b)) continue;
      if (!match_before(r, r.surface_left_rev, built_, built_.size(), b)) continue;
      auto next = unify(acc, r.features);
      if (!next) continue;
      std::size_t sbegin = built_.size();
      instantiate(r, r.surface_target, 0, b, built_, [&] {
        steps_.push_back({ri, {sbegin, built_.size(), lpos, lend}, b});
        gen(lend, *next);
        steps_.pop_back();
      });
    }
  }

  // Analysis: fixed_ is surface, built_ is the lexical string so far.
  void ana(std::size_t spos, const FeatureVector& acc, std::size_t empty_run) {
    if (spos == fixed_.size()) record(fixed_, built_);
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      const CompiledRule& r = rules_.rule(ri);
      if (r.lexical_target.empty()) continue;
      std::size_t send = spos + r.surface_target.size();
      std::size_t run = r.surface_target.empty() ? empty_run + 1 : 0;
      if (run > limits_.max_empty_run) continue;
      if (built_.size() + r.lexical_target.size() > limits_.max_lexical_length) continue;
      ClassBindings b{};
      if (!match_after(r, r.surface_target, fixed_, spos, b)) continue;
      if (!match_before(r, r.surface_left_rev, fixed_, spos, b)) continue;
      if (!match_after(r, r.surface_right, fixed_, send, b)) continue;
      if (!match_before(r, r.lexical_left_rev, built_, built_.size(), b)) continue;
      auto next = unify(acc, r.features);
      if (!next) continue;
      std::size_t lbegin = built_.size();
      instantiate(r, r.lexical_target, 0, b, built_, [&] {
        steps_.push_back({ri, {spos, send, lbegin, built_.size()}, b});
        ana(send, *next, run);
        steps_.pop_back();
      });
    }
  }

  void record(TextView surface, TextView lexical) {
    Partitioning p = assemble(steps_, rules_, surface, lexical);
    SpellVerdict v = check_partitioning(p, rules_, orth_);
    if (v.outcome == SpellVerdict::Outcome::unlicensed) return;
    if (v.outcome == SpellVerdict::Outcome::broken && !keep_broken_) return;
    results_.push_back({Text(generating_ ? surface : lexical), std::move(p), std::move(v)});
  }

  std::vector<SpellResult> finish() {
    std::sort(results_.begin(), results_.end());
    results_.erase(std::unique(results_.begin(), results_.end()), results_.end());
    return std::move(results_);
  }

  const RuleSet& rules_;
  const FeatureVector& orth_;
  TextView fixed_;
  Text built_;
  std::vector<Step> steps_;
  std::vector<SpellResult> results_;
  SearchLimits limits_;
  bool generating_ = false;
  bool keep_broken_ = false;
};

}  // namespace

std::vector<SpellResult> analyze_direct(TextView surface, const RuleSet& rules, const FeatureVector& orth,
                                        SearchLimits limits) {
  return Search(rules, orth).analyze(surface, limits);
}

std::vector<SpellResult> generate_direct(TextView lexical, const RuleSet& rules, const FeatureVector& orth,
                                         bool keep_broken) {
  return Search(rules, orth).generate(lexical, keep_broken);
}

}  // namespace morphc
