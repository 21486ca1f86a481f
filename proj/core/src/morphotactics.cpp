#include "morphc/morphotactics.hpp"

#include <map>
#include <set>

namespace morphc {

const std::string& ProductionTree::top_rule(const Description& d) const {
  static const std::string none;
  return steps.empty() ? none : d.productions[steps.front().rule].name;
}

std::string ProductionTree::render(const Description& d) const {
  std::string inner = "*";
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::string out = d.productions[it->rule].name + "=>[";
    for (std::size_t i = 0; i < it->morphemes.size(); ++i) {
      if (i) out += ',';
      out += it->morphemes[i].empty() ? inner : it->morphemes[i];
    }
    inner = out + ']';
  }
  return inner;
}

std::string AffixSequence::render() const {
  std::string out;
  for (const auto& p : prefixes) out += p + '+';
  out += '*';
  for (const auto& s : suffixes) out += '+' + s;
  return out;
}

std::vector<std::string> AffixSequence::morphemes(const std::string& root) const {
  std::vector<std::string> out = prefixes;
  out.push_back(root);
  out.insert(out.end(), suffixes.begin(), suffixes.end());
  return out;
}

namespace {

struct State {
  Bindings bindings;
  CompiledCategory inflected;
  CompiledCategory open;  // root daughter of the innermost step
  std::vector<TreeStep> steps;
  std::vector<std::string> prefixes, suffixes;
};

class Enumerator {
 public:
  Enumerator(const Description& d, const FeatureSpace& syn, const FeatureSpace& orth, int depth)
      : d_(d), syn_(syn), orth_(orth), depth_(depth), affix_cats_(affix_categories(d)) {}

  Morphotactics run() {
    ProductionTree identity;
    identity.id = 0;
    add_tree(std::move(identity));
    if (depth_ > 0) {
      State start;
      for (std::size_t r = 0; r < d_.productions.size(); ++r) apply(start, r, true);
    } else if (!d_.productions.empty()) {
      truncated(d_.productions.front().name);
    }
    return std::move(out_);
  }

 private:
  void truncated(const std::string& rule) {
    if (warned_) return;
    warned_ = true;
    out_.diagnostics.push_back({Severity::warning, d_.productions.empty() ? SourceLoc{} : d_.productions.front().loc,
                                "depth bound " + std::to_string(depth_) + " cut off derivations; production rule " +
                                    rule + " could apply further"});
  }

  // Applies rule `r` below `s` (or as the outermost rule when `top`).
  void apply(const State& s, std::size_t r, bool top) {
    const ProductionRule& rule = d_.productions[r];
    auto root_index = root_daughter(rule, affix_cats_);
    if (!root_index) return;
    State next = s;
    std::map<std::string, CellId> vars;
    CompiledCategory lhs = compile_category(rule.lhs, syn_, next.bindings, vars);
    if (!top) {
      auto u = unify_categories(next.bindings, s.open, lhs);
      if (!u) return;
      next.bindings = std::move(*u);
    } else {
      next.inflected = lhs;
    }
    std::vector<CompiledCategory> daughters(rule.rhs.size());
    for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
      if (const auto* c = std::get_if<CategorySpec>(&rule.rhs[i])) {
        daughters[i] = compile_category(*c, syn_, next.bindings, vars);
      }
    }
    next.open = daughters[*root_index];
    TreeStep step{r, std::vector<std::string>(rule.rhs.size())};
    fill(next, rule, daughters, *root_index, 0, step);
  }

  // Chooses a morpheme for each rhs item from `i` on.
  void fill(State& s, const ProductionRule& rule, const std::vector<CompiledCategory>& daughters,
            std::size_t root_index, std::size_t i, TreeStep& step) {
    if (i == rule.rhs.size()) {
      State next = s;
      std::vector<std::string> pre, suf;
      for (std::size_t k = 0; k < step.morphemes.size(); ++k) {
        if (k < root_index) pre.push_back(step.morphemes[k]);
        if (k > root_index) suf.push_back(step.morphemes[k]);
      }
      next.prefixes.insert(next.prefixes.end(), pre.begin(), pre.end());
      next.suffixes.insert(next.suffixes.begin(), suf.begin(), suf.end());
      next.steps.push_back(step);
      descend(next);
      return;
    }
    if (i == root_index) {
      step.morphemes[i].clear();
      fill(s, rule, daughters, root_index, i + 1, step);
      return;
    }
    if (const auto* m = std::get_if<MorphemeRef>(&rule.rhs[i])) {
      if (!d_.find_affix(m->name)) return;
      step.morphemes[i] = m->name;
      fill(s, rule, daughters, root_index, i + 1, step);
      return;
    }
    const auto& slot = std::get<CategorySpec>(rule.rhs[i]);
    for (const auto& a : d_.affixes) {
      if (!a.category || a.category->major != slot.major) continue;
      Bindings b = s.bindings;
      std::map<std::string, CellId> none;
      CompiledCategory ac = compile_category(*a.category, syn_, b, none);
      auto u = unify_categories(std::move(b), daughters[i], ac);
      if (!u) continue;
      State next = s;
      next.bindings = std::move(*u);
      step.morphemes[i] = a.name;
      fill(next, rule, daughters, root_index, i + 1, step);
    }
  }

  void descend(const State& s) {
    ProductionTree t;
    t.steps = s.steps;
    t.bindings = s.bindings;
    t.root = s.open;
    t.inflected = s.inflected;
    t.prefixes = s.prefixes;
    t.suffixes = s.suffixes;
    if (!add_tree(std::move(t))) return;
    bool at_bound = static_cast<int>(s.steps.size()) >= depth_;
    for (std::size_t r = 0; r < d_.productions.size(); ++r) {
      if (at_bound) {
        if (could_apply(s, r)) truncated(d_.productions[r].name);
        continue;
      }
      apply(s, r, false);
    }
  }

  bool could_apply(const State& s, std::size_t r) {
    const ProductionRule& rule = d_.productions[r];
    if (!root_daughter(rule, affix_cats_)) return false;
    Bindings b = s.bindings;
    std::map<std::string, CellId> vars;
    CompiledCategory lhs = compile_category(rule.lhs, syn_, b, vars);
    return unify_categories(std::move(b), s.open, lhs).has_value();
  }

  // False when the affixes' orth constraints are contradictory.
  bool add_tree(ProductionTree t) {
    FeatureVector orth = FeatureVector::top(orth_);
    bool pseudo = false;
    for (const auto* list : {&t.prefixes, &t.suffixes}) {
      for (const auto& name : *list) {
        const AffixEntry* a = d_.find_affix(name);
        pseudo = pseudo || a->pseudo;
        auto u = unify(orth, compile_constraints(a->orth, orth_));
        if (!u) return false;
        orth = std::move(*u);
      }
    }
    auto key = std::make_pair(t.prefixes, t.suffixes);
    auto it = seq_index_.find(key);
    if (it == seq_index_.end()) {
      AffixSequence seq;
      seq.id = static_cast<int>(out_.sequences.size());
      seq.prefixes = t.prefixes;
      seq.suffixes = t.suffixes;
      seq.orth = orth;
      seq.pseudo = pseudo;
      it = seq_index_.emplace(key, seq.id).first;
      out_.sequences.push_back(std::move(seq));
    }
    t.id = static_cast<int>(out_.trees.size());
    t.sequence = it->second;
    out_.sequences[static_cast<std::size_t>(it->second)].trees.push_back(t.id);
    out_.trees.push_back(std::move(t));
    return true;
  }

  const Description& d_;
  const FeatureSpace& syn_;
  const FeatureSpace& orth_;
  int depth_;
  std::set<std::string> affix_cats_;
  std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, int> seq_index_;
  Morphotactics out_;
  bool warned_ = false;
};

}  // namespace

Morphotactics enumerate_affix_sequences(const Description& d, const FeatureSpace& syn, const FeatureSpace& orth,
                                        int depth_bound) {
  return Enumerator(d, syn, orth, depth_bound).run();
}

}  // namespace morphc
