#include "morphc/features.hpp"

#include <algorithm>
#include <stdexcept>

namespace morphc {

FeatureSpace FeatureSpace::build(std::span<const FeatureDecl> decls, FeatureKind kind) {
  FeatureSpace s;
  for (const auto& d : decls) {
    if (d.kind != kind) continue;
    if (d.values.size() > kMaxFeatureValues) {
      throw std::invalid_argument("feature " + d.name + " declares more than 64 values");
    }
    s.index_.emplace(d.name, s.names_.size());
    s.names_.push_back(d.name);
    s.values_.push_back(d.values);
  }
  return s;
}

std::optional<std::size_t> FeatureSpace::index_of(std::string_view feature) const {
  auto it = index_.find(feature);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FeatureSpace::value_index(std::size_t feature, std::string_view value) const {
  const auto& vs = values_[feature];
  auto it = std::find(vs.begin(), vs.end(), value);
  if (it == vs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vs.begin());
}

ValueMask FeatureSpace::full_mask(std::size_t feature) const {
  std::size_t n = values_[feature].size();
  return n >= 64 ? ~ValueMask{0} : (ValueMask{1} << n) - 1;
}

std::size_t FeatureSpace::total_bits() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

FeatureVector FeatureVector::top(const FeatureSpace& space) {
  FeatureVector v;
  v.masks_.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) v.masks_[i] = space.full_mask(i);
  return v;
}

FeatureVector FeatureVector::from_masks(std::vector<ValueMask> masks) {
  FeatureVector v;
  v.masks_ = std::move(masks);
  return v;
}

bool FeatureVector::consistent() const {
  return std::none_of(masks_.begin(), masks_.end(), [](ValueMask m) { return m == 0; });
}

bool FeatureVector::is_top(const FeatureSpace& space) const {
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (masks_[i] != space.full_mask(i)) return false;
  }
  return true;
}

bool FeatureVector::implies(const FeatureVector& other) const {
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if ((masks_[i] & ~other.masks_[i]) != 0) return false;
  }
  return true;
}

std::optional<FeatureVector> unify(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("unify: vectors over different feature spaces");
  FeatureVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ValueMask m = a.mask(i) & b.mask(i);
    if (m == 0) return std::nullopt;
    out.set_mask(i, m);
  }
  return out;
}

ValueMask denote(const FeatureExpr& expr, const FeatureSpace& space, std::size_t feature) {
  switch (expr.kind) {
    case FeatureExpr::Kind::value: {
      auto idx = space.value_index(feature, expr.value);
      if (!idx) throw std::invalid_argument("'" + expr.value + "' is not a value of feature " + space.name(feature));
      return ValueMask{1} << *idx;
    }
    case FeatureExpr::Kind::all_of: {
      ValueMask m = space.full_mask(feature);
      for (const auto& op : expr.operands) m &= denote(op, space, feature);
      return m;
    }
    case FeatureExpr::Kind::any_of: {
      ValueMask m = 0;
      for (const auto& op : expr.operands) m |= denote(op, space, feature);
      return m;
    }
    case FeatureExpr::Kind::negation:
      return space.full_mask(feature) & ~denote(expr.operands.at(0), space, feature);
  }
  return 0;
}

FeatureVector compile_constraints(std::span<const FeatureConstraint> constraints, const FeatureSpace& space) {
  FeatureVector v = FeatureVector::top(space);
  for (const auto& c : constraints) {
    auto f = space.index_of(c.feature);
    if (!f) throw std::invalid_argument("undeclared feature " + c.feature);
    if (c.is_variable()) throw std::invalid_argument("variable not allowed for feature " + c.feature);
    v.set_mask(*f, v.mask(*f) & denote(std::get<FeatureExpr>(c.value), space, *f));
  }
  return v;
}

namespace {

std::string render_values(ValueMask m, const FeatureSpace& space, std::size_t feature) {
  if (m == 0) return "none";
  std::string out;
  const auto& vs = space.values(feature);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!(m & (ValueMask{1} << i))) continue;
    if (!out.empty()) out += '|';
    out += vs[i];
  }
  return out;
}

std::string render_pairs(const FeatureVector& v, const FeatureSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.mask(i) == space.full_mask(i)) continue;
    if (!out.empty()) out += ',';
    out += space.name(i) + '=' + render_values(v.mask(i), space, i);
  }
  return out;
}

}  // namespace

std::string render_vector(const FeatureVector& v, const FeatureSpace& space) {
  return '{' + render_pairs(v, space) + '}';
}

std::string render_constraint_list(const FeatureVector& v, const FeatureSpace& space) {
  return '[' + render_pairs(v, space) + ']';
}

std::string render_category(std::string_view major, const FeatureVector& v, const FeatureSpace& space) {
  return std::string(major) + ':' + render_constraint_list(v, space);
}

// --- Bindings -------------------------------------------------------------

CellId Bindings::fresh(ValueMask mask) {
  auto id = static_cast<CellId>(parent_.size());
  parent_.push_back(id);
  masks_.push_back(mask);
  return id;
}

CellId Bindings::find(CellId cell) const {
  while (parent_[cell] != cell) cell = parent_[cell];
  return cell;
}

bool Bindings::restrict(CellId cell, ValueMask mask) {
  CellId r = find(cell);
  masks_[r] &= mask;
  return masks_[r] != 0;
}

bool Bindings::merge(CellId a, CellId b) {
  CellId ra = find(a);
  CellId rb = find(b);
  if (ra == rb) return masks_[ra] != 0;
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
  masks_[ra] &= masks_[rb];
  return masks_[ra] != 0;
}

CellId Bindings::append(const Bindings& other) {
  auto offset = static_cast<CellId>(parent_.size());
  for (std::size_t i = 0; i < other.parent_.size(); ++i) {
    parent_.push_back(other.parent_[i] + offset);
    masks_.push_back(other.masks_[i]);
  }
  return offset;
}

CompiledCategory CompiledCategory::shifted(CellId offset) const {
  CompiledCategory c{major, cells};
  for (auto& cell : c.cells) cell += offset;
  return c;
}

CompiledCategory compile_category(const CategorySpec& spec, const FeatureSpace& space, Bindings& bindings,
                                  std::map<std::string, CellId>& variables) {
  CompiledCategory c;
  c.major = spec.major;
  c.cells.resize(space.size());
  std::vector<bool> set(space.size(), false);
  for (const auto& k : spec.constraints) {
    auto f = space.index_of(k.feature);
    if (!f) throw std::invalid_argument("undeclared syntactic feature " + k.feature);
    if (set[*f]) throw std::invalid_argument("feature " + k.feature + " repeated in category");
    set[*f] = true;
    if (k.is_variable()) {
      const std::string& name = std::get<VariableRef>(k.value).name;
      auto it = variables.find(name);
      if (it == variables.end()) it = variables.emplace(name, bindings.fresh(space.full_mask(*f))).first;
      c.cells[*f] = it->second;
    } else {
      c.cells[*f] = bindings.fresh(denote(std::get<FeatureExpr>(k.value), space, *f));
    }
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!set[i]) c.cells[i] = bindings.fresh(space.full_mask(i));
  }
  return c;
}

CompiledCategory category_from_vector(std::string major, const FeatureVector& v, Bindings& bindings) {
  CompiledCategory c;
  c.major = std::move(major);
  c.cells.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c.cells.push_back(bindings.fresh(v.mask(i)));
  return c;
}

std::optional<Bindings> unify_categories(Bindings bindings, const CompiledCategory& a, const CompiledCategory& b) {
  if (a.major != b.major || a.cells.size() != b.cells.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (!bindings.merge(a.cells[i], b.cells[i])) return std::nullopt;
  }
  return bindings;
}

FeatureVector resolve(const Bindings& bindings, const CompiledCategory& c) {
  std::vector<ValueMask> masks;
  masks.reserve(c.cells.size());
  for (CellId cell : c.cells) masks.push_back(bindings.mask(cell));
  return FeatureVector::from_masks(std::move(masks));
}

}  // namespace morphc
