#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphc/description.hpp"

namespace morphc {

/// One bit per atomic value; a feature may declare at most 64 values.
using ValueMask = std::uint64_t;

inline constexpr std::size_t kMaxFeatureValues = 64;

/// Ordered set of finite-valued features. Feature and value positions follow
/// declaration order and never change for the lifetime of the space.
class FeatureSpace {
 public:
  FeatureSpace() = default;

  /// Features of `kind` from `decls`, in declaration order. Throws
  /// std::invalid_argument if a feature declares more than 64 values.
  static FeatureSpace build(std::span<const FeatureDecl> decls, FeatureKind kind);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t feature) const { return names_[feature]; }
  const std::vector<std::string>& values(std::size_t feature) const { return values_[feature]; }
  std::optional<std::size_t> index_of(std::string_view feature) const;
  std::optional<std::size_t> value_index(std::size_t feature, std::string_view value) const;
  ValueMask full_mask(std::size_t feature) const;
  std::size_t total_bits() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> values_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Conjunction of per-feature value sets. An unconstrained feature carries
/// its full mask; the vector is inconsistent iff some mask is empty.
class FeatureVector {
 public:
  FeatureVector() = default;

  static FeatureVector top(const FeatureSpace& space);
  static FeatureVector from_masks(std::vector<ValueMask> masks);

  std::size_t size() const { return masks_.size(); }
  ValueMask mask(std::size_t feature) const { return masks_[feature]; }
  void set_mask(std::size_t feature, ValueMask m) { masks_[feature] = m; }
  std::span<const ValueMask> masks() const { return masks_; }

  bool consistent() const;
  bool is_top(const FeatureSpace& space) const;
  /// Every assignment admitted by *this is admitted by `other`.
  bool implies(const FeatureVector& other) const;

  auto operator<=>(const FeatureVector&) const = default;

 private:
  std::vector<ValueMask> masks_;
};

/// Per-feature intersection; nullopt when some intersection is empty. Throws
/// std::invalid_argument when the vectors have different sizes.
std::optional<FeatureVector> unify(const FeatureVector& a, const FeatureVector& b);

/// Denotation of `expr` as a subset of `feature`'s values. Throws
/// std::invalid_argument on an undeclared value.
ValueMask denote(const FeatureExpr& expr, const FeatureSpace& space, std::size_t feature);

/// Compiles `feature = expr` constraints. A contradictory expression yields
/// an empty mask rather than an error. Throws std::invalid_argument on
/// undeclared features or values and on variable constraints.
FeatureVector compile_constraints(std::span<const FeatureConstraint> constraints, const FeatureSpace& space);

/// `{cdouble=n,chngo=y|n}`; full masks are omitted.
std::string render_vector(const FeatureVector& v, const FeatureSpace& space);
/// `[cdouble=n]`, the list notation used inside category renderings.
std::string render_constraint_list(const FeatureVector& v, const FeatureSpace& space);

// --- categories -----------------------------------------------------------

using CellId = std::uint32_t;

/// Union-find store of value masks. Feature positions of categories in one
/// rule or tree instantiation are cells; a shared variable is one cell
/// referenced from several positions.
class Bindings {
 public:
  CellId fresh(ValueMask mask);
  CellId find(CellId cell) const;
  ValueMask mask(CellId cell) const { return masks_[find(cell)]; }
  /// Intersects the cell's mask; false when it becomes empty.
  bool restrict(CellId cell, ValueMask mask);
  /// Links two cells; false when their intersection is empty.
  bool merge(CellId a, CellId b);
  std::size_t size() const { return parent_.size(); }
  /// Appends a copy of `other`'s cells; returns the offset to add to its ids.
  CellId append(const Bindings& other);

 private:
  std::vector<CellId> parent_;
  std::vector<ValueMask> masks_;
};

struct CompiledCategory {
  std::string major;
  std::vector<CellId> cells;  // one per syntactic feature

  CompiledCategory shifted(CellId offset) const;
};

/// Compiles a category spec into `bindings`. Variables are looked up in, and
/// added to, `variables`, so that every occurrence within one rule
/// instantiation shares a cell.
CompiledCategory compile_category(const CategorySpec& spec, const FeatureSpace& space, Bindings& bindings,
                                  std::map<std::string, CellId>& variables);

CompiledCategory category_from_vector(std::string major, const FeatureVector& v, Bindings& bindings);

/// Unifies `a` with `b` inside `bindings`. Fails on differing majors or an
/// empty intersection. The returned store carries the merged cells, so
/// every position sharing a variable with either category sees the result.
std::optional<Bindings> unify_categories(Bindings bindings, const CompiledCategory& a, const CompiledCategory& b);

FeatureVector resolve(const Bindings& bindings, const CompiledCategory& c);

/// `adjp:[agr_gender=f,wh=n]`
std::string render_category(std::string_view major, const FeatureVector& v, const FeatureSpace& space);

}  // namespace morphc
