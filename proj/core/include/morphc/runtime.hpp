#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphc/description.hpp"
#include "morphc/features.hpp"
#include "morphc/morphotactics.hpp"
#include "morphc/patterns.hpp"
#include "morphc/spell.hpp"

namespace morphc {

/// Everything compiled from a description except the lexicon.
struct CompiledDescription {
  Description description;  // lexical statements are kept but not compiled in
  FeatureSpace orth;
  FeatureSpace syn;
  RuleSet rules;
  Morphotactics morphotactics;
  PatternSet patterns;
  std::uint64_t fingerprint = 0;
};

struct CompileOptions {
  std::optional<int> depth;  // overrides the description's depth bound
  PatternOptions patterns;
};

struct CompileOutput {
  std::unique_ptr<CompiledDescription> compiled;  // null when there were errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return compiled != nullptr; }
};

/// Validates and compiles. Diagnostics from validation, sequence enumeration
/// and pattern compilation are collected in that order.
CompileOutput compile_description(const Description& d, const CompileOptions& options = {});

/// FNV-1a of the printed description with its lexical statements removed.
std::uint64_t description_fingerprint(const Description& d);

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source of root entries. Implementations may consult anything; lookups
/// must be deterministic for a given provider state. Faults are reported by
/// throwing LexiconError.
class LexiconProvider {
 public:
  virtual ~LexiconProvider() = default;

  /// Entries whose citation is exactly `citation`, with every orth
  /// constraint for that citation attached.
  virtual std::vector<LexEntry> lookup(std::string_view citation) const = 0;
  /// Every citation, sorted.
  virtual std::vector<std::string> citations() const = 0;
  virtual std::vector<IrregEntry> irregular_forms(std::string_view surface) const = 0;
  virtual std::vector<IrregEntry> irregulars_of(std::string_view root) const = 0;
};

class InMemoryLexicon final : public LexiconProvider {
 public:
  InMemoryLexicon() = default;
  /// Roots, orth statements and irregular forms of `d`.
  explicit InMemoryLexicon(const Description& d);

  void add(LexEntry entry);
  void add_orth(const OrthDecl& decl);
  void add_irregular(IrregEntry entry);
  std::size_t size() const { return count_; }

  std::vector<LexEntry> lookup(std::string_view citation) const override;
  std::vector<std::string> citations() const override;
  std::vector<IrregEntry> irregular_forms(std::string_view surface) const override;
  std::vector<IrregEntry> irregulars_of(std::string_view root) const override;

 private:
  std::map<std::string, std::vector<LexEntry>, std::less<>> entries_;
  std::map<std::string, std::vector<FeatureConstraint>, std::less<>> orth_;
  std::map<std::string, std::vector<IrregEntry>, std::less<>> by_surface_;
  std::map<std::string, std::vector<IrregEntry>, std::less<>> by_root_;
  std::size_t count_ = 0;
};

struct Analysis {
  LexEntry root;
  std::vector<std::string> morphemes;  // root citation and affix names in surface order
  std::string surface;
  std::string major;
  FeatureVector category;  // inflected, over the syntactic space
  int pattern_id = -1;     // -1 for an irregular form
  int tree_id = 0;
  Partitioning partitioning;  // empty for an irregular form
  FeatureVector root_category;  // the root daughter after unification with the entry

  bool irregular() const { return pattern_id < 0; }
};

struct Generated {
  std::string surface;
  std::vector<std::string> morphemes;
  std::string major;
  FeatureVector category;
  int pattern_id = -1;
  int tree_id = 0;
  Partitioning partitioning;
};

struct Inflection {
  std::vector<std::string> morphemes;
  std::string major;
  std::string surface;

  auto operator<=>(const Inflection&) const = default;
};

/// `[cher,e]: adjp -> chère`
std::string render_inflection(const Inflection& i);

class Morphology {
 public:
  Morphology(const CompiledDescription& compiled, const LexiconProvider& lexicon)
      : c_(compiled), lexicon_(lexicon) {}

  /// Sorted by morpheme sequence; duplicates differing only in pattern id
  /// are merged, keeping the lowest id.
  std::vector<Analysis> analyze(std::string_view word) const;

  /// Forms of `root` whose inflected category unifies with `target`.
  std::vector<Generated> generate(std::string_view root, const CategorySpec& target) const;
  /// Every form of `root` under `tree` (any category).
  std::vector<Generated> generate_tree(const LexEntry& entry, int tree) const;

  /// nullopt when the lexicon has no entry for `root`.
  std::optional<std::vector<Inflection>> inflections(std::string_view root) const;

  const CompiledDescription& compiled() const { return c_; }
  const LexiconProvider& lexicon() const { return lexicon_; }

 private:
  struct RootReading {
    std::string major;
    FeatureVector category;
    FeatureVector root;
  };

  struct IrregularReading {
    const ProductionTree* tree;
    RootReading reading;
  };

  std::optional<FeatureVector> entry_orth(const LexEntry& e) const;
  std::optional<RootReading> apply_tree(const LexEntry& e, const ProductionTree& t) const;
  std::vector<IrregularReading> irregular_readings(const IrregEntry& irr, const LexEntry& e) const;
  bool blocked(const LexEntry& e, const ProductionTree& t, const RootReading& reading) const;
  void analyze_pattern(const SpellingPattern& p, std::u32string_view word, std::vector<Analysis>& out) const;

  const CompiledDescription& c_;
  const LexiconProvider& lexicon_;
};

/// Memoised analysis keyed on the exact word. Safe for concurrent use.
class AnalysisCache {
 public:
  explicit AnalysisCache(const Morphology& m) : m_(m) {}

  std::vector<Analysis> analyze(std::string_view word);
  void clear();
  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  const Morphology& m_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::vector<Analysis>> memo_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace morphc
