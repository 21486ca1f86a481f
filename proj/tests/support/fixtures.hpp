#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "morphc/runtime.hpp"

namespace morphc::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) { return std::string(MORPHC_DESCRIPTIONS_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(MORPHC_GOLDEN_DIR) + "/" + name; }

/// A parsed and compiled description with an in-memory lexicon.
struct Fixture {
  Description description;
  std::unique_ptr<CompiledDescription> compiled;
  std::unique_ptr<InMemoryLexicon> lexicon;
  std::unique_ptr<Morphology> morphology;
  std::vector<Diagnostic> diagnostics;

  const Morphology& m() const { return *morphology; }
  const CompiledDescription& c() const { return *compiled; }
};

inline Fixture load_text(const std::string& text, CompileOptions options = {}) {
  Fixture f;
  ParseResult parsed = parse_description(text);
  if (!parsed.ok()) {
    std::string msg;
    for (const auto& d : parsed.diagnostics) msg += format_diagnostic(d, "<fixture>") + "\n";
    throw std::runtime_error(msg);
  }
  f.description = std::move(parsed.description);
  CompileOutput out = compile_description(f.description, options);
  f.diagnostics = out.diagnostics;
  if (!out.ok()) {
    std::string msg;
    for (const auto& d : out.diagnostics) msg += format_diagnostic(d, "<fixture>") + "\n";
    throw std::runtime_error(msg);
  }
  f.compiled = std::move(out.compiled);
  f.lexicon = std::make_unique<InMemoryLexicon>(f.description);
  f.morphology = std::make_unique<Morphology>(*f.compiled, *f.lexicon);
  return f;
}

inline Fixture load_fixture(const std::string& file, CompileOptions options = {}) {
  return load_text(read_text(fixture_path(file)), options);
}

/// Inflections of `root` by value; empty when the root is unknown.
inline std::vector<Inflection> inflections_of(const Morphology& m, std::string_view root) {
  return m.inflections(root).value_or(std::vector<Inflection>{});
}

inline const std::vector<std::string>& fixture_files() {
  static const std::vector<std::string> files{"french.morph", "polish.morph", "english.morph"};
  return files;
}

}  // namespace morphc::testing
