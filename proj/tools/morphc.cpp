#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morphc/debugger.hpp"
#include "morphc/pattern_dump.hpp"
#include "morphc/runtime.hpp"

namespace {

using namespace morphc;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kEmpty = 2;

struct Options {
  std::string desc;
  std::string lexicon;
  std::optional<int> depth;
  bool json = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  Description description;
  std::unique_ptr<CompiledDescription> compiled;
  std::unique_ptr<InMemoryLexicon> lexicon;
  std::vector<Diagnostic> diagnostics;
};

void report(const std::vector<Diagnostic>& ds, const Options& o, bool warnings) {
  for (const auto& d : ds) {
    if (d.severity == Severity::warning && !warnings) continue;
    std::cerr << format_diagnostic(d, d.loc.source == 1 ? o.lexicon : o.desc) << '\n';
  }
}

// Parses and compiles the description and lexicon; reports errors and
// returns nullopt on failure.
std::optional<Loaded> load(Options& o, bool warnings) {
  if (o.desc.empty()) {
    if (const char* env = std::getenv("MORPHC_DESC")) o.desc = env;
  }
  if (o.desc.empty()) {
    std::cerr << "morphc: no description given; use --desc or set MORPHC_DESC\n";
    return std::nullopt;
  }
  auto text = read_file(o.desc);
  if (!text) {
    std::cerr << "morphc: cannot read " << o.desc << '\n';
    return std::nullopt;
  }
  Loaded out;
  ParseResult parsed = parse_description(*text, 0);
  out.diagnostics = parsed.diagnostics;
  out.description = std::move(parsed.description);
  if (!o.lexicon.empty()) {
    auto lex_text = read_file(o.lexicon);
    if (!lex_text) {
      std::cerr << "morphc: cannot read " << o.lexicon << '\n';
      return std::nullopt;
    }
    ParseResult lex = parse_lexicon(*lex_text, out.description, 1);
    out.diagnostics.insert(out.diagnostics.end(), lex.diagnostics.begin(), lex.diagnostics.end());
    merge_lexicon(out.description, lex.description);
  }
  if (has_errors(out.diagnostics)) {
    report(out.diagnostics, o, warnings);
    return std::nullopt;
  }
  CompileOptions co;
  co.depth = o.depth;
  CompileOutput compiled = compile_description(out.description, co);
  out.diagnostics.insert(out.diagnostics.end(), compiled.diagnostics.begin(), compiled.diagnostics.end());
  report(out.diagnostics, o, warnings);
  if (!compiled.ok()) return std::nullopt;
  out.compiled = std::move(compiled.compiled);
  out.lexicon = std::make_unique<InMemoryLexicon>(out.description);
  return out;
}

std::optional<Text> decode_arg(const std::string& s) {
  try {
    return decode_utf8(s);
  } catch (const std::invalid_argument&) {
    std::cerr << "morphc: argument is not valid UTF-8\n";
    return std::nullopt;
  }
}

int cmd_compile(Options& o, const std::string& output, bool list_patterns) {
  auto l = load(o, true);
  if (!l) return kError;
  const CompiledDescription& c = *l->compiled;
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    out << dump_patterns(c);
    if (!out) {
      std::cerr << "morphc: cannot write " << output << '\n';
      return kError;
    }
  }
  if (o.json) {
    std::cout << "{\"trees\": " << c.morphotactics.trees.size()
              << ", \"sequences\": " << c.morphotactics.sequences.size()
              << ", \"patterns\": " << c.patterns.patterns.size() << "}\n";
  } else {
    std::cout << c.morphotactics.trees.size() << " production trees, " << c.morphotactics.sequences.size()
              << " affix sequences, " << c.patterns.patterns.size() << " spelling patterns\n";
    if (list_patterns) {
      for (const auto& p : c.patterns.patterns) std::cout << '\n' << render_pattern(c, p);
    }
  }
  return kOk;
}

int cmd_analyze(Options& o, const std::vector<std::string>& words) {
  auto l = load(o, false);
  if (!l) return kError;
  Morphology m(*l->compiled, *l->lexicon);
  const CompiledDescription& c = *l->compiled;
  bool any = false;
  for (const auto& w : words) {
    auto as = m.analyze(w);
    any = any || !as.empty();
    if (o.json) {
      std::cout << analyses_json(c, w, as);
      continue;
    }
    if (as.empty()) std::cout << w << ": no analyses\n";
    for (const auto& a : as) {
      std::cout << w << ": [";
      for (std::size_t i = 0; i < a.morphemes.size(); ++i) std::cout << (i ? "," : "") << a.morphemes[i];
      std::cout << "] " << render_category(a.major, a.category, c.syn);
      if (a.irregular()) {
        std::cout << " (irregular, tree " << a.tree_id << ")\n";
      } else {
        std::cout << " (pattern " << a.pattern_id << ", tree " << a.tree_id << ")\n";
      }
    }
  }
  return any ? kOk : kEmpty;
}

int cmd_generate(Options& o, const std::string& root, const std::string& category) {
  auto l = load(o, false);
  if (!l) return kError;
  std::vector<Diagnostic> ds;
  auto target = parse_category(category, l->description, ds);
  if (!target) {
    for (const auto& d : ds) std::cerr << format_diagnostic(d, "<category>") << '\n';
    return kError;
  }
  Morphology m(*l->compiled, *l->lexicon);
  if (l->lexicon->lookup(root).empty()) {
    std::cerr << "root not found: " << root << '\n';
    return kEmpty;
  }
  auto gs = m.generate(root, *target);
  if (o.json) {
    std::cout << generated_json(*l->compiled, root, gs);
  } else {
    std::vector<std::string> surfaces;
    for (const auto& g : gs) surfaces.push_back(g.surface);
    std::sort(surfaces.begin(), surfaces.end());
    surfaces.erase(std::unique(surfaces.begin(), surfaces.end()), surfaces.end());
    for (const auto& s : surfaces) std::cout << s << '\n';
  }
  return gs.empty() ? kEmpty : kOk;
}

int cmd_inflections(Options& o, const std::string& root) {
  auto l = load(o, false);
  if (!l) return kError;
  Morphology m(*l->compiled, *l->lexicon);
  auto is = m.inflections(root);
  if (!is) {
    std::cerr << "root not found: " << root << '\n';
    return kEmpty;
  }
  if (o.json) {
    std::cout << inflections_json(root, *is);
  } else {
    for (const auto& i : *is) std::cout << render_inflection(i) << '\n';
  }
  return is->empty() ? kEmpty : kOk;
}

int cmd_trace(Options& o, const std::string& word) {
  auto l = load(o, false);
  if (!l) return kError;
  Morphology m(*l->compiled, *l->lexicon);
  auto as = m.analyze(word);
  if (o.json) {
    std::cout << trace_json(*l->compiled, word, as);
  } else if (as.empty()) {
    std::cout << "no analyses\n";
  } else {
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) std::cout << '\n';
      std::cout << render_trace(*l->compiled, as[i]);
    }
  }
  return as.empty() ? kEmpty : kOk;
}

int cmd_spell(Options& o, const std::string& input, bool from_surface) {
  auto l = load(o, false);
  if (!l) return kError;
  auto text = decode_arg(input);
  if (!text) return kError;
  const RuleSet& rules = l->compiled->rules;
  auto entries = from_surface ? spell_surface(rules, *text) : spell_lexical(rules, *text);
  if (o.json) {
    std::cout << spell_json(entries);
  } else if (entries.empty()) {
    std::cout << "no realisations\n";
  } else {
    std::cout << render_spell(rules, entries);
  }
  return entries.empty() ? kEmpty : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level morphology compiler, analyser and rule debugger"};
  app.require_subcommand(1);
  Options o;
  int depth = -1;
  app.add_option("--desc", o.desc, "Description file (default: $MORPHC_DESC)");
  app.add_option("--lexicon", o.lexicon, "Additional lexicon file");
  app.add_option("--depth", depth, "Production rule depth bound")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", o.json, "Emit JSON records");
  app.fallthrough();

  std::string output;
  bool list_patterns = false;
  auto* compile = app.add_subcommand("compile", "Compile a description and report its size");
  compile->add_option("-o,--output", output, "Write the pattern dump here");
  compile->add_flag("--patterns", list_patterns, "List every spelling pattern");

  std::vector<std::string> words;
  auto* analyze = app.add_subcommand("analyze", "Analyse words");
  analyze->add_option("words", words, "Surface words")->required();

  std::string root, category;
  auto* generate = app.add_subcommand("generate", "Generate the forms of a root with a target category");
  generate->add_option("root", root, "Root citation form")->required();
  generate->add_option("category", category, "Target category, e.g. adjp:[agr_gender=f]")->required();

  auto* inflections = app.add_subcommand("inflections", "List every inflection of a root");
  inflections->add_option("root", root, "Root citation form")->required();

  std::string word;
  auto* trace = app.add_subcommand("trace", "Show the patterns and trees behind each analysis");
  trace->add_option("word", word, "Surface word")->required();

  std::string sequence;
  bool from_surface = false;
  auto* spell = app.add_subcommand("spell", "Apply the spelling rules directly");
  spell->add_option("sequence", sequence, "Lexical string such as cher+e+, or a surface string with --surface")
      ->required();
  spell->add_flag("--surface", from_surface, "Treat the input as a surface string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  if (depth >= 0) o.depth = depth;

  try {
    if (*compile) return cmd_compile(o, output, list_patterns);
    if (*analyze) return cmd_analyze(o, words);
    if (*generate) return cmd_generate(o, root, category);
    if (*inflections) return cmd_inflections(o, root);
    if (*trace) return cmd_trace(o, word);
    if (*spell) return cmd_spell(o, sequence, from_surface);
  } catch (const LexiconError& e) {
    std::cerr << "morphc: lexicon error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
