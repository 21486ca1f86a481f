#include "morphc/pattern_dump.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace morphc {

using nlohmann::json;

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// A fixed character is a one-character string, a variable its number and
// the middle null.
json syms_to_json(const PatternString& s) {
  json out = json::array();
  for (const auto& sym : s) {
    switch (sym.kind) {
      case PatternSym::Kind::chr: out.push_back(encode_utf8(sym.c)); break;
      case PatternSym::Kind::var: out.push_back(sym.var); break;
      case PatternSym::Kind::middle: out.push_back(nullptr); break;
    }
  }
  return out;
}

PatternString syms_from_json(const json& j) {
  PatternString out;
  for (const auto& x : j) {
    if (x.is_null()) {
      out.push_back(PatternSym::middle());
    } else if (x.is_number_integer()) {
      out.push_back(PatternSym::var_(x.get<int>()));
    } else {
      Text t = decode_utf8(x.get<std::string>());
      if (t.size() != 1) throw PatternDumpError("pattern character must be a single character");
      out.push_back(PatternSym::chr_(t[0]));
    }
  }
  return out;
}

}  // namespace

std::string dump_patterns(const CompiledDescription& c) {
  json patterns = json::array();
  for (const auto& p : c.patterns.patterns) {
    json parts = json::array();
    for (const auto& part : p.parts) {
      parts.push_back({{"rule", part.rule},
                       {"surface", syms_to_json(part.surface)},
                       {"lexical", syms_to_json(part.lexical)},
                       {"middle", part.middle}});
    }
    json vars = json::array();
    for (const auto& d : p.vars) {
      vars.push_back(d.any ? json(nullptr) : json(encode_utf8(Text(d.chars.begin(), d.chars.end()))));
    }
    json orth = json::array();
    for (ValueMask m : p.orth.masks()) orth.push_back(m);
    patterns.push_back({{"id", p.id},
                        {"sequence", p.sequence},
                        {"m", p.m},
                        {"n", p.n},
                        {"root", {p.root_begin, p.root_end}},
                        {"orth", orth},
                        {"deferred", p.deferred},
                        {"vars", vars},
                        {"parts", parts}});
  }
  json doc = {{"format", "morphc-patterns"},
              {"version", kPatternDumpVersion},
              {"fingerprint", hex(c.fingerprint)},
              {"patterns", patterns}};
  return doc.dump(1) + "\n";
}

PatternSet load_patterns(std::string_view text, const CompiledDescription& c) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw PatternDumpError("pattern dump is not a JSON object");
  if (doc.value("format", "") != "morphc-patterns") throw PatternDumpError("not a pattern dump");
  if (doc.value("version", 0) != kPatternDumpVersion) {
    throw PatternDumpError("unsupported pattern dump version " + doc.value("version", json()).dump());
  }
  if (doc.value("fingerprint", "") != hex(c.fingerprint)) {
    throw PatternDumpError("pattern dump was compiled from a different description");
  }
  PatternSet set;
  try {
    for (const auto& j : doc.at("patterns")) {
      SpellingPattern p;
      p.id = j.at("id").get<int>();
      p.sequence = j.at("sequence").get<int>();
      p.m = j.at("m").get<int>();
      p.n = j.at("n").get<int>();
      if (p.id != static_cast<int>(set.patterns.size())) throw PatternDumpError("pattern ids out of order");
      if (p.sequence < 0 || static_cast<std::size_t>(p.sequence) >= c.morphotactics.sequences.size()) {
        throw PatternDumpError("pattern " + std::to_string(p.id) + " names an unknown affix sequence");
      }
      std::vector<ValueMask> masks = j.at("orth").get<std::vector<ValueMask>>();
      if (masks.size() != c.orth.size()) throw PatternDumpError("orthographic feature count differs");
      p.orth = FeatureVector::from_masks(std::move(masks));
      p.deferred = j.at("deferred").get<std::vector<std::string>>();
      for (const auto& v : j.at("vars")) {
        Domain d;
        if (!v.is_null()) {
          d.any = false;
          Text chars = decode_utf8(v.get<std::string>());
          d.chars.assign(chars.begin(), chars.end());
        }
        p.vars.push_back(std::move(d));
      }
      std::size_t lexical_size = 0;
      for (const auto& pj : j.at("parts")) {
        PatternPart part{pj.at("rule").get<std::string>(), syms_from_json(pj.at("surface")),
                         syms_from_json(pj.at("lexical")), pj.at("middle").get<bool>()};
        if (!c.rules.find(part.rule)) throw PatternDumpError("pattern names unknown rule " + part.rule);
        for (const auto* side : {&part.surface, &part.lexical}) {
          for (const auto& s : *side) {
            if (s.kind == PatternSym::Kind::var && (s.var < 0 || static_cast<std::size_t>(s.var) >= p.vars.size())) {
              throw PatternDumpError("pattern variable out of range");
            }
          }
        }
        lexical_size += part.lexical.size();
        p.parts.push_back(std::move(part));
      }
      auto root = j.at("root").get<std::vector<std::size_t>>();
      if (root.size() != 2 || root[0] > root[1] || root[1] > lexical_size) {
        throw PatternDumpError("bad root region");
      }
      p.derive(root[0], lexical_size - root[1]);
      set.patterns.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw PatternDumpError(std::string("malformed pattern dump: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw PatternDumpError(std::string("malformed pattern dump: ") + e.what());
  }
  set.build_indexes(c.morphotactics.sequences.size());
  return set;
}

}  // namespace morphc
