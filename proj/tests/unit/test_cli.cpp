#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "run.hpp"

using morphc::testing::golden_path;
using morphc::testing::run_morphc;
using morphc::testing::read_text;
using morphc::testing::run;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST(Cli, CompileReportsCounts) {
  auto r = run_morphc("french.morph", "compile");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_text(golden_path("compile_french.txt")));
}

TEST(Cli, CompileSyntaxError) {
  auto p = temp_file("morphc_bad.morph", "class(a, \"ab\").\nspell(x, \"|a|\" => ).\n");
  auto r = run(std::string("'") + MORPHC_BIN + "' --desc '" + p.string() + "' compile 2>&1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("morphc_bad.morph:2:"), std::string::npos);
  EXPECT_NE(r.out.find("error"), std::string::npos);
  std::filesystem::remove(p);
}

TEST(Cli, CompileDepthOneWarns) {
  auto r = run_morphc("english.morph", "--depth 1 compile", true);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("warning"), std::string::npos);
  EXPECT_NE(r.out.find("v_un_v"), std::string::npos);
}

TEST(Cli, CompileWritesLoadableDump) {
  auto p = std::filesystem::temp_directory_path() / "morphc_dump.json";
  auto r = run_morphc("polish.morph", "compile -o '" + p.string() + "'");
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(read_text(p.string()));
  EXPECT_EQ(j["format"], "morphc-patterns");
  EXPECT_EQ(j["patterns"].size(), 5u);
  std::filesystem::remove(p);
}

TEST(Cli, InflectionsGolden) {
  auto r = run_morphc("french.morph", "inflections cher");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_text(golden_path("cher_inflections.txt")));
}

TEST(Cli, InflectionsUnknownRoot) {
  auto r = run_morphc("french.morph", "inflections nope", true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("root not found"), std::string::npos);
}

TEST(Cli, InflectionsZbojKeepsAccent) {
  auto r = run_morphc("polish.morph", "inflections zbój");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "[zbój,e]: noun -> zbóje\n");
}

TEST(Cli, TraceGoldenAndEmpty) {
  auto r = run_morphc("french.morph", "trace chère");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_text(golden_path("trace_chere.txt")));
  auto none = run_morphc("french.morph", "trace qqq");
  EXPECT_EQ(none.status, 2);
  EXPECT_EQ(none.out, "no analyses\n");
  auto boje = run_morphc("polish.morph", "trace boje");
  EXPECT_NE(boje.out.find("o:ó"), std::string::npos);
}

TEST(Cli, SpellBothDirections) {
  auto r = run_morphc("french.morph", "spell cher+e+");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_text(golden_path("spell_cher_e.txt")));
  auto s = run_morphc("french.morph", "spell --surface belle");
  EXPECT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("Lexical: \"beau\". Suffix: \"e\""), std::string::npos);
}

TEST(Cli, AnalyzeAndGenerate) {
  auto a = run_morphc("french.morph", "analyze chère chere");
  EXPECT_EQ(a.status, 0);
  EXPECT_NE(a.out.find("chère: [cher,e] adjp:"), std::string::npos);
  EXPECT_NE(a.out.find("chere: no analyses"), std::string::npos);
  auto g = run_morphc("french.morph", "generate cher 'adjp:[agr_gender=f, agr_num=sing]'");
  EXPECT_EQ(g.status, 0);
  EXPECT_EQ(g.out, "chère\n");
  auto none = run_morphc("french.morph", "analyze qqq");
  EXPECT_EQ(none.status, 2);
}

TEST(Cli, JsonOutput) {
  auto r = run_morphc("french.morph", "--json analyze chère");
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["analyses"][0]["root"], "cher");
  auto i = run_morphc("french.morph", "--json inflections cher");
  EXPECT_EQ(nlohmann::json::parse(i.out)["inflections"].size(), 3u);
}

TEST(Cli, LexiconFile) {
  std::string lex = std::string(MORPHC_DESCRIPTIONS_DIR) + "/french.lex";
  auto r = run_morphc("french.morph", "--lexicon '" + lex + "' analyze jettera");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("[jet,era]"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_morphc("", "analyze chère").status, 1);
  EXPECT_EQ(run_morphc("french.morph", "").status, 1);
  EXPECT_EQ(run_morphc("french.morph", "frobnicate").status, 1);
}
