#pragma once

// Random small rule systems for differential tests against the oracle.

#include <random>
#include <string>
#include <vector>

namespace morphc::testing {

inline constexpr const char* kMicroAlphabet = "abcde";

struct MicroSystem {
  std::string text;  // description source
  std::vector<std::string> orth_choices{"[]", "[f=x]", "[f=y]"};
};

class MicroGenerator {
 public:
  explicit MicroGenerator(unsigned seed) : rng_(seed) {}

  MicroSystem system() {
    MicroSystem m;
    std::string c1 = subset(), c2 = subset();
    m.text += "class(letter, \"abcde\").\n";
    m.text += "class(k1, \"" + c1 + "\").\n";
    m.text += "class(k2, \"" + c2 + "\").\n";
    m.text += "feature(f, [x, y], orth).\n";
    m.text += "spell(default, \"|1|\" => \"|1|\", [1/letter], []).\n";
    m.text += "spell(boundary, \"||\" => \"|1|\", [1/bmarker], []).\n";
    int extra = pick(1, 4);
    for (int i = 0; i < extra; ++i) m.text += rule("r" + std::to_string(i));
    return m;
  }

  /// Random string over the alphabet and the boundary marker.
  std::string lexical(int max_len) {
    int len = pick(1, max_len);
    std::string out;
    for (int i = 0; i < len; ++i) out += pick(0, 5) == 0 ? '+' : kMicroAlphabet[pick(0, 4)];
    return out;
  }

  std::string surface(int max_len) {
    int len = pick(0, max_len);
    std::string out;
    for (int i = 0; i < len; ++i) out += kMicroAlphabet[pick(0, 4)];
    return out;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::string subset() {
    std::string out;
    for (const char* p = kMicroAlphabet; *p; ++p) {
      if (pick(0, 1)) out += *p;
    }
    if (out.empty()) out += kMicroAlphabet[pick(0, 4)];
    return out;
  }

  // One symbol: a letter, the boundary or a class digit.
  std::string sym(bool boundary_ok, std::vector<int>& digits) {
    int k = pick(0, 9);
    if (k < 5) return std::string(1, kMicroAlphabet[pick(0, 4)]);
    if (k < 7 && boundary_ok) return "+";
    int d = pick(1, 2);
    digits.push_back(d);
    return std::to_string(d);
  }

  std::string seq(int lo, int hi, bool boundary_ok, std::vector<int>& digits) {
    std::string out;
    int n = pick(lo, hi);
    for (int i = 0; i < n; ++i) out += sym(boundary_ok, digits);
    return out;
  }

  std::string rule(const std::string& name) {
    std::vector<int> digits;
    std::string lex_target = seq(1, 2, true, digits);
    std::vector<int> lex_digits = digits;
    std::string surf_target;
    int n = pick(0, 2);
    for (int i = 0; i < n; ++i) {
      // Surface digits reuse lexical ones so the rule stays finite.
      if (!lex_digits.empty() && pick(0, 1)) {
        surf_target += std::to_string(lex_digits[static_cast<std::size_t>(pick(0, static_cast<int>(lex_digits.size()) - 1))]);
      } else {
        surf_target += kMicroAlphabet[pick(0, 4)];
      }
    }
    std::string lex_left = seq(0, 1, true, digits), lex_right = seq(0, 2, true, digits);
    std::string surf_left = seq(0, 1, false, digits), surf_right = pick(0, 2) ? "" : seq(0, 1, false, digits);
    bool obligatory = pick(0, 1);
    std::string classes;
    bool has1 = false, has2 = false;
    for (int d : digits) (d == 1 ? has1 : has2) = true;
    if (has1) classes += "1/k1";
    if (has2) classes += std::string(has1 ? ", " : "") + "2/k2";
    const char* feats[] = {"[]", "[]", "[f=x]", "[f=y]"};
    return "spell(" + name + ", \"" + surf_left + "|" + surf_target + "|" + surf_right + "\" " +
           (obligatory ? "<=>" : "=>") + " \"" + lex_left + "|" + lex_target + "|" + lex_right + "\", [" + classes +
           "], " + feats[pick(0, 3)] + ").\n";
  }

  std::mt19937 rng_;
};

}  // namespace morphc::testing
