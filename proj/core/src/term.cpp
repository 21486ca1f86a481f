#include "term.hpp"

#include <array>
#include <optional>

namespace morphc::detail {
namespace {

enum class Tok { atom, variable, number, string, punct, op, end, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  bool quoted = false;
  SourceLoc loc;
};

bool is_ascii_alnum(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Anything outside ASCII is taken to be a letter so atoms like `zbój` and
// `change_e_è1` lex as one token.
bool is_ident_char(char32_t c) { return is_ascii_alnum(c) || c == '_' || c >= 0x80; }

struct OpSpelling {
  std::u32string_view spelling;
  std::string_view canonical;
};

// Longest spellings first.
constexpr std::array<OpSpelling, 14> kOperators{{
    {U"<=>", "<=>"},
    {U"<->", "<=>"},
    {U"⇔", "<=>"},
    {U"↔", "<=>"},
    {U"=>", "=>"},
    {U"->", "=>"},
    {U"⇒", "=>"},
    {U"→", "=>"},
    {U":-", ":-"},
    {U"=", "="},
    {U":", ":"},
    {U"/", "/"},
    {U"-", "-"},
    {U"@", "@"},
}};

class Lexer {
 public:
  Lexer(Text text, int source) : text_(std::move(text)), source_(source) {}

  Token next() {
    Token t = scan();
    last_ = t.kind;
    return t;
  }

  Token scan() {
    skip_space();
    Token t;
    t.loc = here();
    if (pos_ >= text_.size()) {
      t.kind = Tok::eof;
      return t;
    }
    char32_t c = text_[pos_];
    if (c == '"') {
      t.kind = Tok::string;
      t.text = read_quoted('"');
      return t;
    }
    if (c == '\'') {
      t.kind = Tok::atom;
      t.quoted = true;
      t.text = read_quoted('\'');
      return t;
    }
    if (c >= '0' && c <= '9') {
      t.kind = Tok::number;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') t.text.push_back(static_cast<char>(take()));
      return t;
    }
    if ((c >= 'A' && c <= 'Z') || c == '_') {
      t.kind = Tok::variable;
      t.text = read_ident();
      return t;
    }
    if (is_ident_char(c) && !is_operator_start()) {
      t.kind = Tok::atom;
      t.text = read_ident();
      return t;
    }
    if (c == '.') {
      take();
      if (pos_ >= text_.size() || is_space(text_[pos_]) || text_[pos_] == '%') {
        t.kind = Tok::end;
        t.text = ".";
        return t;
      }
      throw SyntaxError(t.loc, "unexpected '.' inside a statement");
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      t.kind = Tok::punct;
      t.text = encode_utf8(take());
      return t;
    }
    for (const auto& op : kOperators) {
      if (text_.compare(pos_, op.spelling.size(), op.spelling) == 0) {
        for (std::size_t i = 0; i < op.spelling.size(); ++i) take();
        t.kind = Tok::op;
        t.text = std::string(op.canonical);
        return t;
      }
    }
    throw SyntaxError(t.loc, "unexpected character '" + encode_utf8(c) + "'");
  }

  // Skips to just past the next statement terminator. The terminator of a
  // statement that failed mid-way may already have been consumed, in which
  // case the following statement must not be skipped.
  void recover() {
    if (last_ == Tok::end || last_ == Tok::eof) return;
    while (pos_ < text_.size()) {
      char32_t c = take();
      if (c == '"' || c == '\'') {
        while (pos_ < text_.size() && text_[pos_] != c && text_[pos_] != '\n') take();
        if (pos_ < text_.size() && text_[pos_] == c) take();
        continue;
      }
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
        continue;
      }
      if (c == '.' && (pos_ >= text_.size() || is_space(text_[pos_]) || text_[pos_] == '%')) return;
    }
  }

 private:
  static bool is_space(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == 0xFEFF; }

  bool is_operator_start() const {
    // Non-ASCII operator glyphs would otherwise lex as identifier characters.
    char32_t c = text_[pos_];
    return c == 0x21D4 || c == 0x2194 || c == 0x21D2 || c == 0x2192;
  }

  SourceLoc here() const { return {source_, line_, col_}; }

  char32_t take() {
    char32_t c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char32_t c = text_[pos_];
      if (is_space(c)) {
        take();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  std::string read_ident() {
    Text out;
    while (pos_ < text_.size() && is_ident_char(text_[pos_]) && !is_operator_start()) out.push_back(take());
    return encode_utf8(out);
  }

  std::string read_quoted(char32_t quote) {
    SourceLoc start = here();
    take();
    Text out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') throw SyntaxError(start, "unterminated quoted text");
      char32_t c = take();
      if (c == quote) break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw SyntaxError(start, "unterminated quoted text");
        c = take();
      }
      out.push_back(c);
    }
    return encode_utf8(out);
  }

  Text text_;
  Tok last_ = Tok::eof;
  int source_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class Assoc { xfx, xfy, yfx };

struct OpInfo {
  int precedence;
  Assoc assoc;
};

std::optional<OpInfo> binary_op(const Token& t) {
  if (t.kind != Tok::op) return std::nullopt;
  if (t.text == "<=>" || t.text == "=>") return OpInfo{800, Assoc::xfx};
  if (t.text == "=") return OpInfo{700, Assoc::xfx};
  if (t.text == "-") return OpInfo{500, Assoc::yfx};
  if (t.text == "/") return OpInfo{400, Assoc::yfx};
  if (t.text == ":") return OpInfo{200, Assoc::xfy};
  return std::nullopt;
}

class TermParser {
 public:
  explicit TermParser(Lexer& lexer) : lexer_(lexer) { advance(); }

  const Token& peek() const { return tok_; }

  Token advance() {
    Token prev = tok_;
    tok_ = lexer_.next();
    return prev;
  }

  void expect_punct(std::string_view p) {
    if (tok_.kind != Tok::punct || tok_.text != p) {
      throw SyntaxError(tok_.loc, "expected '" + std::string(p) + "' but found " + token_name(tok_));
    }
    advance();
  }

  Term parse(int max_prec) {
    Term left = primary();
    int left_prec = 0;
    while (auto op = binary_op(tok_)) {
      if (op->precedence > max_prec) break;
      bool ok = op->assoc == Assoc::yfx ? left_prec <= op->precedence : left_prec < op->precedence;
      if (!ok) break;
      Token op_tok = advance();
      int right_max = op->assoc == Assoc::xfy ? op->precedence : op->precedence - 1;
      Term right = parse(right_max);
      Term node;
      node.kind = Term::Kind::compound;
      node.text = op_tok.text;
      node.loc = left.loc;
      node.args.push_back(std::move(left));
      node.args.push_back(std::move(right));
      left = std::move(node);
      left_prec = op->precedence;
    }
    return left;
  }

  Clause clause() {
    Clause c;
    c.loc = tok_.loc;
    c.head = parse(1199);
    if (tok_.kind == Tok::op && tok_.text == ":-") {
      advance();
      c.body.push_back(parse(999));
      while (tok_.kind == Tok::punct && tok_.text == ",") {
        advance();
        c.body.push_back(parse(999));
      }
    }
    if (tok_.kind != Tok::end) throw SyntaxError(tok_.loc, "expected '.' but found " + token_name(tok_));
    return c;
  }

  static std::string token_name(const Token& t) {
    switch (t.kind) {
      case Tok::eof:
        return "end of input";
      case Tok::end:
        return "'.'";
      case Tok::string:
        return "string \"" + t.text + "\"";
      default:
        return "'" + t.text + "'";
    }
  }

 private:
  Term primary() {
    Term t;
    t.loc = tok_.loc;
    switch (tok_.kind) {
      case Tok::atom: {
        t.kind = Term::Kind::atom;
        t.quoted = tok_.quoted;
        t.text = advance().text;
        if (tok_.kind == Tok::punct && tok_.text == "(") {
          advance();
          t.kind = Term::Kind::compound;
          t.args.push_back(parse(999));
          while (tok_.kind == Tok::punct && tok_.text == ",") {
            advance();
            t.args.push_back(parse(999));
          }
          expect_punct(")");
        }
        return t;
      }
      case Tok::variable:
        t.kind = Term::Kind::variable;
        t.text = advance().text;
        return t;
      case Tok::number:
        t.kind = Term::Kind::number;
        t.text = advance().text;
        return t;
      case Tok::string:
        t.kind = Term::Kind::string;
        t.text = advance().text;
        return t;
      case Tok::punct:
        if (tok_.text == "[") return list();
        if (tok_.text == "(") {
          advance();
          Term inner = parse(1200);
          expect_punct(")");
          return inner;
        }
        break;
      case Tok::op:
        if (tok_.text == "@") {
          advance();
          t.kind = Term::Kind::compound;
          t.text = "@";
          t.args.push_back(parse(200));
          return t;
        }
        break;
      default:
        break;
    }
    throw SyntaxError(tok_.loc, "unexpected " + token_name(tok_));
  }

  Term list() {
    Term t;
    t.kind = Term::Kind::list;
    t.loc = tok_.loc;
    expect_punct("[");
    if (tok_.kind == Tok::punct && tok_.text == "]") {
      advance();
      return t;
    }
    t.args.push_back(parse(999));
    while (tok_.kind == Tok::punct && tok_.text == ",") {
      advance();
      t.args.push_back(parse(999));
    }
    if (tok_.kind == Tok::punct && tok_.text == "|") {
      advance();
      t.tail.push_back(parse(999));
    }
    expect_punct("]");
    return t;
  }

  Lexer& lexer_;
  Token tok_;
};

}  // namespace

std::vector<Clause> parse_clauses(std::string_view text, int source, std::vector<Diagnostic>& diagnostics) {
  Text decoded;
  try {
    decoded = decode_utf8(text);
  } catch (const std::invalid_argument& e) {
    diagnostics.push_back({Severity::error, {source, 1, 1}, e.what()});
    return {};
  }
  Lexer lexer(std::move(decoded), source);
  std::vector<Clause> clauses;
  while (true) {
    try {
      TermParser parser(lexer);
      if (parser.peek().kind == Tok::eof) break;
      clauses.push_back(parser.clause());
    } catch (const SyntaxError& e) {
      diagnostics.push_back({Severity::error, e.loc, e.what()});
      lexer.recover();
    }
  }
  return clauses;
}

Term parse_single_term(std::string_view text, int source) {
  Text decoded = decode_utf8(text);
  Lexer lexer(std::move(decoded), source);
  TermParser parser(lexer);
  Term t = parser.parse(1200);
  if (parser.peek().kind != Tok::eof && parser.peek().kind != Tok::end) {
    throw SyntaxError(parser.peek().loc, "trailing input after term");
  }
  return t;
}

std::string describe(const Term& t) {
  switch (t.kind) {
    case Term::Kind::variable:
      return "variable " + t.text;
    case Term::Kind::string:
      return "string \"" + t.text + "\"";
    case Term::Kind::list:
      return "a list";
    case Term::Kind::compound:
      return "'" + t.text + "/" + std::to_string(t.args.size()) + "'";
    default:
      return "'" + t.text + "'";
  }
}

}  // namespace morphc::detail
