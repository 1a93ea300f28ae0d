#include <cctype>
#include <charconv>
#include <utility>

#include "monoflow/error.hpp"
#include "monoflow/simplehal.hpp"

namespace monoflow::simplehal {
namespace {

enum class Tok : std::uint8_t {
  ident, number, assign, semi, lparen, rparen, comma,
  plus, minus, star, slash, eq, gt, ge,
  kw_not, kw_and, kw_or,
  kw_if, kw_then, kw_else, kw_while, kw_do, kw_read, kw_call,
  kw_proc, kw_val, kw_res, kw_is, kw_end,
  eof
};

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  SourcePos pos;
};

const std::pair<std::string_view, Tok> kKeywords[] = {
    {"not", Tok::kw_not},   {"and", Tok::kw_and},   {"or", Tok::kw_or},
    {"if", Tok::kw_if},     {"then", Tok::kw_then}, {"else", Tok::kw_else},
    {"while", Tok::kw_while}, {"do", Tok::kw_do},   {"read", Tok::kw_read},
    {"call", Tok::kw_call}, {"proc", Tok::kw_proc}, {"val", Tok::kw_val},
    {"res", Tok::kw_res},   {"is", Tok::kw_is},     {"end", Tok::kw_end},
};

// Unicode spellings accepted alongside the ASCII ones.
const std::pair<std::string_view, Tok> kSymbols[] = {
    {":=", Tok::assign}, {"≔", Tok::assign}, {">=", Tok::ge},   {"≥", Tok::ge},
    {"×", Tok::star},    {"−", Tok::minus},  {"¬", Tok::kw_not}, {"∧", Tok::kw_and},
    {"∨", Tok::kw_or},   {";", Tok::semi},   {"(", Tok::lparen}, {")", Tok::rparen},
    {",", Tok::comma},   {"+", Tok::plus},   {"-", Tok::minus},  {"*", Tok::star},
    {"/", Tok::slash},   {"=", Tok::eq},     {">", Tok::gt},
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  SourcePos pos;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::ident;
      for (const auto& [kw, tok] : kKeywords) {
        if (kw == word) kind = tok;
      }
      out.push_back({kind, std::move(word), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& [sym, tok] : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({tok, std::string(sym), start});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SyntaxError("unexpected character '" + std::string(1, c) + "'", start.line,
                        start.column);
    }
  }
  out.push_back({Tok::eof, "", pos});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::assign: return "':='";
    case Tok::semi: return "';'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::kw_then: return "'then'";
    case Tok::kw_else: return "'else'";
    case Tok::kw_do: return "'do'";
    case Tok::kw_val: return "'val'";
    case Tok::kw_res: return "'res'";
    case Tok::kw_is: return "'is'";
    case Tok::kw_end: return "'end'";
    case Tok::eof: return "end of input";
    default: return "token";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Ast program() {
    Ast ast;
    while (peek().kind == Tok::kw_proc) ast.procedures.push_back(procedure());
    ast.main = command();
    if (peek().kind == Tok::kw_proc) {
      fail("procedure declarations must precede the main command");
    }
    expect(Tok::eof);
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }

  const Token& take() { return toks_[pos_++]; }

  bool accept(Tok t) {
    if (!at(t)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok t) {
    if (!at(t)) {
      fail(std::string("expected ") + describe(t) + ", found " +
           (at(Tok::eof) ? std::string("end of input") : "'" + peek().text + "'"));
    }
    return take();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().pos.line, peek().pos.column);
  }

  Procedure procedure() {
    Procedure p;
    p.pos = expect(Tok::kw_proc).pos;
    p.name = expect(Tok::ident).text;
    expect(Tok::lparen);
    expect(Tok::kw_val);
    p.value_param = expect(Tok::ident).text;
    expect(Tok::comma);
    expect(Tok::kw_res);
    p.result_param = expect(Tok::ident).text;
    expect(Tok::rparen);
    expect(Tok::kw_is);
    p.body = command();
    expect(Tok::kw_end);
    return p;
  }

  Command command() {
    std::vector<Command> items;
    items.push_back(statement());
    while (accept(Tok::semi)) items.push_back(statement());
    if (items.size() == 1) return std::move(items.front());
    SourcePos pos = items.front().pos;
    Command c = Command::seq(std::move(items));
    c.pos = pos;
    return c;
  }

  Command statement() {
    const SourcePos pos = peek().pos;
    Command c;
    switch (peek().kind) {
      case Tok::ident: {
        std::string x = take().text;
        expect(Tok::assign);
        c = Command::assign(std::move(x), aexp());
        break;
      }
      case Tok::kw_read: {
        take();
        expect(Tok::lparen);
        std::string x = expect(Tok::ident).text;
        expect(Tok::rparen);
        c = Command::read(std::move(x));
        break;
      }
      case Tok::kw_if: {
        take();
        Expr b = bexp();
        expect(Tok::kw_then);
        Command t = statement();
        expect(Tok::kw_else);
        Command e = statement();
        c = Command::if_(std::move(b), std::move(t), std::move(e));
        break;
      }
      case Tok::kw_while: {
        take();
        Expr b = bexp();
        expect(Tok::kw_do);
        c = Command::while_(std::move(b), statement());
        break;
      }
      case Tok::kw_call: {
        take();
        std::string p = expect(Tok::ident).text;
        expect(Tok::lparen);
        Expr a = aexp();
        expect(Tok::comma);
        std::string z = expect(Tok::ident).text;
        expect(Tok::rparen);
        c = Command::call(std::move(p), std::move(a), std::move(z));
        break;
      }
      case Tok::lparen: {
        take();
        c = command();
        expect(Tok::rparen);
        return c;
      }
      default:
        fail(at(Tok::eof) ? "expected a command, found end of input"
                          : "expected a command, found '" + peek().text + "'");
    }
    c.pos = pos;
    return c;
  }

  // Boolean expressions: or < and < not < comparison.
  Expr bexp() {
    Expr e = band();
    while (accept(Tok::kw_or)) e = Expr::binary(Expr::Kind::or_, std::move(e), band());
    return e;
  }

  Expr band() {
    Expr e = bnot();
    while (accept(Tok::kw_and)) e = Expr::binary(Expr::Kind::and_, std::move(e), bnot());
    return e;
  }

  Expr bnot() {
    if (accept(Tok::kw_not)) return Expr::unary(Expr::Kind::not_, bnot());
    if (at(Tok::lparen)) {
      // "(b)" or "(a) > …": try the boolean reading first.
      const std::size_t saved = pos_;
      try {
        take();
        Expr e = bexp();
        expect(Tok::rparen);
        if (!is_arith_continuation(peek().kind)) return e;
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
    }
    return comparison();
  }

  static bool is_arith_continuation(Tok t) {
    switch (t) {
      case Tok::plus: case Tok::minus: case Tok::star: case Tok::slash:
      case Tok::eq: case Tok::gt: case Tok::ge:
        return true;
      default:
        return false;
    }
  }

  Expr comparison() {
    Expr a = aexp();
    Expr::Kind k;
    if (accept(Tok::eq)) {
      k = Expr::Kind::eq;
    } else if (accept(Tok::gt)) {
      k = Expr::Kind::gt;
    } else if (accept(Tok::ge)) {
      k = Expr::Kind::ge;
    } else {
      fail("expected a comparison ('=', '>' or '>=')");
    }
    return Expr::binary(k, std::move(a), aexp());
  }

  // Arithmetic: unary minus < × / < + −, all left-associative.
  Expr aexp() {
    Expr e = term();
    for (;;) {
      if (accept(Tok::plus)) {
        e = Expr::binary(Expr::Kind::add, std::move(e), term());
      } else if (accept(Tok::minus)) {
        e = Expr::binary(Expr::Kind::sub, std::move(e), term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept(Tok::star)) {
        e = Expr::binary(Expr::Kind::mul, std::move(e), unary());
      } else if (accept(Tok::slash)) {
        e = Expr::binary(Expr::Kind::div, std::move(e), unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept(Tok::minus)) return Expr::unary(Expr::Kind::neg, unary());
    return atom();
  }

  Expr atom() {
    if (at(Tok::number)) {
      const Token& t = take();
      std::int64_t n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc()) {
        throw SyntaxError("integer literal out of range", t.pos.line, t.pos.column);
      }
      return Expr::num(n);
    }
    if (at(Tok::ident)) return Expr::var(take().text);
    if (accept(Tok::lparen)) {
      Expr e = aexp();
      expect(Tok::rparen);
      return e;
    }
    fail(at(Tok::eof) ? "expected an expression, found end of input"
                      : "expected an expression, found '" + peek().text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse(std::string_view source) { return Parser(tokenize(source)).program(); }

}  // namespace monoflow::simplehal
