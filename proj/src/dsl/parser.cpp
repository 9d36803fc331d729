#include <algorithm>
#include <map>

#include "cyclecert/dsl.hpp"

namespace cyclecert::dsl {

namespace {

struct SyntaxError {
  Diagnostic diag;
};

const char* const kCheckNames[] = {"collinear", "concyclic", "concurrent", "tangent",     "on",
                                   "equal",     "bisector",  "on_parabola", "involution"};

bool known_check(const std::string& name) {
  for (const char* c : kCheckNames)
    if (name == c) return true;
  return false;
}

std::string describe(const Token& t) {
  if (t.kind == TokenKind::newline) return "end of line";
  return "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ParseResult run() {
    ParseResult out;
    out.program.kind = NodeKind::program;
    out.program.span = {1, 1, 0};
    statements(out.program.args, false);
    out.diagnostics = std::move(diags_);
    return out;
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;

  bool done() const { return pos_ >= tokens_.size(); }
  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }
  bool at(TokenKind k) const { return !done() && tokens_[pos_].kind == k; }
  bool at_keyword(std::string_view w) const { return at(TokenKind::keyword) && tokens_[pos_].text == w; }

  Span end_span() const {
    if (tokens_.empty()) return {1, 1, 0};
    const Span& s = tokens_.back().span;
    return {s.line, s.column + s.length, 0};
  }
  Span here() const { return done() ? end_span() : tokens_[pos_].span; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError{{Severity::error, message, here(), std::nullopt}};
  }

  const Token& expect(TokenKind k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + (done() ? " at end of input" : ", found " + describe(*peek())));
    return tokens_[pos_++];
  }

  void skip_newlines() {
    while (at(TokenKind::newline)) ++pos_;
  }

  void skip_line() {
    while (!done() && !at(TokenKind::newline)) ++pos_;
  }

  void statements(std::vector<AstNode>& out, bool in_sweep) {
    for (;;) {
      skip_newlines();
      if (done()) return;
      if (in_sweep && at(TokenKind::rbrace)) return;
      try {
        out.push_back(statement(in_sweep));
        if (!done() && !at(TokenKind::newline) && !(in_sweep && at(TokenKind::rbrace)))
          fail("unexpected " + describe(*peek()) + " after statement");
      } catch (const SyntaxError& e) {
        diags_.push_back(e.diag);
        skip_line();
      }
    }
  }

  AstNode statement(bool in_sweep) {
    if (!at(TokenKind::keyword)) fail(done() ? "expected a statement" : "expected a statement, found " + describe(*peek()));
    const Token& kw = tokens_[pos_++];
    if (kw.text == "check") {
      AstNode call = call_expr("check name");
      if (!known_check(call.name))
        throw SyntaxError{{Severity::error, "unknown check '" + call.name + "'", call.span, std::nullopt}};
      AstNode n{NodeKind::check, call.name, 0.0, {}, call.span};
      n.args.push_back(std::move(call));
      return n;
    }
    if (kw.text == "sweep") return sweep(kw, in_sweep);
    NodeKind kind;
    if (kw.text == "point") kind = NodeKind::point_def;
    else if (kw.text == "line") kind = NodeKind::line_def;
    else if (kw.text == "circle") kind = NodeKind::circle_def;
    else if (kw.text == "let") kind = NodeKind::let_def;
    else throw SyntaxError{{Severity::error, "'" + kw.text + "' cannot start a statement", kw.span, std::nullopt}};

    const Token& name = expect(TokenKind::identifier, "a name");
    expect(TokenKind::equals, "'='");
    AstNode n{kind, name.text, 0.0, {}, name.span};
    if (kind == NodeKind::let_def || kind == NodeKind::point_def)
      n.args.push_back(expr());
    else
      n.args.push_back(call_expr("a construction"));
    return n;
  }

  AstNode sweep(const Token& kw, bool in_sweep) {
    if (in_sweep) throw SyntaxError{{Severity::error, "sweeps cannot be nested", kw.span, std::nullopt}};
    const Token& var = expect(TokenKind::identifier, "a sweep variable");
    if (!at_keyword("in")) fail("expected 'in'");
    ++pos_;
    AstNode range = call_expr("range(lo, hi, n)");
    if (range.name != "range" || range.args.size() != 3)
      throw SyntaxError{{Severity::error, "sweep needs range(lo, hi, n)", range.span, std::nullopt}};
    expect(TokenKind::lbrace, "'{'");
    AstNode n{NodeKind::sweep, var.text, 0.0, {}, var.span};
    n.args.push_back(std::move(range));
    AstNode body{NodeKind::program, "", 0.0, {}, kw.span};
    statements(body.args, true);
    if (!at(TokenKind::rbrace))
      throw SyntaxError{{Severity::error, "unterminated sweep block", kw.span, std::nullopt}};
    ++pos_;
    n.args.push_back(std::move(body));
    return n;
  }

  AstNode call_expr(const char* what) {
    if (!at(TokenKind::identifier)) fail(std::string("expected ") + what);
    AstNode n = primary();
    if (n.kind != NodeKind::call)
      throw SyntaxError{{Severity::error, std::string("expected ") + what, n.span, std::nullopt}};
    return n;
  }

  AstNode expr() {
    AstNode lhs = term();
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      const Token& op = tokens_[pos_++];
      AstNode rhs = term();
      lhs = AstNode{NodeKind::binary, op.text, 0.0, {std::move(lhs), std::move(rhs)}, op.span};
    }
    return lhs;
  }

  AstNode term() {
    AstNode lhs = unary();
    while (at(TokenKind::star) || at(TokenKind::slash)) {
      const Token& op = tokens_[pos_++];
      AstNode rhs = unary();
      lhs = AstNode{NodeKind::binary, op.text, 0.0, {std::move(lhs), std::move(rhs)}, op.span};
    }
    return lhs;
  }

  AstNode unary() {
    if (at(TokenKind::minus)) {
      const Token& op = tokens_[pos_++];
      return AstNode{NodeKind::negate, "-", 0.0, {unary()}, op.span};
    }
    return primary();
  }

  AstNode primary() {
    if (at(TokenKind::number)) {
      const Token& t = tokens_[pos_++];
      return AstNode{NodeKind::number, "", t.number, {}, t.span};
    }
    if (at(TokenKind::identifier)) {
      const Token& t = tokens_[pos_++];
      if (!at(TokenKind::lparen)) return AstNode{NodeKind::name, t.text, 0.0, {}, t.span};
      ++pos_;
      AstNode n{NodeKind::call, t.text, 0.0, {}, t.span};
      if (!at(TokenKind::rparen)) {
        n.args.push_back(argument());
        while (at(TokenKind::comma)) {
          ++pos_;
          n.args.push_back(argument());
        }
      }
      expect(TokenKind::rparen, "')'");
      return n;
    }
    if (at(TokenKind::lparen)) {
      const Token& open = tokens_[pos_++];
      AstNode first = expr();
      if (at(TokenKind::comma)) {
        ++pos_;
        AstNode n{NodeKind::tuple, "", 0.0, {std::move(first), expr()}, open.span};
        expect(TokenKind::rparen, "')'");
        return n;
      }
      expect(TokenKind::rparen, "')'");
      return first;
    }
    fail(done() ? "expected an expression at end of input" : "expected an expression, found " + describe(*peek()));
  }

  AstNode argument() {
    if (at(TokenKind::identifier) && pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == TokenKind::equals) {
      const Token& key = tokens_[pos_];
      pos_ += 2;
      return AstNode{NodeKind::keyword_arg, key.text, 0.0, {expr()}, key.span};
    }
    return expr();
  }
};

void collect_definitions(const AstNode& block, std::map<std::string, Span>& seen, std::vector<Diagnostic>& diags) {
  for (const auto& st : block.args) {
    const bool defines = st.kind == NodeKind::point_def || st.kind == NodeKind::line_def ||
                         st.kind == NodeKind::circle_def || st.kind == NodeKind::let_def ||
                         st.kind == NodeKind::sweep;
    if (defines) {
      if (auto it = seen.find(st.name); it != seen.end()) {
        diags.push_back({Severity::error, "'" + st.name + "' is already defined", st.span, it->second});
      } else {
        seen.emplace(st.name, st.span);
      }
    }
    if (st.kind == NodeKind::sweep) collect_definitions(st.args[1], seen, diags);
  }
}

}  // namespace

bool ParseResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::error) return false;
  return true;
}

ParseResult parse(const std::vector<Token>& tokens) {
  ParseResult out = Parser(tokens).run();
  std::map<std::string, Span> seen;
  collect_definitions(out.program, seen, out.diagnostics);
  return out;
}

ParseResult parse_source(std::string_view source) {
  LexResult lex = tokenize(source);
  ParseResult out = parse(lex.tokens);
  std::vector<Diagnostic> merged = std::move(lex.diagnostics);
  for (auto& d : out.diagnostics) {
    bool shadowed = false;
    for (const auto& l : merged) shadowed = shadowed || l.span.line == d.span.line;
    if (!shadowed) merged.push_back(std::move(d));
  }
  std::stable_sort(merged.begin(), merged.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.span.line != b.span.line ? a.span.line < b.span.line : a.span.column < b.span.column;
  });
  out.diagnostics = std::move(merged);
  return out;
}

bool structurally_equal(const AstNode& a, const AstNode& b) {
  if (a.kind != b.kind || a.name != b.name || a.value != b.value || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(a.args[i], b.args[i])) return false;
  return true;
}

}  // namespace cyclecert::dsl
