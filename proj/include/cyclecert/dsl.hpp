#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecert/harness.hpp"
#include "cyclecert/scene.hpp"
#include "cyclecert/tolerance.hpp"

// Scene scripts: one statement per line, `#` comments.
//
//   point A = (0, 0)
//   point I = incenter(A, B, C)
//   line BC = through(B, C, toward=A)
//   circle w = apollonius_llc(BC, AD, Omega, positive)
//   let d = 0.25 * sqrt(2)
//   sweep d in range(0.1, 0.9, 9) {
//     ...
//   }
//   check collinear(E, F, I)
//
// Names defined inside a sweep become families afterwards; a family passed
// to a variadic check expands to all of its members.
namespace cyclecert::dsl {

/// 1-based line and column; length in bytes.
struct Span {
  int line = 0;
  int column = 0;
  int length = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind {
  keyword,
  identifier,
  number,
  lparen,
  rparen,
  lbrace,
  rbrace,
  comma,
  equals,
  plus,
  minus,
  star,
  slash,
  newline,
};

struct Token {
  TokenKind kind;
  std::string text;
  double number = 0.0;
  Span span;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  Span span;
  /// A second location the message refers to (e.g. the first definition).
  std::optional<Span> related;

  /// "line:col: error: message".
  std::string format() const;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
};

/// Unknown characters are reported and skipped; lexing continues.
LexResult tokenize(std::string_view source);

enum class NodeKind {
  program,
  point_def,
  line_def,
  circle_def,
  let_def,
  check,
  sweep,
  call,
  keyword_arg,
  tuple,
  number,
  name,
  negate,
  binary,
};

struct AstNode {
  NodeKind kind = NodeKind::program;
  /// Defined name, function name, identifier, operator or keyword-arg key.
  std::string name;
  double value = 0.0;
  std::vector<AstNode> args;
  Span span;
};

/// Same shape, names and literal values; spans are ignored.
bool structurally_equal(const AstNode& a, const AstNode& b);

struct ParseResult {
  AstNode program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

/// A statement with a syntax error is dropped and parsing resumes on the
/// next line. Duplicate definitions are reported with both spans.
ParseResult parse(const std::vector<Token>& tokens);

/// tokenize + parse. Parse errors on lines that already carry a lexical
/// error are suppressed.
ParseResult parse_source(std::string_view source);

/// Canonical text; parse(pretty_print(p)) is structurally equal to p.
std::string pretty_print(const AstNode& node);

struct EvalResult {
  Scene scene;
  /// One report per evaluated check statement.
  std::vector<CheckReport> reports;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
  bool all_passed() const;
};

/// Top to bottom; stops at the first error. `seed` drives rand(lo, hi).
EvalResult evaluate(const AstNode& program, const ToleranceContext& ctx = {}, std::uint64_t seed = 0);

}  // namespace cyclecert::dsl
