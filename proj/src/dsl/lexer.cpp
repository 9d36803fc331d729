#include <cctype>
#include <charconv>

#include "cyclecert/dsl.hpp"

namespace cyclecert::dsl {

namespace {

bool is_keyword(std::string_view word) {
  for (std::string_view k : {"point", "line", "circle", "let", "check", "sweep", "in"})
    if (word == k) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string Diagnostic::format() const {
  std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                    (severity == Severity::error ? "error: " : "warning: ") + message;
  if (related) out += " (see " + std::to_string(related->line) + ":" + std::to_string(related->column) + ")";
  return out;
}

LexResult tokenize(std::string_view src) {
  LexResult out;
  int line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto span_at = [&](std::size_t from, std::size_t len) {
    return Span{line, static_cast<int>(from - line_start) + 1, static_cast<int>(len)};
  };
  auto push = [&](TokenKind kind, std::size_t from, std::size_t len) {
    out.tokens.push_back({kind, std::string(src.substr(from, len)), 0.0, span_at(from, len)});
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      push(TokenKind::newline, i, 1);
      ++i;
      ++line;
      line_start = i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (ident_start(c)) {
      const std::size_t from = i;
      while (i < src.size() && ident_char(src[i])) ++i;
      const std::string_view word = src.substr(from, i - from);
      push(is_keyword(word) ? TokenKind::keyword : TokenKind::identifier, from, i - from);
    } else if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
      const std::size_t from = i;
      while (i < src.size() && (digit(src[i]) || src[i] == '.')) ++i;
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && digit(src[j])) {
          i = j;
          while (i < src.size() && digit(src[i])) ++i;
        }
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(src.data() + from, src.data() + i, v);
      if (ec != std::errc() || ptr != src.data() + i) {
        out.diagnostics.push_back({Severity::error, "malformed number", span_at(from, i - from), std::nullopt});
        continue;
      }
      push(TokenKind::number, from, i - from);
      out.tokens.back().number = v;
    } else {
      TokenKind kind;
      switch (c) {
        case '(': kind = TokenKind::lparen; break;
        case ')': kind = TokenKind::rparen; break;
        case '{': kind = TokenKind::lbrace; break;
        case '}': kind = TokenKind::rbrace; break;
        case ',': kind = TokenKind::comma; break;
        case '=': kind = TokenKind::equals; break;
        case '+': kind = TokenKind::plus; break;
        case '-': kind = TokenKind::minus; break;
        case '*': kind = TokenKind::star; break;
        case '/': kind = TokenKind::slash; break;
        default: {
          // Report a whole UTF-8 sequence as one character.
          std::size_t len = 1;
          while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80) ++len;
          out.diagnostics.push_back({Severity::error, "unexpected character '" + std::string(src.substr(i, len)) + "'",
                                     span_at(i, len), std::nullopt});
          i += len;
          continue;
        }
      }
      push(kind, i, 1);
      ++i;
    }
  }
  return out;
}

}  // namespace cyclecert::dsl
