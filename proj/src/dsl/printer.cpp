#include <charconv>

#include "cyclecert/dsl.hpp"

namespace cyclecert::dsl {

namespace {

int precedence(const AstNode& n) {
  if (n.kind != NodeKind::binary) return 3;
  return n.name == "+" || n.name == "-" ? 1 : 2;
}

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const AstNode& n, std::string& out, int indent);

void print_operand(const AstNode& child, int parent_prec, bool right, std::string& out) {
  const int p = precedence(child);
  const bool wrap = p < parent_prec || (right && p == parent_prec && child.kind == NodeKind::binary);
  if (wrap) out += '(';
  print(child, out, 0);
  if (wrap) out += ')';
}

void print_block(const AstNode& block, std::string& out, int indent) {
  for (const auto& st : block.args) {
    out.append(indent, ' ');
    print(st, out, indent);
    out += '\n';
  }
}

void print(const AstNode& n, std::string& out, int indent) {
  switch (n.kind) {
    case NodeKind::program:
      print_block(n, out, indent);
      break;
    case NodeKind::point_def:
    case NodeKind::line_def:
    case NodeKind::circle_def:
    case NodeKind::let_def: {
      const char* kw = n.kind == NodeKind::point_def  ? "point "
                       : n.kind == NodeKind::line_def ? "line "
                       : n.kind == NodeKind::circle_def ? "circle "
                                                        : "let ";
      out += kw + n.name + " = ";
      print(n.args[0], out, indent);
      break;
    }
    case NodeKind::check:
      out += "check ";
      print(n.args[0], out, indent);
      break;
    case NodeKind::sweep:
      out += "sweep " + n.name + " in ";
      print(n.args[0], out, indent);
      out += " {\n";
      print_block(n.args[1], out, indent + 2);
      out.append(indent, ' ');
      out += '}';
      break;
    case NodeKind::call:
      out += n.name + '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(n.args[i], out, indent);
      }
      out += ')';
      break;
    case NodeKind::keyword_arg:
      out += n.name + '=';
      print(n.args[0], out, indent);
      break;
    case NodeKind::tuple:
      out += '(';
      print(n.args[0], out, indent);
      out += ", ";
      print(n.args[1], out, indent);
      out += ')';
      break;
    case NodeKind::number:
      out += number(n.value);
      break;
    case NodeKind::name:
      out += n.name;
      break;
    case NodeKind::negate:
      out += '-';
      print_operand(n.args[0], 3, false, out);
      break;
    case NodeKind::binary: {
      const int p = precedence(n);
      print_operand(n.args[0], p, false, out);
      out += ' ' + n.name + ' ';
      print_operand(n.args[1], p, true, out);
      break;
    }
  }
}

}  // namespace

std::string pretty_print(const AstNode& node) {
  std::string out;
  print(node, out, 0);
  return out;
}

}  // namespace cyclecert::dsl
