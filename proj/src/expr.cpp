#include "gbc/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace gbc {

enum class Op {
  Num, Var, Add, Sub, Mul, Div, Pow, Neg,
  Sin, Cos, Tan, Exp, Log, Sqrt, Atan, Atan2,
};

struct Expr::Node {
  Op op;
  double value = 0.0;  // Num
  int var = -1;        // Var
  std::string var_name;
  NodePtr a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr mk_num(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Num;
  n->value = v;
  return n;
}

bool is_num(const NodePtr& n, double v) {
  return n->op == Op::Num && n->value == v;
}

NodePtr mk(Op op, NodePtr a, NodePtr b = nullptr) {
  // Light constant folding keeps derivative trees small.
  if (a && a->op == Op::Num && (!b || b->op == Op::Num)) {
    switch (op) {
      case Op::Add: return mk_num(a->value + b->value);
      case Op::Sub: return mk_num(a->value - b->value);
      case Op::Mul: return mk_num(a->value * b->value);
      case Op::Neg: return mk_num(-a->value);
      default: break; // keep div/pow/functions symbolic; they fold on eval anyway
    }
  }
  switch (op) {
    case Op::Add:
      if (is_num(a, 0)) return b;
      if (is_num(b, 0)) return a;
      break;
    case Op::Sub:
      if (is_num(b, 0)) return a;
      break;
    case Op::Mul:
      if (is_num(a, 0) || is_num(b, 0)) return mk_num(0);
      if (is_num(a, 1)) return b;
      if (is_num(b, 1)) return a;
      break;
    case Op::Div:
      if (is_num(a, 0)) return mk_num(0);
      if (is_num(b, 1)) return a;
      break;
    case Op::Pow:
      if (is_num(b, 1)) return a;
      if (is_num(b, 0)) return mk_num(1);
      break;
    case Op::Neg:
      if (a->op == Op::Neg) return a->a;
      break;
    default:
      break;
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

double eval_node(const Node* n, const std::vector<double>& x) {
  switch (n->op) {
    case Op::Num: return n->value;
    case Op::Var:
      if (n->var < 0 || n->var >= (int)x.size())
        fail("expression variable '" + n->var_name + "' out of range");
      return x[n->var];
    case Op::Add: return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
    case Op::Sub: return eval_node(n->a.get(), x) - eval_node(n->b.get(), x);
    case Op::Mul: return eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
    case Op::Div: return eval_node(n->a.get(), x) / eval_node(n->b.get(), x);
    case Op::Pow: return std::pow(eval_node(n->a.get(), x), eval_node(n->b.get(), x));
    case Op::Neg: return -eval_node(n->a.get(), x);
    case Op::Sin: return std::sin(eval_node(n->a.get(), x));
    case Op::Cos: return std::cos(eval_node(n->a.get(), x));
    case Op::Tan: return std::tan(eval_node(n->a.get(), x));
    case Op::Exp: return std::exp(eval_node(n->a.get(), x));
    case Op::Log: return std::log(eval_node(n->a.get(), x));
    case Op::Sqrt: return std::sqrt(eval_node(n->a.get(), x));
    case Op::Atan: return std::atan(eval_node(n->a.get(), x));
    case Op::Atan2: return std::atan2(eval_node(n->a.get(), x), eval_node(n->b.get(), x));
  }
  fail("corrupt expression node");
}

NodePtr diff(const NodePtr& n, int axis) {
  switch (n->op) {
    case Op::Num: return mk_num(0);
    case Op::Var: return mk_num(n->var == axis ? 1 : 0);
    case Op::Add: return mk(Op::Add, diff(n->a, axis), diff(n->b, axis));
    case Op::Sub: return mk(Op::Sub, diff(n->a, axis), diff(n->b, axis));
    case Op::Mul:
      return mk(Op::Add, mk(Op::Mul, diff(n->a, axis), n->b),
                mk(Op::Mul, n->a, diff(n->b, axis)));
    case Op::Div:
      // (a/b)' = a'/b - a b'/b^2
      return mk(Op::Sub, mk(Op::Div, diff(n->a, axis), n->b),
                mk(Op::Div, mk(Op::Mul, n->a, diff(n->b, axis)),
                   mk(Op::Mul, n->b, n->b)));
    case Op::Pow: {
      require(n->b->op == Op::Num, "only constant exponents are differentiable");
      double p = n->b->value;
      return mk(Op::Mul, mk_num(p),
                mk(Op::Mul, mk(Op::Pow, n->a, mk_num(p - 1)), diff(n->a, axis)));
    }
    case Op::Neg: return mk(Op::Neg, diff(n->a, axis));
    case Op::Sin: return mk(Op::Mul, mk(Op::Cos, n->a), diff(n->a, axis));
    case Op::Cos: return mk(Op::Neg, mk(Op::Mul, mk(Op::Sin, n->a), diff(n->a, axis)));
    case Op::Tan: {
      auto sec2 = mk(Op::Add, mk_num(1), mk(Op::Mul, mk(Op::Tan, n->a), mk(Op::Tan, n->a)));
      return mk(Op::Mul, sec2, diff(n->a, axis));
    }
    case Op::Exp: return mk(Op::Mul, mk(Op::Exp, n->a), diff(n->a, axis));
    case Op::Log: return mk(Op::Div, diff(n->a, axis), n->a);
    case Op::Sqrt:
      return mk(Op::Div, diff(n->a, axis),
                mk(Op::Mul, mk_num(2), mk(Op::Sqrt, n->a)));
    case Op::Atan: {
      auto den = mk(Op::Add, mk_num(1), mk(Op::Mul, n->a, n->a));
      return mk(Op::Div, diff(n->a, axis), den);
    }
    case Op::Atan2: {
      // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
      auto den = mk(Op::Add, mk(Op::Mul, n->a, n->a), mk(Op::Mul, n->b, n->b));
      auto num = mk(Op::Sub, mk(Op::Mul, n->b, diff(n->a, axis)),
                    mk(Op::Mul, n->a, diff(n->b, axis)));
      return mk(Op::Div, num, den);
    }
  }
  fail("corrupt expression node");
}

void print_node(const Node* n, std::ostringstream& out) {
  auto bin = [&](const char* sym) {
    out << '(';
    print_node(n->a.get(), out);
    out << sym;
    print_node(n->b.get(), out);
    out << ')';
  };
  switch (n->op) {
    case Op::Num: out << n->value; return;
    case Op::Var: out << n->var_name; return;
    case Op::Add: bin("+"); return;
    case Op::Sub: bin("-"); return;
    case Op::Mul: bin("*"); return;
    case Op::Div: bin("/"); return;
    case Op::Pow: bin("^"); return;
    case Op::Neg:
      out << "(-";
      print_node(n->a.get(), out);
      out << ')';
      return;
    default: {
      const char* name = "?";
      switch (n->op) {
        case Op::Sin: name = "sin"; break;
        case Op::Cos: name = "cos"; break;
        case Op::Tan: name = "tan"; break;
        case Op::Exp: name = "exp"; break;
        case Op::Log: name = "log"; break;
        case Op::Sqrt: name = "sqrt"; break;
        case Op::Atan: name = "atan"; break;
        case Op::Atan2: name = "atan2"; break;
        default: break;
      }
      out << name << '(';
      print_node(n->a.get(), out);
      if (n->b) {
        out << ',';
        print_node(n->b.get(), out);
      }
      out << ')';
    }
  }
}

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  const std::map<std::string, double>& consts;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  bool accept(char c) {
    if (peek(c)) { ++pos; return true; }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail("expression parse error: expected '" + std::string(1, c) + "' in \"" + text + "\"");
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = mk(Op::Add, lhs, parse_term());
      else if (accept('-')) lhs = mk(Op::Sub, lhs, parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) lhs = mk(Op::Mul, lhs, parse_factor());
      else if (accept('/')) lhs = mk(Op::Div, lhs, parse_factor());
      else return lhs;
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (accept('^')) {
      NodePtr exp = parse_factor(); // right associative
      return mk(Op::Pow, base, exp);
    }
    return base;
  }

  NodePtr parse_unary() {
    if (accept('-')) return mk(Op::Neg, parse_unary());
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("expression parse error: unexpected end of \"" + text + "\"");
    char c = text[pos];
    if (std::isdigit((unsigned char)c) || c == '.') {
      size_t end = 0;
      double v = std::stod(text.substr(pos), &end);
      pos += end;
      return mk_num(v);
    }
    if (accept('(')) {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (name == "pi") return mk_num(M_PI);
      if (auto it = consts.find(name); it != consts.end()) return mk_num(it->second);
      Op fn = Op::Num;
      bool is_fn = true;
      if (name == "sin") fn = Op::Sin;
      else if (name == "cos") fn = Op::Cos;
      else if (name == "tan") fn = Op::Tan;
      else if (name == "exp") fn = Op::Exp;
      else if (name == "log") fn = Op::Log;
      else if (name == "sqrt") fn = Op::Sqrt;
      else if (name == "atan2") fn = Op::Atan2;
      else if (name == "atan") fn = Op::Atan;
      else is_fn = false;
      if (is_fn) {
        expect('(');
        NodePtr a = parse_expr();
        NodePtr b;
        if (fn == Op::Atan2) {
          expect(',');
          b = parse_expr();
        }
        expect(')');
        return mk(fn, a, b);
      }
      for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) {
          auto n = std::make_shared<Node>();
          n->op = Op::Var;
          n->var = (int)i;
          n->var_name = name;
          return n;
        }
      }
      fail("unknown name '" + name + "' in expression \"" + text + "\"");
    }
    fail("expression parse error near '" + std::string(1, c) + "' in \"" + text + "\"");
  }
};

} // namespace

Expr Expr::number(double v) { return Expr(mk_num(v)); }

Expr Expr::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = 0;
  n->var_name = name;
  return Expr(n);
}

Expr Expr::parse(const std::string& text, const std::vector<std::string>& vars,
                 const std::map<std::string, double>& consts) {
  Parser p{text, vars, consts};
  NodePtr n = p.parse_expr();
  p.skip_ws();
  require(p.pos == text.size(), "trailing characters in expression \"" + text + "\"");
  return Expr(n);
}

double Expr::eval(const std::vector<double>& values) const {
  require(node_ != nullptr, "evaluating empty expression");
  return eval_node(node_.get(), values);
}

Expr Expr::derivative(int axis) const {
  require(node_ != nullptr, "differentiating empty expression");
  return Expr(diff(node_, axis));
}

bool Expr::is_zero() const {
  return node_ && node_->op == Op::Num && node_->value == 0.0;
}

std::string Expr::str() const {
  if (!node_) return "<empty>";
  std::ostringstream out;
  print_node(node_.get(), out);
  return out.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(mk(Op::Add, a.node(), b.node())); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(mk(Op::Sub, a.node(), b.node())); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mk(Op::Mul, a.node(), b.node())); }
Expr operator-(const Expr& a) { return Expr(mk(Op::Neg, a.node())); }

std::vector<Expr> parse_expr_list(const std::string& text,
                                  const std::vector<std::string>& vars,
                                  const std::map<std::string, double>& consts) {
  // split on commas at depth 0
  std::vector<Expr> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(Expr::parse(cur, vars, consts));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(Expr::parse(cur, vars, consts));
  return out;
}

} // namespace gbc
