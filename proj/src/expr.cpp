#include "wcsg/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>

#include "wcsg/errors.hpp"

namespace wcsg::expr {

namespace {

Ptr make(Op op, std::vector<Ptr> kids = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Ptr run() {
    Ptr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::InvalidParam, "expression '" + s_ + "' column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ == start) error("expected a number");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) error("bad number");
    return v;
  }

  double signed_number() {
    const bool neg = accept('-');
    const double v = number();
    return neg ? -v : v;
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) error("expected an integer exponent");
    int v = 0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || v > 64) error("exponent out of range");
    return v;
  }

  Ptr expr() {
    Ptr left = term();
    while (true) {
      if (accept('+')) left = make(Op::Add, {left, term()});
      else if (accept('-')) left = make(Op::Sub, {left, term()});
      else return left;
    }
  }

  Ptr term() {
    Ptr left = unary();
    while (true) {
      if (accept('*')) left = make(Op::Mul, {left, unary()});
      else if (accept('/')) left = make(Op::Div, {left, unary()});
      else return left;
    }
  }

  Ptr unary() {
    if (accept('-')) return make(Op::Neg, {unary()});
    return power();
  }

  Ptr power() {
    Ptr base = primary();
    if (!accept('^')) return base;
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->kids = {base};
    if (accept('(')) {
      const bool neg = accept('-');
      const int k = integer();
      if (accept('/')) {
        if (neg || integer() != 3 || (k != 1 && k != 2)) error("only (1/3) and (2/3) are fractional exponents");
        n->pow_num = k;
        n->pow_den = 3;
      } else {
        n->pow_num = neg ? -k : k;
      }
      expect(')');
    } else {
      n->pow_num = integer();
    }
    return n;
  }

  Ptr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto n = std::make_shared<Node>();
      n->op = Op::Num;
      n->value = number();
      return n;
    }
    if (accept('(')) {
      Ptr e = expr();
      expect(')');
      return e;
    }
    if (accept_word("exp")) {
      expect('(');
      Ptr e = expr();
      expect(')');
      return make(Op::Exp, {e});
    }
    if (accept_word("mobius")) {
      expect('(');
      auto n = std::make_shared<Node>();
      n->op = Op::Mobius;
      n->value = signed_number();
      expect(',');
      n->value_im = signed_number();
      expect(')');
      if (!(std::hypot(n->value, n->value_im) < 1.0)) error("mobius point must lie in the unit disc");
      return n;
    }
    if (accept_word("i")) return make(Op::Imag);
    if (accept_word("z") || accept_word("x")) {
      auto n = std::make_shared<Node>();
      n->op = Op::Var;
      n->var = s_[pos_ - 1];
      return n;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
};

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

std::string fmt_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string print_node(const Node& n);

std::string wrap(const Ptr& child, bool parens) {
  const std::string s = print_node(*child);
  return parens ? "(" + s + ")" : s;
}

std::string print_node(const Node& n) {
  const int p = precedence(n);
  switch (n.op) {
    case Op::Num: return fmt_number(n.value);
    case Op::Imag: return "i";
    case Op::Var: return std::string(1, n.var);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? "*" : "/";
      return wrap(n.kids[0], precedence(*n.kids[0]) < p) + sym + wrap(n.kids[1], precedence(*n.kids[1]) <= p);
    }
    case Op::Neg: return "-" + wrap(n.kids[0], precedence(*n.kids[0]) < p);
    case Op::Pow: {
      std::string e;
      if (n.pow_den == 3) e = "(" + std::to_string(n.pow_num) + "/3)";
      else if (n.pow_num < 0) e = "(" + std::to_string(n.pow_num) + ")";
      else e = std::to_string(n.pow_num);
      return wrap(n.kids[0], precedence(*n.kids[0]) < 5) + "^" + e;
    }
    case Op::Exp: return "exp(" + print_node(*n.kids[0]) + ")";
    case Op::Mobius: return "mobius(" + fmt_number(n.value) + ", " + fmt_number(n.value_im) + ")";
  }
  return "";
}

using Eval = std::function<Complex(Complex)>;

Eval build(const Ptr& n) {
  switch (n->op) {
    case Op::Num: {
      const Complex v(n->value, 0.0);
      return [v](Complex) { return v; };
    }
    case Op::Imag: return [](Complex) { return Complex(0.0, 1.0); };
    case Op::Var: return [](Complex z) { return z; };
    case Op::Add: {
      auto a = build(n->kids[0]), b = build(n->kids[1]);
      return [a, b](Complex z) { return a(z) + b(z); };
    }
    case Op::Sub: {
      auto a = build(n->kids[0]), b = build(n->kids[1]);
      return [a, b](Complex z) { return a(z) - b(z); };
    }
    case Op::Mul: {
      auto a = build(n->kids[0]), b = build(n->kids[1]);
      return [a, b](Complex z) { return a(z) * b(z); };
    }
    case Op::Div: {
      auto a = build(n->kids[0]), b = build(n->kids[1]);
      return [a, b](Complex z) { return a(z) / b(z); };
    }
    case Op::Neg: {
      auto a = build(n->kids[0]);
      return [a](Complex z) { return -a(z); };
    }
    case Op::Pow: {
      auto a = build(n->kids[0]);
      const int k = n->pow_num;
      if (n->pow_den == 3) {
        return [a, k](Complex z) {
          const Complex w = a(z);
          if (w.imag() != 0.0) fail(ErrorKind::DomainExit, "fractional power of a non-real value");
          const double c = std::cbrt(w.real());
          return Complex(k == 1 ? c : c * c, 0.0);
        };
      }
      return [a, k](Complex z) {
        const Complex w = a(z);
        Complex acc{1.0, 0.0};
        for (int j = 0; j < std::abs(k); ++j) acc *= w;
        return k < 0 ? 1.0 / acc : acc;
      };
    }
    case Op::Exp: {
      auto a = build(n->kids[0]);
      return [a](Complex z) { return std::exp(a(z)); };
    }
    case Op::Mobius: {
      const Complex p(n->value, n->value_im);
      return [p](Complex z) { return (p - z) / (1.0 - std::conj(p) * z); };
    }
  }
  return [](Complex) { return Complex(0.0, 0.0); };
}

}  // namespace

Ptr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Ptr& node) { return print_node(*node); }

bool equal(const Ptr& a, const Ptr& b) {
  if (a->op != b->op || a->kids.size() != b->kids.size()) return false;
  switch (a->op) {
    case Op::Num:
      if (a->value != b->value) return false;
      break;
    case Op::Var:
      if (a->var != b->var) return false;
      break;
    case Op::Pow:
      if (a->pow_num != b->pow_num || a->pow_den != b->pow_den) return false;
      break;
    case Op::Mobius:
      if (a->value != b->value || a->value_im != b->value_im) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

bool uses_fractional_power(const Ptr& node) {
  if (node->op == Op::Pow && node->pow_den != 1) return true;
  for (const auto& k : node->kids) {
    if (uses_fractional_power(k)) return true;
  }
  return false;
}

HoloFn compile(const Ptr& node, const Domain& domain) {
  if (uses_fractional_power(node) && !domain.is_real()) {
    fail(ErrorKind::InvalidParam, "fractional exponents are only available on the real line: " + print(node));
  }
  Eval e = build(node);
  if (domain.is_real()) {
    // keep real inputs real through the arithmetic
    return {domain, [e](Complex x) { return e(Complex(x.real(), 0.0)); }, FnKind::ClosedForm, print(node)};
  }
  return {domain, e, FnKind::ClosedForm, print(node)};
}

HoloFn compile(const std::string& text, const Domain& domain) { return compile(parse(text), domain); }

}  // namespace wcsg::expr
