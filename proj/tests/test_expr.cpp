#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wcsg/expr.hpp"

using namespace wcsg;

namespace {

/// Random expression tree over the whole grammar.
expr::Ptr random_tree(std::mt19937& rng, int depth) {
  auto n = std::make_shared<expr::Node>();
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 10);
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> v(0.0, 10.0);
      n->op = expr::Op::Num;
      n->value = rng() % 2 ? static_cast<double>(rng() % 7) : v(rng);
      break;
    }
    case 1: n->op = expr::Op::Imag; break;
    case 2: n->op = expr::Op::Var; break;
    case 3: {
      std::uniform_real_distribution<double> v(-0.6, 0.6);
      n->op = expr::Op::Mobius;
      n->value = v(rng);
      n->value_im = v(rng);
      break;
    }
    case 4: n->op = expr::Op::Add; break;
    case 5: n->op = expr::Op::Sub; break;
    case 6: n->op = expr::Op::Mul; break;
    case 7: n->op = expr::Op::Div; break;
    case 8: n->op = expr::Op::Neg; break;
    case 9: {
      n->op = expr::Op::Pow;
      n->pow_num = static_cast<int>(rng() % 9) - 3;
      break;
    }
    default: n->op = expr::Op::Exp; break;
  }
  const int arity = n->op == expr::Op::Add || n->op == expr::Op::Sub || n->op == expr::Op::Mul ||
                            n->op == expr::Op::Div
                        ? 2
                        : (n->op == expr::Op::Neg || n->op == expr::Op::Pow || n->op == expr::Op::Exp ? 1 : 0);
  for (int i = 0; i < arity; ++i) n->kids.push_back(random_tree(rng, depth - 1));
  return n;
}

}  // namespace

TEST_CASE("print then parse is the identity on trees") {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const expr::Ptr tree = random_tree(rng, 5);
    const std::string text = expr::print(tree);
    const expr::Ptr back = expr::parse(text);
    INFO(text);
    CHECK(expr::equal(tree, back));
    CHECK(expr::print(back) == text);
  }
}

TEST_CASE("parse then print is stable on hand-written inputs") {
  for (const std::string s : {"-z", "1 - z", "z/2 - 1", "exp((z + 1)/(z - 1))", "i*z", "-x^2/(1 + x^2)",
                              "x^(2/3)", "mobius(0.5, -0.25)", "z^(-2)", "2*(z - 1)^3", "-(z + 1)", "1e-3*z"}) {
    const std::string once = expr::print(expr::parse(s));
    INFO(s);
    CHECK(expr::print(expr::parse(once)) == once);
    CHECK(expr::equal(expr::parse(s), expr::parse(once)));
  }
}

TEST_CASE("evaluation") {
  const HoloFn f = expr::compile("exp((z + 1)/(z - 1))", Domain::unit_disc());
  CHECK(std::abs(f(0.0) - std::exp(-1.0)) < 1e-15);
  const HoloFn m = expr::compile("mobius(0.5, 0)", Domain::unit_disc());
  CHECK(std::abs(m(0.5)) < 1e-15);
  const HoloFn c = expr::compile("x^(2/3)", Domain::real_line());
  CHECK(std::abs(c(8.0) - 4.0) < 1e-14);
  CHECK(std::abs(expr::compile("z^(-2)", Domain::unit_disc())(0.5) - 4.0) < 1e-14);
  CHECK(std::abs(expr::compile("i*i", Domain::unit_disc())(0.0) + 1.0) < 1e-15);
}

TEST_CASE("rejected expressions") {
  for (const std::string s : {"", "z +", "(z", "sin(z)", "z^(1/2)", "mobius(1, 0)", "2z", "z^99"}) {
    INFO(s);
    CHECK(error_kind([&] { expr::parse(s); }) == ErrorKind::InvalidParam);
  }
  CHECK(error_kind([] { expr::compile("z^(1/3)", Domain::unit_disc()); }) == ErrorKind::InvalidParam);
}
