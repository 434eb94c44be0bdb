#pragma once

// Small closed expression grammar for generators, cocycle rates, coboundary
// functions and weights:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= integer | '(' '-'? integer ')' | '(1/3)' | '(2/3)'
//   primary := number | 'z' | 'x' | 'i' | '(' expr ')' | 'exp(' expr ')'
//            | 'mobius(' number ',' number ')'
//
// mobius(re, im) is the disc automorphism (a - z)/(1 - conj(a) z). Fractional
// exponents take real cube roots and are accepted on real-line domains only.

#include <memory>
#include <string>
#include <vector>

#include "wcsg/holo.hpp"

namespace wcsg::expr {

enum class Op { Num, Imag, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Mobius };

struct Node {
  Op op = Op::Num;
  double value = 0.0;        // Num literal, Mobius real part
  double value_im = 0.0;     // Mobius imaginary part
  int pow_num = 1;           // exponent numerator
  int pow_den = 1;           // 1 or 3
  char var = 'z';            // 'z' or 'x'
  std::vector<std::shared_ptr<const Node>> kids;
};

using Ptr = std::shared_ptr<const Node>;

/// Throws wcsg::Error(InvalidParam) with the column of the offending token.
Ptr parse(const std::string& text);
std::string print(const Ptr& node);
bool equal(const Ptr& a, const Ptr& b);

bool uses_fractional_power(const Ptr& node);

/// Evaluator over `domain`; fractional powers require a real-line domain.
HoloFn compile(const Ptr& node, const Domain& domain);
HoloFn compile(const std::string& text, const Domain& domain);

}  // namespace wcsg::expr
