#pragma once

#include <stdexcept>
#include <string>

#include "bnk/poly.hpp"

namespace bnk {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Input grammar:
//   vars: x1,x2,...;
//   dim: k;
//   <polynomial>;   (one per line, ';' terminated)
// with decimal literals, 'i' for the imaginary unit, operators + - * ^ and
// parentheses.
PolySystem parse_system(const std::string& text);

// Canonical printer: terms in graded-lex order; print -> parse -> print is
// the identity.
std::string print_poly(const Poly& p, const std::vector<std::string>& vars);
std::string print_system(const PolySystem& s);

}  // namespace bnk
