#include "bnk/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

namespace bnk {

namespace {

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void expect(char c, const char* what) {
    if (peek() != c) fail(std::string("expected '") + c + "' (" + what + ")");
    advance();
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  std::string identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '_'))
      fail("expected identifier");
    std::string id;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      id += text_[pos_];
      advance();
    }
    return id;
  }

  // decimal literal, optionally with exponent and a trailing 'i'
  std::pair<double, bool> number() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t mark = pos_;
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
      } else {
        // not an exponent after all, e.g. a variable named e
        while (pos_ > mark) {
          --pos_;
          --col_;
        }
      }
    }
    if (pos_ == start) fail("expected number");
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || !std::isfinite(value)) fail("non-finite or invalid literal");
    bool imaginary = false;
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      imaginary = true;
      advance();
    }
    return {value, imaginary};
  }

  bool starts_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  int line() const { return line_; }
  int col() const { return col_; }

private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  Parser(Lexer& lex, const std::map<std::string, int>& var_index, int num_vars)
      : lex_(lex), var_index_(var_index), num_vars_(num_vars) {}

  Poly expression() {
    Poly p = lex_.accept('-') ? Poly(num_vars_) - term() : term();
    for (;;) {
      if (lex_.accept('+'))
        p += term();
      else if (lex_.accept('-'))
        p -= term();
      else
        return p;
    }
  }

private:
  Poly term() {
    Poly p = factor();
    while (lex_.accept('*')) p = p * factor();
    return p;
  }

  Poly factor() {
    Poly base = atom();
    if (lex_.accept('^')) {
      auto [e, imag] = lex_.number();
      if (imag || e != std::floor(e) || e < 0 || e > 64) lex_.fail("exponent must be a small non-negative integer");
      Poly out = Poly::constant(num_vars_, Cx(1.0, 0.0));
      for (int k = 0; k < static_cast<int>(e); ++k) out = out * base;
      return out;
    }
    return base;
  }

  Poly atom() {
    if (lex_.accept('(')) {
      Poly p = expression();
      lex_.expect(')', "closing parenthesis");
      return p;
    }
    if (lex_.accept('-')) return Poly(num_vars_) - factor();
    if (lex_.starts_number()) {
      auto [v, imag] = lex_.number();
      return Poly::constant(num_vars_, imag ? Cx(0.0, v) : Cx(v, 0.0));
    }
    std::string id = lex_.identifier();
    if (id == "i") return Poly::constant(num_vars_, Cx(0.0, 1.0));
    auto it = var_index_.find(id);
    if (it == var_index_.end()) lex_.fail("unknown variable '" + id + "'");
    return Poly::variable(num_vars_, it->second);
  }

  Lexer& lex_;
  const std::map<std::string, int>& var_index_;
  int num_vars_;
};

std::string fmt_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fmt_coeff(Cx c) {
  if (c.imag() == 0.0) return fmt_double(c.real());
  if (c.real() == 0.0) return fmt_double(c.imag()) + "i";
  std::string s = "(" + fmt_double(c.real());
  if (c.imag() >= 0.0) s += "+";
  s += fmt_double(c.imag()) + "i)";
  return s;
}

}  // namespace

PolySystem parse_system(const std::string& text) {
  Lexer lex(text);
  PolySystem sys;
  if (lex.identifier() != "vars") lex.fail("expected 'vars' header");
  lex.expect(':', "vars header");
  std::map<std::string, int> var_index;
  for (;;) {
    std::string name = lex.identifier();
    if (name == "i") lex.fail("'i' is reserved for the imaginary unit");
    if (var_index.count(name)) lex.fail("duplicate variable '" + name + "'");
    var_index[name] = static_cast<int>(sys.vars.size());
    sys.vars.push_back(name);
    if (!lex.accept(',')) break;
  }
  lex.expect(';', "vars header");
  if (lex.identifier() != "dim") lex.fail("expected 'dim' header");
  lex.expect(':', "dim header");
  auto [dim, imag] = lex.number();
  if (imag || dim != std::floor(dim) || dim < 0) lex.fail("dim must be a non-negative integer");
  sys.declared_dim = static_cast<int>(dim);
  lex.expect(';', "dim header");

  int n = sys.ambient_dim();
  if (sys.declared_dim >= n) lex.fail("dim must be smaller than the number of variables");
  Parser parser(lex, var_index, n);
  while (!lex.eof()) {
    sys.polys.push_back(parser.expression());
    lex.expect(';', "polynomial terminator");
  }
  if (sys.polys.empty()) lex.fail("no polynomials given");
  return sys;
}

std::string print_poly(const Poly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : p.terms()) {
    Cx c = t.coeff;
    if (!first) {
      if (c.imag() == 0.0 && c.real() < 0.0) {
        out += " - ";
        c = -c;
      } else {
        out += " + ";
      }
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty())
      out += fmt_coeff(c);
    else if (c == Cx(1.0, 0.0))
      out += mono;
    else
      out += fmt_coeff(c) + "*" + mono;
  }
  return out;
}

std::string print_system(const PolySystem& s) {
  std::string out = "vars: ";
  for (size_t i = 0; i < s.vars.size(); ++i) {
    if (i) out += ",";
    out += s.vars[i];
  }
  out += ";\ndim: " + std::to_string(s.declared_dim) + ";\n";
  for (const Poly& p : s.polys) out += print_poly(p, s.vars) + ";\n";
  return out;
}

}  // namespace bnk
