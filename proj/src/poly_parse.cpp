#include "k3/poly_parse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

namespace k3 {

namespace {

template <class R>
class Parser {
 public:
  using Lookup = std::function<std::optional<R>(const std::string&)>;

  Parser(std::string_view text, Lookup lookup) : s_(text), lookup_(std::move(lookup)) {}

  R parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    R r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  R expr() {
    R acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  R term() {
    R acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        throw ParseError("division is only allowed inside a rational literal", pos_ - 1);
      } else {
        return acc;
      }
    }
  }

  // A sign binds looser than '^': -t^2 is -(t^2).
  R power() {
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      char sign = s_[pos_++];
      R inner = power();
      return sign == '-' ? -inner : inner;
    }
    R base = atom();
    if (!eat('^')) return base;
    skip_ws();
    std::size_t start = pos_;
    std::string digits = read_digits();
    if (digits.empty()) throw ParseError("expected a non-negative integer exponent", start);
    if (digits.size() > 4) throw ParseError("exponent too large", start);
    return base.pow(std::stoi(digits));
  }

  R atom() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      std::size_t open = pos_++;
      R inner = expr();
      if (!eat(')')) throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        name += s_[pos_++];
      }
      auto v = lookup_(name);
      if (!v) throw ParseError("unknown variable '" + name + "'", start);
      return *v;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string read_digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
    return d;
  }

  R number() {
    std::size_t start = pos_;
    std::string num = read_digits();
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      throw ParseError("floating-point literal not allowed", pos_);
    }
    if (num.empty()) throw ParseError("floating-point literal not allowed", start);
    std::string den = "1";
    // A '/' directly between digits belongs to the literal: 1/2*t is (1/2)*t.
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      den = read_digits();
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
        throw ParseError("floating-point literal not allowed", pos_);
      }
    }
    if (pos_ < s_.size() && s_[pos_] == '/') throw ParseError("division is only allowed inside a rational literal", pos_);
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator", start);
    return R(Rational(mpz_class(num), d));
  }

  std::string_view s_;
  Lookup lookup_;
  std::size_t pos_ = 0;
};

}  // namespace

UniPoly parse_poly(std::string_view text, const std::string& var) {
  Parser<UniPoly> parser(text, [&](const std::string& name) -> std::optional<UniPoly> {
    if (name == var) return UniPoly::variable(var);
    return std::nullopt;
  });
  UniPoly p = parser.parse();
  return p.with_var(var);
}

SymPoly parse_sympoly(std::string_view text, const std::vector<std::string>& vars) {
  Parser<SymPoly> parser(text, [&](const std::string& name) -> std::optional<SymPoly> {
    if (std::find(vars.begin(), vars.end(), name) != vars.end()) return SymPoly::var(name);
    return std::nullopt;
  });
  return parser.parse();
}

}  // namespace k3
