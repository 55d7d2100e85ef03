#include "k3/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace k3 {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::string_view den = text.substr(slash + 1);
  if (!den.empty() && (den.front() == '-' || den.front() == '+')) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), d);
}

std::string Rational::str() const { return v_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(int e) const {
  if (e < 0) return Rational(1) / pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  mpz_class n = r.num(), d = r.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(sn, sd);
}

}  // namespace k3
