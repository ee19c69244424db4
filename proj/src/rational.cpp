#include "negprob/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace negprob {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(Integer(n), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero
  Rational scaled = abs_value(value) * scale;
  Integer q = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(value) < 0 && q != 0) body.insert(0, "-");
  return body;
}

}  // namespace negprob
