#include "statcat/rational.hpp"

#include <cctype>

#include "statcat/error.hpp"

namespace statcat {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && s[0] == '-') {
    i = 1;
    if (s.size() == 1) return false;
  }
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num, true)) {
    throw ParseError("", "expected rational \"a/b\" or integer, got \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den, false)) {
      throw ParseError("", "expected positive denominator in \"" + std::string(text) + "\"");
    }
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw ParseError("", "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational sum(const RationalVector& values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace statcat
