#include "plsurf/rational.hpp"

#include "plsurf/errors.hpp"

namespace plsurf {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { fail(ErrorCode::SchemaError, "malformed rational \"" + s + "\""); };
  if (s.empty()) bad();
  // cpp_rational accepts hex/octal prefixes; restrict to plain decimal p or p/q.
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view part) {
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(s)) bad();
  } else {
    std::string_view num(s.data(), slash), den(s.data() + slash + 1, s.size() - slash - 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+') bad();
  }
  try {
    return Rational(s);
  } catch (const std::exception&) {
    bad();
  }
  return {};
}

std::string format_rational(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational mod_one(const Rational& value) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  cpp_int r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

int sign(const Rational& value) { return value.sign(); }

}  // namespace plsurf
