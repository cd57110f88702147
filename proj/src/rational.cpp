#include "orthokernel/rational.hpp"

#include <cctype>

#include "orthokernel/errors.hpp"

namespace orthokernel {

std::string to_string(const Rational& r) {
  // boost prints integers without a denominator and otherwise "p/q".
  return r.str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+')
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  using Int = boost::multiprecision::mpz_int;
  const Int p(std::string(num.front() == '+' ? num.substr(1) : num));
  const Int q{std::string(den)};
  if (q == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(p, q);
}

}  // namespace orthokernel
