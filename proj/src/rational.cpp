#include "pathtsp/rational.hpp"

#include <cctype>
#include <limits>

#include "pathtsp/errors.hpp"

namespace pathtsp {

Rational make_rational(long num, long den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den)) ||
      (!den.empty() && (den.front() == '-' || den.front() == '+'))) {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  std::string n_str(num);
  if (n_str.front() == '+') n_str.erase(0, 1);
  mpz_class n(n_str, 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_decimal(const Rational& r, int places) {
  mpz_class pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  const Rational scaled = abs(r) * pow10 + Rational(1, 2);
  const mpz_class digits = floor(scaled);
  std::string body = digits.get_str();
  if (places > 0) {
    if (body.size() <= static_cast<std::size_t>(places)) {
      body.insert(0, static_cast<std::size_t>(places) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(places), ".");
  }
  if (r < 0 && digits != 0) body.insert(0, "-");
  return body;
}

mpz_class floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

mpz_class ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

ScaledIntegers scale_to_integers(std::span<const Rational> values, std::size_t headroom_terms) {
  ScaledIntegers out;
  out.scale = 1;
  for (const Rational& v : values) {
    mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), v.get_den_mpz_t());
  }
  // Keep every partial sum of `headroom_terms` values below 2^62.
  const mpz_class limit = (mpz_class(1) << 62) / mpz_class(static_cast<unsigned long>(headroom_terms + 1));
  out.values.reserve(values.size());
  out.fits = true;
  for (const Rational& v : values) {
    mpz_class scaled = v.get_num() * (out.scale / v.get_den());
    if (abs(scaled) > limit) {
      out.fits = false;
      out.values.clear();
      return out;
    }
    out.values.push_back(scaled.get_si());
  }
  return out;
}

}  // namespace pathtsp
