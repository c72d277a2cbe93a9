#include "hypergame/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace hypergame {

Scalar rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpz_class n{std::string(num)};
  if (!s.empty() && s.front() == '-') n = -n;
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar inverse_power_of_two(std::size_t m) {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(m);
  return Scalar(mpz_class(1), den);
}

}  // namespace hypergame
