#include "ldcflow/rational.hpp"

#include <cctype>
#include <ostream>

#include "ldcflow/errors.hpp"

namespace ldc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::EdgeOverlap: return "EdgeOverlap";
    case ErrorCode::RoleConflict: return "RoleConflict";
    case ErrorCode::MalformedProgram: return "MalformedProgram";
    case ErrorCode::NotFixedSusceptance: return "NotFixedSusceptance";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooManyFactsEdges: return "TooManyFactsEdges";
    case ErrorCode::NonpositiveX: return "NonpositiveX";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::NotACertificate: return "NotACertificate";
    case ErrorCode::NotOptimal: return "NotOptimal";
    case ErrorCode::DecodingFailed: return "DecodingFailed";
  }
  return "Error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::Parse, "not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
  v_ = mpq_class(num, 1);
  v_ /= den;
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad(text);
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      bad(text);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const std::string digits = std::string(whole) + std::string(frac);
    value = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(body)) bad(text);
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

std::string Rational::numerator() const { return v_.get_num().get_str(); }
std::string Rational::denominator() const { return v_.get_den().get_str(); }

std::string Rational::str() const {
  if (is_integer()) return numerator();
  return numerator() + "/" + denominator();
}

bool Rational::has_exact_decimal() const {
  mpz_class d = v_.get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

std::string Rational::decimal(int digits) const {
  const bool negative = sign() < 0;
  mpz_class num = abs().raw().get_num();
  const mpz_class den = v_.get_den();

  // Count the fractional digits needed for an exact rendering, capped.
  int places = digits;
  if (has_exact_decimal()) {
    places = 0;
    mpz_class scaled = num;
    while (!mpz_divisible_p(scaled.get_mpz_t(), den.get_mpz_t())) {
      scaled *= 10;
      ++places;
    }
  }

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  mpz_class scaled = num * scale;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;  // round half up for non-terminating expansions

  std::string s = q.get_str();
  if (places > 0) {
    if (static_cast<int>(s.size()) <= places) s.insert(0, places + 1 - s.size(), '0');
    s.insert(s.size() - places, ".");
    if (!has_exact_decimal()) {
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
  }
  if (negative && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "-");
  return s;
}

Rational Rational::abs() const {
  Rational r;
  mpq_abs(r.v_.get_mpq_t(), v_.get_mpq_t());
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  mpq_sub(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.v_.get_mpq_t(), v_.get_mpq_t());
  return r;
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace ldc
