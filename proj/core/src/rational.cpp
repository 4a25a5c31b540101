#include "mldforge/rational.hpp"

#include <cctype>

#include "mldforge/errors.hpp"

namespace mldforge {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw Error(ErrorKind::InvalidInput, "not a rational: '" + s + "'");
    return Rational(mpz_class(strip_plus(s)), mpz_class(1));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::InvalidInput, "not a rational: '" + s + "'");
  return Rational(mpz_class(strip_plus(num)), mpz_class(den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  value_ /= o.value_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

long Rational::to_long() const {
  if (!is_integer() || !value_.get_num().fits_slong_p())
    throw Error(ErrorKind::InternalError, "rational " + str() + " is not a machine integer");
  return value_.get_num().get_si();
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(value_.get_num().get_str(16));
  h ^= std::hash<std::string>{}(value_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotARootOfUnity: return "NotARootOfUnity";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NotSemiInvariant: return "NotSemiInvariant";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::LevelTooSmall: return "LevelTooSmall";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::PseudoReflection: return "PseudoReflection";
    case ErrorKind::BranchLocusTooBig: return "BranchLocusTooBig";
    case ErrorKind::NotCompleteIntersection: return "NotCompleteIntersection";
    case ErrorKind::IdealVanishesOnY: return "IdealVanishesOnY";
    case ErrorKind::PointNotOnY: return "PointNotOnY";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

bool is_rejection(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InternalError:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::OrderCapExceeded:
      return false;
    default:
      return true;
  }
}

}  // namespace mldforge
