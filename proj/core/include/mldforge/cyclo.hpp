#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mldforge/rational.hpp"

namespace mldforge {

// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(unsigned m);

// Euler's totient.
unsigned euler_phi(unsigned m);

unsigned lcm_order(unsigned a, unsigned b);

// Exact element of Q(zeta_m), stored as sum_j c_j zeta_m^j reduced modulo the
// m-th cyclotomic polynomial. Every value held by this class is canonical, so
// structural equality within one order is field equality. Values of different
// orders are compared through the embedding into Q(zeta_lcm).
class CycloScalar {
 public:
  CycloScalar() = default;
  CycloScalar(const Rational& r);  // NOLINT(google-explicit-constructor)
  CycloScalar(long r) : CycloScalar(Rational(r)) {}  // NOLINT(google-explicit-constructor)
  CycloScalar(int r) : CycloScalar(Rational(r)) {}   // NOLINT(google-explicit-constructor)

  // zeta_m^k for any integer k.
  static CycloScalar zeta(unsigned m, long k = 1);

  // sum_j coeffs[j] * zeta_m^j with arbitrary length; reduced on construction.
  static CycloScalar from_coeffs(unsigned m, const std::vector<Rational>& coeffs);

  unsigned order() const { return order_; }

  // Canonical representative padded to length m (coefficient of zeta_m^j at j).
  std::vector<Rational> coeffs() const;
  // Reduced coefficients, length euler_phi(order()).
  const std::vector<Rational>& reduced() const { return c_; }

  // Image under zeta_m -> zeta_target^(target/m). Requires m | target.
  CycloScalar embed(unsigned target) const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;

  CycloScalar inverse() const;
  CycloScalar pow(long e) const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  CycloScalar& operator/=(const CycloScalar& o) { return *this *= o.inverse(); }

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

  // Lexicographic order on canonical coefficients in the common field.
  friend int compare(const CycloScalar& a, const CycloScalar& b);

  // Human readable, using `z` for zeta_m where m = display_order (which must
  // be a multiple of order()). display_order = 0 means order().
  std::string str(unsigned display_order = 0) const;
  friend std::ostream& operator<<(std::ostream& os, const CycloScalar& s) { return os << s.str(); }

  std::size_t hash(unsigned display_order) const;

 private:
  CycloScalar(unsigned m, std::vector<Rational> reduced) : order_(m), c_(std::move(reduced)) {}

  unsigned order_ = 1;
  std::vector<Rational> c_{Rational(0)};
};

// Idempotent; returns the canonical representative (values are always kept
// canonical, so this is a copy).
CycloScalar cyclo_normalize(const CycloScalar& s);

// Throws DivisionByZero on zero.
CycloScalar cyclo_inverse(const CycloScalar& s);

// Returns a in [0, d) with s = zeta_d^a. Throws NotARootOfUnity if s^d != 1.
unsigned root_of_unity_log(const CycloScalar& s, unsigned d);

}  // namespace mldforge
