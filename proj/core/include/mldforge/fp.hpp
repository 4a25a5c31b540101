#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mldforge/cyclo.hpp"
#include "mldforge/poly.hpp"

namespace mldforge {

using fp_t = std::uint32_t;

inline fp_t fp_add(fp_t a, fp_t b, fp_t p) {
  std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<fp_t>(s >= p ? s - p : s);
}
inline fp_t fp_sub(fp_t a, fp_t b, fp_t p) { return a >= b ? a - b : a + (p - b); }
inline fp_t fp_mul(fp_t a, fp_t b, fp_t p) {
  return static_cast<fp_t>(static_cast<std::uint64_t>(a) * b % p);
}
inline fp_t fp_neg(fp_t a, fp_t p) { return a ? p - a : 0; }
fp_t fp_pow(fp_t a, std::uint64_t e, fp_t p);
fp_t fp_inv(fp_t a, fp_t p);

bool is_prime_u32(std::uint32_t n);

// Primes used when nothing is configured: the smallest primes above 2^30
// that are 1 modulo the cyclotomic order.
inline constexpr std::uint32_t kPrimeFloor = 1u << 30;
std::vector<std::uint32_t> default_primes(unsigned cyclotomic_order, std::size_t count = 2);

// Q(zeta_M) -> F_p with zeta_M mapped to g^((p-1)/M), g the least primitive root.
class PrimeField {
 public:
  // Throws BadPrime when p is not a prime above the floor or p != 1 mod M.
  PrimeField(std::uint32_t p, unsigned cyclotomic_order);

  std::uint32_t p() const { return p_; }
  unsigned order() const { return order_; }
  fp_t omega() const { return omega_; }

  // Throws BadPrime when a denominator vanishes mod p.
  fp_t of(const Rational& r) const;
  fp_t of(const CycloScalar& s) const;

 private:
  std::uint32_t p_;
  unsigned order_;
  fp_t omega_;
};

// A monomial over F_p as a sorted list of variable indices, one entry per
// unit of exponent (x3^2*x5 -> {3, 3, 5}).
using FpMono = std::vector<std::uint16_t>;

FpMono fp_mono_mul(const FpMono& a, const FpMono& b);

// Sparse polynomial over F_p in numbered variables.
class FpPoly {
 public:
  using Terms = std::map<FpMono, fp_t>;

  FpPoly() = default;
  static FpPoly constant(fp_t c);
  static FpPoly variable(std::uint16_t v);

  const Terms& terms() const { return terms_; }
  Terms& terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const FpMono& m, fp_t c, fp_t p);
  void add(const FpPoly& o, fp_t p);
  void add_scaled(const FpPoly& o, fp_t c, fp_t p);
  FpPoly mul(const FpPoly& o, fp_t p) const;
  FpPoly scaled(fp_t c, fp_t p) const;

  // Printed with the given variable namer.
  template <class Namer>
  std::string str(Namer&& name) const;

 private:
  Terms terms_;
};

template <class Namer>
std::string FpPoly::str(Namer&& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::string> parts;
    if (m.empty() || c != 1) parts.push_back(std::to_string(c));
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      parts.push_back(name(m[i]) + (j - i > 1 ? "^" + std::to_string(j - i) : ""));
      i = j;
    }
    if (!out.empty()) out += " + ";
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
  }
  return out;
}

}  // namespace mldforge
