#include "mldforge/fp.hpp"

#include <algorithm>

#include "mldforge/errors.hpp"

namespace mldforge {

fp_t fp_pow(fp_t a, std::uint64_t e, fp_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<fp_t>(r);
}

fp_t fp_inv(fp_t a, fp_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod p");
  return fp_pow(a, p - 2, p);
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u})
    if (n % q == 0) return n == q;
  std::uint32_t d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u}) {
    std::uint64_t x = fp_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> default_primes(unsigned cyclotomic_order, std::size_t count) {
  const std::uint64_t m = std::max(1u, cyclotomic_order);
  std::uint64_t p = (static_cast<std::uint64_t>(kPrimeFloor) / m + 1) * m + 1;
  std::vector<std::uint32_t> out;
  for (; out.size() < count; p += m) {
    if (p > 0xffffffffULL) throw Error(ErrorKind::BadPrime, "no suitable 32-bit prime");
    if (is_prime_u32(static_cast<std::uint32_t>(p))) out.push_back(static_cast<std::uint32_t>(p));
  }
  return out;
}

namespace {

fp_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t n = p - 1;
  for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= n; ++q)
    if (n % q == 0) {
      factors.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) factors.push_back(n);
  for (fp_t g = 2;; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(), [&](std::uint32_t q) { return fp_pow(g, (p - 1) / q, p) != 1; });
    if (ok) return g;
  }
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p, unsigned cyclotomic_order) : p_(p), order_(std::max(1u, cyclotomic_order)) {
  if (p <= kPrimeFloor || !is_prime_u32(p))
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not a prime above 2^30");
  if ((p - 1) % order_ != 0)
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not 1 modulo " + std::to_string(order_));
  omega_ = fp_pow(primitive_root(p), (p - 1) / order_, p);
}

fp_t PrimeField::of(const Rational& r) const {
  mpz_class num = r.numerator() % p_;
  if (num < 0) num += p_;
  mpz_class den = r.denominator() % p_;
  if (den == 0) throw Error(ErrorKind::BadPrime, "denominator of " + r.str() + " vanishes mod " + std::to_string(p_));
  return fp_mul(static_cast<fp_t>(num.get_ui()), fp_inv(static_cast<fp_t>(den.get_ui()), p_), p_);
}

fp_t PrimeField::of(const CycloScalar& s) const {
  if (s.is_rational()) return of(s.rational_value());
  if (order_ % s.order() != 0)
    throw Error(ErrorKind::BadPrime, "Q(zeta_" + std::to_string(s.order()) + ") does not embed for this prime");
  const fp_t root = fp_pow(omega_, order_ / s.order(), p_);
  fp_t acc = 0, power = 1;
  for (const auto& c : s.reduced()) {
    if (!c.is_zero()) acc = fp_add(acc, fp_mul(of(c), power, p_), p_);
    power = fp_mul(power, root, p_);
  }
  return acc;
}

FpMono fp_mono_mul(const FpMono& a, const FpMono& b) {
  FpMono r(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), r.begin());
  return r;
}

FpPoly FpPoly::constant(fp_t c) {
  FpPoly r;
  if (c) r.terms_.emplace(FpMono{}, c);
  return r;
}

FpPoly FpPoly::variable(std::uint16_t v) {
  FpPoly r;
  r.terms_.emplace(FpMono{v}, 1);
  return r;
}

void FpPoly::add_term(const FpMono& m, fp_t c, fp_t p) {
  if (!c) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = fp_add(it->second, c, p);
  if (!it->second) terms_.erase(it);
}

void FpPoly::add(const FpPoly& o, fp_t p) {
  for (const auto& [m, c] : o.terms_) add_term(m, c, p);
}

void FpPoly::add_scaled(const FpPoly& o, fp_t c, fp_t p) {
  if (!c) return;
  for (const auto& [m, x] : o.terms_) add_term(m, fp_mul(x, c, p), p);
}

FpPoly FpPoly::mul(const FpPoly& o, fp_t p) const {
  FpPoly r;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(fp_mono_mul(a, b), fp_mul(ca, cb, p), p);
  return r;
}

FpPoly FpPoly::scaled(fp_t c, fp_t p) const {
  FpPoly r;
  if (!c) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, fp_mul(x, c, p));
  return r;
}

}  // namespace mldforge
