#include "mldforge/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "mldforge/errors.hpp"

namespace mldforge {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

std::vector<long long> compute_cyclotomic(unsigned m) {
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    const auto& den = cyclotomic_polynomial(d);
    std::size_t dd = den.size() - 1;
    std::vector<long long> q(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      long long lead = num[i];  // den is monic
      q[i - dd] = lead;
      if (lead != 0)
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= lead * den[j];
      if (i == dd) break;
    }
    num = std::move(q);
  }
  return num;
}

// Reduce a polynomial in zeta_m to its canonical form of length phi(m).
QPoly reduce(const QPoly& poly, unsigned m) {
  const auto& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  QPoly p(std::max<std::size_t>(m, deg), Rational(0));
  for (std::size_t j = 0; j < poly.size(); ++j)
    if (!poly[j].is_zero()) p[j % m] += poly[j];
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i].is_zero()) continue;
    Rational lead = p[i];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) p[i - deg + j] -= lead * Rational(static_cast<long>(phi[j]));
    p[i] = Rational(0);
  }
  p.resize(deg);
  return p;
}

QPoly multiply(const QPoly& a, const QPoly& b) {
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Polynomial division with remainder over Q; divisor must be nonzero.
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  std::size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    q.clear();
    r = a;
    return;
  }
  q.assign(a.size() - db, Rational(0));
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i].is_zero()) continue;
    Rational c = a[i] / b[db];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  a.resize(db);
  trim(a);
  trim(q);
  r = a;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<unsigned, std::vector<long long>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  std::vector<long long> phi = m == 1 ? std::vector<long long>{-1, 1} : compute_cyclotomic(m);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(m, std::move(phi)).first->second;
}

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

CycloScalar::CycloScalar(const Rational& r) : order_(1), c_{r} {}

CycloScalar CycloScalar::zeta(unsigned m, long k) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  long e = ((k % static_cast<long>(m)) + m) % m;
  QPoly p(e + 1, Rational(0));
  p[e] = Rational(1);
  return CycloScalar(m, reduce(p, m));
}

CycloScalar CycloScalar::from_coeffs(unsigned m, const std::vector<Rational>& coeffs) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  return CycloScalar(m, reduce(coeffs, m));
}

std::vector<Rational> CycloScalar::coeffs() const {
  std::vector<Rational> out(order_, Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) out[j] = c_[j];
  return out;
}

CycloScalar CycloScalar::embed(unsigned target) const {
  if (target == order_) return *this;
  if (target % order_ != 0)
    throw Error(ErrorKind::InternalError, "cannot embed Q(zeta_" + std::to_string(order_) +
                                              ") into Q(zeta_" + std::to_string(target) + ")");
  unsigned step = target / order_;
  QPoly p((c_.size() - 1) * step + 1, Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) p[j * step] = c_[j];
  return CycloScalar(target, reduce(p, target));
}

bool CycloScalar::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return false;
  return true;
}

bool CycloScalar::is_one() const { return is_rational() && c_[0] == Rational(1); }

Rational CycloScalar::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::InternalError, "scalar " + str() + " is not rational");
  return c_[0];
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(order_) + ")");
  if (is_rational()) return CycloScalar(Rational(1) / c_[0]);
  // Extended Euclid: find u with a*u = 1 mod Phi_m.
  const auto& phi_int = cyclotomic_polynomial(order_);
  QPoly b;
  for (long long c : phi_int) b.emplace_back(static_cast<long>(c));
  QPoly a = c_;
  trim(a);
  QPoly r0 = b, r1 = a;
  QPoly s0{}, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s2 = sub(s0, multiply(q.empty() ? QPoly{Rational(0)} : q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw Error(ErrorKind::InternalError, "non-invertible cyclotomic element");
  }
  Rational inv = Rational(1) / r1[0];
  for (auto& c : s1) c *= inv;
  return CycloScalar(order_, reduce(s1, order_));
}

CycloScalar CycloScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloScalar result(Rational(1));
  CycloScalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  if (o.order_ != order_) {
    unsigned m = lcm_order(order_, o.order_);
    *this = embed(m);
    return *this += o.embed(m);
  }
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) { return *this += -o; }

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
  if (o.is_rational()) {
    const Rational& k = o.c_[0];
    for (auto& c : c_) c *= k;
    return *this;
  }
  if (is_rational()) {
    Rational k = c_[0];
    *this = o;
    for (auto& c : c_) c *= k;
    return *this;
  }
  if (o.order_ != order_) {
    unsigned m = lcm_order(order_, o.order_);
    *this = embed(m);
    return *this *= o.embed(m);
  }
  c_ = reduce(multiply(c_, o.c_), order_);
  return *this;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  unsigned m = lcm_order(a.order_, b.order_);
  return a.embed(m).c_ == b.embed(m).c_;
}

int compare(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ != b.order_) {
    unsigned m = lcm_order(a.order_, b.order_);
    return compare(a.embed(m), b.embed(m));
  }
  for (std::size_t j = 0; j < a.c_.size(); ++j) {
    auto c = a.c_[j] <=> b.c_[j];
    if (c < 0) return -1;
    if (c > 0) return 1;
  }
  return 0;
}

std::string CycloScalar::str(unsigned display_order) const {
  if (display_order == 0) display_order = order_;
  const CycloScalar v = embed(display_order);
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < v.c_.size(); ++j) {
    const Rational& c = v.c_[j];
    if (c.is_zero()) continue;
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << mag.str();
      continue;
    }
    if (mag != Rational(1)) os << mag.str() << "*";
    os << "z";
    if (j > 1) os << "^" << j;
  }
  if (first) return "0";
  return os.str();
}

std::size_t CycloScalar::hash(unsigned display_order) const {
  return std::hash<std::string>{}(str(display_order));
}

CycloScalar cyclo_normalize(const CycloScalar& s) { return CycloScalar::from_coeffs(s.order(), s.coeffs()); }

CycloScalar cyclo_inverse(const CycloScalar& s) { return s.inverse(); }

unsigned root_of_unity_log(const CycloScalar& s, unsigned d) {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "root_of_unity_log needs d > 0");
  if (!s.pow(d).is_one())
    throw Error(ErrorKind::NotARootOfUnity, s.str() + " is not a " + std::to_string(d) + "-th root of unity");
  unsigned m = lcm_order(s.order(), d);
  CycloScalar target = s.embed(m);
  CycloScalar step = CycloScalar::zeta(m, m / d);
  CycloScalar cur(1);
  for (unsigned a = 0; a < d; ++a) {
    if (cur == target) return a;
    cur *= step;
  }
  throw Error(ErrorKind::InternalError, "root of unity exponent not found");
}

}  // namespace mldforge
