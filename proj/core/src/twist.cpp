#include "mldforge/twist.hpp"

#include "mldforge/errors.hpp"

namespace mldforge {

bool TMonomialGreater::operator()(const TMonomial& a, const TMonomial& b) const {
  if (degrevlex_greater(a.x, b.x)) return true;
  if (degrevlex_greater(b.x, a.x)) return false;
  return a.t > b.t;
}

TPoly TPoly::from_poly(const SparsePoly& f) {
  TPoly p(f.nvars());
  for (const auto& [m, c] : f.terms()) p.add_term(m, Rational(0), c);
  return p;
}

void TPoly::add_term(const Monomial& x, const Rational& t, const CycloScalar& c) {
  if (c.is_zero()) return;
  if (x.size() != nvars_) throw Error(ErrorKind::InternalError, "monomial arity mismatch");
  auto [it, inserted] = terms_.try_emplace(TMonomial{x, t}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TPoly TPoly::operator-() const {
  TPoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (is_zero() && nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m.x, m.t, c);
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (is_zero() && nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m.x, m.t, -c);
  return *this;
}

TPoly TPoly::operator*(const TPoly& o) const {
  TPoly r(std::max(nvars_, o.nvars_));
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(a.x * b.x, a.t + b.t, ca * cb);
  return r;
}

TPoly TPoly::scaled(const CycloScalar& c) const {
  TPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, x * c);
  return r;
}

TPoly TPoly::shifted(const Rational& s) const {
  TPoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), TMonomial{m.x, m.t + s}, c);
  return r;
}

bool operator==(const TPoly& a, const TPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (!(ia->first.x == ib->first.x) || ia->first.t != ib->first.t || !(ia->second == ib->second)) return false;
  return true;
}

TPoly TPoly::derivative(std::size_t var) const {
  TPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.x.exps.at(var);
    if (!e) continue;
    Monomial x = m.x;
    --x.exps[var];
    r.add_term(x, m.t, c * CycloScalar(static_cast<long>(e)));
  }
  return r;
}

bool TPoly::is_integral() const {
  for (const auto& [m, c] : terms_)
    if (!m.t.is_integer()) return false;
  return true;
}

Rational TPoly::min_t_exponent() const {
  if (terms_.empty()) return Rational(0);
  Rational lo = terms_.begin()->first.t;
  for (const auto& [m, c] : terms_)
    if (m.t < lo) lo = m.t;
  return lo;
}

SparsePoly TPoly::at_t_one() const {
  SparsePoly r(nvars_);
  for (const auto& [m, c] : terms_) r.add_term(m.x, c);
  return r;
}

SparsePoly TPoly::to_poly_with_t() const {
  if (!is_integral()) throw Error(ErrorKind::InternalError, "fractional t-exponent in " + str());
  SparsePoly r(nvars_ + 1);
  for (const auto& [m, c] : terms_) {
    Monomial x(nvars_ + 1);
    for (std::size_t i = 0; i < nvars_; ++i) x.exps[i] = m.x.exps[i];
    x.exps[nvars_] = static_cast<unsigned>(m.t.to_long());
    r.add_term(x, c);
  }
  return r;
}

std::string TPoly::str(unsigned display_order) const {
  if (terms_.empty()) return "0";
  if (display_order == 0) {
    display_order = 1;
    for (const auto& [m, c] : terms_)
      if (!c.is_rational()) display_order = lcm_order(display_order, c.order());
  }
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    if (!m.t.is_zero()) {
      mono = "t";
      if (m.t.is_integer()) {
        if (m.t != Rational(1)) mono += "^" + m.t.str();
      } else {
        mono += "^(" + m.t.str() + ")";
      }
    }
    if (m.x.degree() > 0) {
      if (!mono.empty()) mono += "*";
      mono += m.x.str();
    }
    out += coefficient_prefix(c, display_order, first, !mono.empty());
    out += mono;
    first = false;
  }
  return out;
}

SparsePoly to_eigencoordinates(const Matrix& eigenbasis, const SparsePoly& f) {
  if (eigenbasis.is_identity()) return f;
  return act(eigenbasis, f);
}

namespace {

Rational pairing(const std::vector<unsigned>& e, const Monomial& m, unsigned d) {
  long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<long>(e[i]) * m.exps[i];
  return Rational(s, static_cast<long>(d));
}

}  // namespace

TPoly lambda_star(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d) {
  if (exponents.size() != f.nvars()) throw Error(ErrorKind::InternalError, "exponent vector has wrong length");
  TPoly r(f.nvars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, pairing(exponents, m, d), c);
  return r;
}

TPoly lambda_star(const EigenData& eigen, const SparsePoly& f, unsigned d) {
  return lambda_star(eigen.exponents, f, d);
}

Rational diagonal_weight(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no weight");
  const Monomial& lead = f.leading_monomial();
  Rational p = pairing(exponents, lead, d);
  Rational w = p - Rational(p.floor(), 1);
  for (const auto& [m, c] : f.terms()) {
    Rational q = pairing(exponents, m, d);
    if (!(q - p).is_integer())
      throw NotSemiInvariantError(0, lead.str(), m.str(),
                                  "monomials " + lead.str() + " and " + m.str() + " carry different characters");
  }
  return w;
}

TPoly twisted_equation(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d) {
  Rational w = diagonal_weight(exponents, f, d);
  TPoly r = lambda_star(exponents, f, d).shifted(-w);
  if (!r.is_integral() || r.min_t_exponent().sign() < 0)
    throw Error(ErrorKind::InternalError, "twisted equation left R[t]: " + r.str());
  return r;
}

TPoly twisted_equation(const EigenData& eigen, const SparsePoly& f, unsigned d) {
  return twisted_equation(eigen.exponents, f, d);
}

TPoly TwistedScheme::pullback_raw(const SparsePoly& h) const {
  return lambda_star(exponents, to_eigencoordinates(eigenbasis, h), d);
}

TPoly TwistedScheme::pullback(const SparsePoly& h) const {
  TPoly r = pullback_raw(h);
  if (!r.is_integral()) throw Error(ErrorKind::InternalError, "pullback of an invariant is not in R[t]: " + r.str());
  return r;
}

TwistedScheme build_twisted_scheme(std::size_t gamma, const FiniteGroup& g, const std::vector<SparsePoly>& fs) {
  TwistedScheme ts;
  ts.gamma = gamma;
  ts.gamma_matrix = g.element(gamma).matrix;
  ts.d = g.order();
  const EigenData& eig = g.eigen(gamma);
  ts.exponents = eig.exponents;
  ts.eigenbasis = eig.eigenbasis;
  ts.N = g.dimension();
  ts.c = fs.size();
  ts.age = age(eig, ts.d);
  for (const auto& f : fs) {
    // Semi-invariance is checked in the original frame so the witness refers
    // to the user's coordinates.
    Rational w = weight(ts.gamma_matrix, f, ts.d);
    SparsePoly fe = to_eigencoordinates(ts.eigenbasis, f);
    TPoly eq = twisted_equation(ts.exponents, fe, ts.d);
    if (diagonal_weight(ts.exponents, fe, ts.d) != w)
      throw Error(ErrorKind::InternalError, "weight differs between frames");
    ts.eigen_equations.push_back(std::move(fe));
    ts.equations.push_back(std::move(eq));
    ts.weights.push_back(w);
    ts.weight_total += w;
  }
  return ts;
}

TPoly act_diagonal(const Matrix& diag, const TPoly& p) {
  if (!diag.is_diagonal()) throw Error(ErrorKind::InternalError, "act_diagonal needs a diagonal matrix");
  TPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    CycloScalar s = c;
    for (std::size_t i = 0; i < diag.rows(); ++i)
      if (m.x.exps[i]) s *= diag(i, i).pow(m.x.exps[i]);
    r.add_term(m.x, m.t, s);
  }
  return r;
}

}  // namespace mldforge
