#include "mldforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "mldforge/errors.hpp"

namespace mldforge {

Monomial Monomial::variable(std::size_t nvars, std::size_t i, unsigned power) {
  Monomial m(nvars);
  m.exps.at(i) = power;
  return m;
}

unsigned Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > o.exps[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
  return r;
}

std::string Monomial::str(std::string_view var_prefix) const {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!exps[i]) continue;
    if (!s.empty()) s += '*';
    s += var_prefix;
    s += std::to_string(i + 1);
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = a.exps.size(); i-- > 0;)
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
  return false;
}

SparsePoly SparsePoly::constant(std::size_t nvars, const CycloScalar& c) {
  SparsePoly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t i) {
  SparsePoly p(nvars);
  p.add_term(Monomial::variable(nvars, i), CycloScalar(1));
  return p;
}

SparsePoly SparsePoly::monomial(const Monomial& m, const CycloScalar& c) {
  SparsePoly p(m.size());
  p.add_term(m, c);
  return p;
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

unsigned SparsePoly::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

unsigned SparsePoly::order() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

CycloScalar SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycloScalar() : it->second;
}

void SparsePoly::add_term(const Monomial& m, const CycloScalar& c) {
  if (c.is_zero()) return;
  if (m.size() != nvars_) throw Error(ErrorKind::InternalError, "monomial arity mismatch");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (is_zero() && nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (is_zero() && nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly r(std::max(nvars_, o.nvars_));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

SparsePoly SparsePoly::scaled(const CycloScalar& c) const {
  SparsePoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, x * c);
  return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(nvars_, CycloScalar(1));
  SparsePoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
  return true;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exps.at(var);
    if (!e) continue;
    Monomial d = m;
    --d.exps[var];
    r.add_term(d, c * CycloScalar(static_cast<long>(e)));
  }
  return r;
}

CycloScalar SparsePoly::evaluate(const Vector& point) const {
  if (point.size() < nvars_) throw Error(ErrorKind::InvalidInput, "point has too few coordinates");
  CycloScalar sum;
  for (const auto& [m, c] : terms_) {
    CycloScalar term = c;
    for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i)
      if (m.exps[i]) term *= point[i].pow(m.exps[i]);
    sum += term;
  }
  return sum;
}

unsigned SparsePoly::field_order() const {
  unsigned m = 1;
  for (const auto& [mono, c] : terms_)
    if (!c.is_rational()) m = lcm_order(m, c.order());
  return m;
}

std::string coefficient_prefix(const CycloScalar& c, unsigned display_order, bool first, bool has_monomial) {
  std::string sep = first ? "" : " + ";
  std::string body;
  if (c.is_rational()) {
    Rational r = c.rational_value();
    if (r.sign() < 0) {
      sep = first ? "-" : " - ";
      r = -r;
    }
    if (!has_monomial) return sep + r.str();
    body = r == Rational(1) ? "" : r.str() + "*";
    return sep + body;
  }
  std::string s = c.str(display_order);
  bool simple = s.find(' ') == std::string::npos;
  if (simple && s.front() == '-') {
    sep = first ? "-" : " - ";
    s.erase(0, 1);
  } else if (!simple) {
    s = "(" + s + ")";
  }
  return sep + s + (has_monomial ? "*" : "");
}

std::string SparsePoly::str(unsigned display_order) const {
  if (terms_.empty()) return "0";
  if (display_order == 0) display_order = field_order();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool has_mono = m.degree() > 0;
    out += coefficient_prefix(c, display_order, first, has_mono);
    if (has_mono) out += m.str();
    first = false;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opt)
      : text_(text), opt_(opt), width_(opt.nvars + (opt.allow_t ? 1 : 0)) {}

  SparsePoly parse() {
    skip();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    SparsePoly p = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  SparsePoly expr() {
    bool negate = false;
    if (peek('-')) {
      negate = true;
      ++pos_;
    }
    SparsePoly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  SparsePoly term() {
    SparsePoly acc = power();
    while (peek('*')) {
      ++pos_;
      acc = acc * power();
    }
    return acc;
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      mpz_class e = integer();
      if (e > 4096) throw SyntaxError(start, "exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  SparsePoly atom() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (!peek(')')) throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek('/')) {
        ++pos_;
        skip();
        std::size_t at = pos_;
        den = integer();
        if (den == 0) throw SyntaxError(at, "zero denominator");
      }
      return SparsePoly::constant(width_, CycloScalar(Rational(num, den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "z") return SparsePoly::constant(width_, CycloScalar::zeta(opt_.cyclotomic_order));
      if (name == "t" && opt_.allow_t) return SparsePoly::variable(width_, opt_.nvars);
      if (name.size() > 1 && name[0] == 'x' &&
          std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        unsigned long k = std::stoul(name.substr(1));
        if (k >= 1 && k <= opt_.nvars) return SparsePoly::variable(width_, k - 1);
      }
      throw Error(ErrorKind::UnknownVariable, "unknown variable '" + name + "' at offset " + std::to_string(start));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  ParseOptions opt_;
  std::size_t width_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_poly(std::string_view text, const ParseOptions& options) {
  if (options.cyclotomic_order == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  return Parser(text, options).parse();
}

SparsePoly parse_poly(std::string_view text, std::size_t nvars, unsigned cyclotomic_order) {
  return parse_poly(text, ParseOptions{nvars, cyclotomic_order, false});
}

CycloScalar parse_scalar(std::string_view text, unsigned cyclotomic_order) {
  SparsePoly p = parse_poly(text, 0, cyclotomic_order);
  return p.coefficient(Monomial(0));
}

namespace {

// Caches powers of the linear forms sum_j gamma_ij x_j.
class LinearPowers {
 public:
  LinearPowers(const Matrix& gamma, std::size_t nvars) : powers_(gamma.rows()) {
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
      SparsePoly l(nvars);
      for (std::size_t j = 0; j < gamma.cols(); ++j) l.add_term(Monomial::variable(nvars, j), gamma(i, j));
      powers_[i].push_back(SparsePoly::constant(nvars, CycloScalar(1)));
      powers_[i].push_back(std::move(l));
    }
  }

  const SparsePoly& get(std::size_t i, unsigned e) {
    auto& v = powers_[i];
    while (v.size() <= e) v.push_back(v.back() * v[1]);
    return v[e];
  }

 private:
  std::vector<std::vector<SparsePoly>> powers_;
};

}  // namespace

SparsePoly act(const Matrix& gamma, const SparsePoly& f) {
  const std::size_t n = f.nvars();
  if (gamma.rows() != gamma.cols() || gamma.rows() > n)
    throw Error(ErrorKind::InternalError, "matrix does not match polynomial arity");
  const std::size_t k = gamma.rows();
  SparsePoly result(n);
  if (gamma.is_diagonal()) {
    for (const auto& [m, c] : f.terms()) {
      CycloScalar s = c;
      for (std::size_t i = 0; i < k; ++i)
        if (m.exps[i]) s *= gamma(i, i).pow(m.exps[i]);
      result.add_term(m, s);
    }
    return result;
  }
  LinearPowers lp(gamma, n);
  for (const auto& [m, c] : f.terms()) {
    // Variables beyond the matrix size (e.g. t) are carried along unchanged.
    Monomial rest(n);
    for (std::size_t i = k; i < n; ++i) rest.exps[i] = m.exps[i];
    SparsePoly term = SparsePoly::monomial(rest, c);
    for (std::size_t i = 0; i < k; ++i)
      if (m.exps[i]) term = term * lp.get(i, m.exps[i]);
    result += term;
  }
  return result;
}

SparsePoly translate(const SparsePoly& f, const Vector& p) {
  const std::size_t n = f.nvars();
  if (p.size() > n) throw Error(ErrorKind::InvalidInput, "point has too many coordinates");
  std::vector<std::vector<SparsePoly>> powers(p.size());
  auto shifted_power = [&](std::size_t i, unsigned e) -> const SparsePoly& {
    auto& v = powers[i];
    if (v.empty()) {
      v.push_back(SparsePoly::constant(n, CycloScalar(1)));
      SparsePoly l = SparsePoly::variable(n, i);
      l.add_term(Monomial(n), p[i]);
      v.push_back(std::move(l));
    }
    while (v.size() <= e) v.push_back(v.back() * v[1]);
    return v[e];
  };
  SparsePoly result(n);
  for (const auto& [m, c] : f.terms()) {
    Monomial rest(n);
    for (std::size_t i = p.size(); i < n; ++i) rest.exps[i] = m.exps[i];
    SparsePoly term = SparsePoly::monomial(rest, c);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (m.exps[i]) term = term * shifted_power(i, m.exps[i]);
    result += term;
  }
  return result;
}

namespace {

// Returns a with act(gamma, f) = zeta_d^a f, or throws with a witness.
unsigned character_value(const Matrix& gamma, const SparsePoly& f, unsigned d, std::size_t element) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no character");
  SparsePoly g = act(gamma, f);
  const auto& [lead, lead_coeff] = *f.terms().begin();
  CycloScalar ratio = g.coefficient(lead) / lead_coeff;
  SparsePoly diff = g - f.scaled(ratio);
  if (!diff.is_zero()) {
    std::string other = diff.terms().begin()->first.str();
    throw NotSemiInvariantError(element, lead.str(), other,
                                "polynomial is not semi-invariant under element " + std::to_string(element) +
                                    ": coefficient ratios of " + lead.str() + " and " + other + " differ");
  }
  if (ratio.is_zero()) throw NotSemiInvariantError(element, lead.str(), lead.str(), "image vanishes");
  try {
    return root_of_unity_log(ratio, d);
  } catch (const Error&) {
    throw NotSemiInvariantError(element, lead.str(), lead.str(),
                                "character value " + ratio.str() + " is not a " + std::to_string(d) + "-th root of unity");
  }
}

}  // namespace

Character semi_invariant_character(const FiniteGroup& g, const SparsePoly& f) {
  const unsigned d = g.order();
  Character ch;
  ch.d = d;
  std::vector<int> value(d, -1);
  value[0] = 0;
  for (std::size_t gi : g.generators())
    value[gi] = static_cast<int>(character_value(g.element(gi).matrix, f, d, gi));
  // Elements are listed breadth-first, so every element is reached by
  // right-multiplying an earlier one by a generator.
  std::vector<std::size_t> queue{0};
  std::vector<bool> seen(d, false);
  seen[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::size_t a = queue[q];
    for (std::size_t gi : g.generators()) {
      std::size_t b = g.multiply(a, gi);
      int expected = static_cast<int>((value[a] + value[gi]) % d);
      if (value[b] < 0) {
        value[b] = expected;
      } else if (value[b] != expected) {
        throw Error(ErrorKind::InternalError, "character is not a homomorphism");
      }
      if (!seen[b]) {
        seen[b] = true;
        queue.push_back(b);
      }
    }
  }
  ch.exponents.reserve(d);
  for (int v : value) {
    if (v < 0) throw Error(ErrorKind::InternalError, "group is not generated by its generators");
    ch.exponents.push_back(static_cast<unsigned>(v));
  }
  return ch;
}

Rational weight(const Matrix& gamma, const SparsePoly& f, unsigned d) {
  return Rational(static_cast<long>(character_value(gamma, f, d, 0)), static_cast<long>(d));
}

Rational weight_total(const Matrix& gamma, const std::vector<SparsePoly>& fs, unsigned d) {
  Rational sum;
  for (const auto& f : fs) sum += weight(gamma, f, d);
  return sum;
}

bool is_invariant(const FiniteGroup& g, const SparsePoly& f) {
  for (std::size_t gi : g.generators())
    if (!(act(g.element(gi).matrix, f) == f)) return false;
  return true;
}

namespace {

// All exponent vectors of total degree k in n variables, in degrevlex-ascending
// enumeration order (deterministic).
void monomials_of_degree(std::size_t n, unsigned k, std::vector<Monomial>& out) {
  Monomial m(n);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      m.exps[i] = left;
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m.exps[i] = e;
      rec(i + 1, left - e);
    }
    m.exps[i] = 0;
  };
  if (n == 0) {
    if (k == 0) out.push_back(m);
    return;
  }
  rec(0, k);
}

std::vector<SparsePoly> diagonal_invariants(const FiniteGroup& g, unsigned bound) {
  const std::size_t n = g.dimension();
  const unsigned d = g.order();
  std::vector<std::vector<unsigned>> chars;
  for (std::size_t gi : g.generators()) {
    std::vector<unsigned> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = root_of_unity_log(g.element(gi).matrix(i, i), d);
    chars.push_back(std::move(w));
  }
  std::vector<Monomial> found;
  std::vector<SparsePoly> out;
  for (unsigned k = 1; k <= bound; ++k) {
    std::vector<Monomial> cands;
    monomials_of_degree(n, k, cands);
    for (const auto& m : cands) {
      bool inv = true;
      for (const auto& w : chars) {
        unsigned long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<unsigned long>(w[i]) * m.exps[i];
        if (s % d) {
          inv = false;
          break;
        }
      }
      if (!inv) continue;
      bool reducible = std::any_of(found.begin(), found.end(), [&](const Monomial& h) { return h.divides(m); });
      if (reducible) continue;
      found.push_back(m);
      out.push_back(SparsePoly::monomial(m, CycloScalar(1)));
    }
  }
  std::sort(out.begin(), out.end(), [](const SparsePoly& a, const SparsePoly& b) {
    return degrevlex_greater(a.leading_monomial(), b.leading_monomial());
  });
  return out;
}

// Incremental row-echelon basis of a space of polynomials over Q(zeta_m).
class PolySpan {
 public:
  // Returns true if p was independent (and adds it).
  bool add(SparsePoly p) {
    reduce(p);
    if (p.is_zero()) return false;
    p = p.scaled(p.terms().begin()->second.inverse());
    basis_.push_back(std::move(p));
    return true;
  }

  bool contains(SparsePoly p) const {
    reduce(p);
    return p.is_zero();
  }

 private:
  void reduce(SparsePoly& p) const {
    bool changed = true;
    while (changed && !p.is_zero()) {
      changed = false;
      for (const auto& b : basis_) {
        CycloScalar c = p.coefficient(b.leading_monomial());
        if (c.is_zero()) continue;
        p -= b.scaled(c);
        changed = true;
      }
    }
  }

  std::vector<SparsePoly> basis_;
};

std::vector<SparsePoly> reynolds_invariants(const FiniteGroup& g, unsigned bound) {
  const std::size_t n = g.dimension();
  const unsigned d = g.order();
  std::vector<SparsePoly> gens;
  std::vector<unsigned> gen_deg;
  CycloScalar inv_order = CycloScalar(Rational(1, static_cast<long>(d)));
  for (unsigned k = 1; k <= bound; ++k) {
    PolySpan span;
    // Products of lower-degree generators landing exactly in degree k.
    std::function<void(std::size_t, unsigned, const SparsePoly&)> products =
        [&](std::size_t from, unsigned left, const SparsePoly& acc) {
          if (left == 0) {
            span.add(acc);
            return;
          }
          for (std::size_t i = from; i < gens.size(); ++i)
            if (gen_deg[i] <= left && gen_deg[i] < k) products(i, left - gen_deg[i], acc * gens[i]);
        };
    products(0, k, SparsePoly::constant(n, CycloScalar(1)));
    std::vector<Monomial> mons;
    monomials_of_degree(n, k, mons);
    std::reverse(mons.begin(), mons.end());
    for (const auto& m : mons) {
      SparsePoly x = SparsePoly::monomial(m, CycloScalar(1));
      SparsePoly avg(n);
      for (const auto& el : g.elements()) avg += act(el.matrix, x);
      avg = avg.scaled(inv_order);
      if (avg.is_zero()) continue;
      if (span.add(avg)) {
        avg = avg.scaled(avg.terms().begin()->second.inverse());
        gens.push_back(avg);
        gen_deg.push_back(k);
      }
    }
  }
  return gens;
}

}  // namespace

std::vector<SparsePoly> invariant_generators(const FiniteGroup& g, unsigned degree_bound) {
  unsigned bound = degree_bound ? degree_bound : g.order();
  if (g.order() == 1) bound = 1;
  if (g.is_diagonal()) return diagonal_invariants(g, bound);
  return reynolds_invariants(g, bound);
}

void RIdealSpec::check() const {
  for (const auto& f : factors) {
    if (f.exponent.sign() <= 0) throw Error(ErrorKind::InvalidInput, "ideal exponents must be positive");
    bool nonzero = std::any_of(f.gens.begin(), f.gens.end(), [](const SparsePoly& p) { return !p.is_zero(); });
    if (!nonzero) throw Error(ErrorKind::InvalidInput, "ideal factor has no nonzero generator");
  }
}

}  // namespace mldforge
