#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mldforge/cyclo.hpp"
#include "mldforge/group.hpp"

namespace mldforge {

// Exponent vector x^m.
struct Monomial {
  std::vector<unsigned> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1);

  std::size_t size() const { return exps.size(); }
  unsigned degree() const;
  bool divides(const Monomial& o) const;

  Monomial operator*(const Monomial& o) const;
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }

  std::string str(std::string_view var_prefix = "x") const;
};

// Strict "a > b" in the degree reverse lexicographic order.
bool degrevlex_greater(const Monomial& a, const Monomial& b);

struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_greater(a, b); }
};

// Sparse polynomial in x_1..x_N over Q(zeta_m). Terms are kept in degrevlex
// order, largest first, with no zero coefficients.
class SparsePoly {
 public:
  using Terms = std::map<Monomial, CycloScalar, DegRevLexGreater>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const CycloScalar& c);
  static SparsePoly variable(std::size_t nvars, std::size_t i);
  static SparsePoly monomial(const Monomial& m, const CycloScalar& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  unsigned degree() const;
  // Lowest total degree among the terms; 0 for the zero polynomial.
  unsigned order() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  CycloScalar coefficient(const Monomial& m) const;

  // Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial& m, const CycloScalar& c);

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(const CycloScalar& c) const;
  SparsePoly pow(unsigned e) const;

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

  SparsePoly derivative(std::size_t var) const;
  CycloScalar evaluate(const Vector& point) const;
  // Lowest cyclotomic order containing all coefficients.
  unsigned field_order() const;

  // Printed in the input grammar: variables x1..xN, `z` = zeta_m with
  // m = display_order (0 = the coefficients' own field).
  std::string str(unsigned display_order = 0) const;
  friend std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.str(); }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Formats a coefficient for use in front of a monomial ("", "-", "3*", "(z + 1)*").
std::string coefficient_prefix(const CycloScalar& c, unsigned display_order, bool first, bool has_monomial);

struct ParseOptions {
  std::size_t nvars = 0;
  unsigned cyclotomic_order = 1;
  // When set, the identifier `t` is accepted and mapped to variable index nvars.
  bool allow_t = false;
};

// Grammar: sums/differences of products of powers of atoms; atoms are
// integers, rationals p/q, `z`, variables x1..xN and parenthesized
// expressions. Throws SyntaxError (with byte offset) or UnknownVariable.
SparsePoly parse_poly(std::string_view text, std::size_t nvars, unsigned cyclotomic_order);
SparsePoly parse_poly(std::string_view text, const ParseOptions& options);

// Parses a constant (matrix entry, point coordinate).
CycloScalar parse_scalar(std::string_view text, unsigned cyclotomic_order);

// f(gamma x): substitutes the variable column x by gamma * x. Any square
// matrix is accepted (also used for changes of coordinates).
SparsePoly act(const Matrix& gamma, const SparsePoly& f);

// f(x + p).
SparsePoly translate(const SparsePoly& f, const Vector& p);

// a_gamma for every element of G with gamma(f) = zeta_d^a_gamma f.
struct Character {
  std::vector<unsigned> exponents;  // indexed like G.elements()
  unsigned d = 1;
};

// Throws NotSemiInvariantError with the first offending element (generators
// are checked first) and the mismatched monomials.
Character semi_invariant_character(const FiniteGroup& g, const SparsePoly& f);

// a/d for gamma(f) = zeta_d^a f. Throws NotSemiInvariantError.
Rational weight(const Matrix& gamma, const SparsePoly& f, unsigned d);

// Sum of the weights, not reduced modulo 1.
Rational weight_total(const Matrix& gamma, const std::vector<SparsePoly>& fs, unsigned d);

// Generators of the invariant ring up to the given degree. Diagonal groups
// get the Hilbert basis of the invariant monoid; other groups get Reynolds
// images reduced modulo the subalgebra generated in lower degrees.
// degree_bound = 0 means the Noether bound |G|.
std::vector<SparsePoly> invariant_generators(const FiniteGroup& g, unsigned degree_bound = 0);

bool is_invariant(const FiniteGroup& g, const SparsePoly& f);

// One factor a_i^{delta_i} of an R-ideal.
struct IdealFactor {
  std::vector<SparsePoly> gens;
  Rational exponent{1};
  // Optional: semi-invariant polynomials whose product, raised to |G|, is the
  // single generator. Lets engines use the twisted form of the factor.
  std::vector<SparsePoly> root;
};

// Formal product of ideals with positive rational exponents; empty = unit ideal.
struct RIdealSpec {
  std::vector<IdealFactor> factors;

  bool is_unit() const { return factors.empty(); }
  // Throws InvalidInput when a factor has no nonzero generator or a
  // non-positive exponent.
  void check() const;
};

}  // namespace mldforge
