#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "mldforge/group.hpp"
#include "mldforge/poly.hpp"

namespace mldforge {

// x^m t^s with s a non-negative rational.
struct TMonomial {
  Monomial x;
  Rational t;
};

// Degrevlex on x first, then larger t-exponent first.
struct TMonomialGreater {
  bool operator()(const TMonomial& a, const TMonomial& b) const;
};

// Element of R[t^{1/d}] with R = Q(zeta_m)[x_1..x_N].
class TPoly {
 public:
  using Terms = std::map<TMonomial, CycloScalar, TMonomialGreater>;

  TPoly() = default;
  explicit TPoly(std::size_t nvars) : nvars_(nvars) {}
  // Embeds f with all t-exponents 0.
  static TPoly from_poly(const SparsePoly& f);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& x, const Rational& t, const CycloScalar& c);

  TPoly operator-() const;
  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  TPoly operator*(const TPoly& o) const;
  TPoly scaled(const CycloScalar& c) const;
  // Multiplies by t^s (s may be negative; the caller keeps exponents >= 0).
  TPoly shifted(const Rational& s) const;
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend bool operator==(const TPoly& a, const TPoly& b);

  // d/dx_i; t is a constant of the base.
  TPoly derivative(std::size_t var) const;

  // True iff every t-exponent is an integer (the element lies in R[t]).
  bool is_integral() const;
  Rational min_t_exponent() const;

  // t = 1.
  SparsePoly at_t_one() const;
  // Integral case only: a polynomial in N + 1 variables with t last.
  SparsePoly to_poly_with_t() const;

  // Input grammar with `t` as a reserved symbol; fractional exponents are
  // printed as t^(p/q).
  std::string str(unsigned display_order = 0) const;
  friend std::ostream& operator<<(std::ostream& os, const TPoly& p) { return os << p.str(); }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Re-expresses f in the eigencoordinates of the given basis: x = P y.
SparsePoly to_eigencoordinates(const Matrix& eigenbasis, const SparsePoly& f);

// f given in eigencoordinates; x^m picks up t^{<e,m>/d}.
TPoly lambda_star(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d);
TPoly lambda_star(const EigenData& eigen, const SparsePoly& f, unsigned d);

// lambda_star(f) * t^{-w}. f in eigencoordinates and semi-invariant for the
// diagonal action. Throws NotSemiInvariant; InternalError if an exponent stays
// fractional.
TPoly twisted_equation(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d);
TPoly twisted_equation(const EigenData& eigen, const SparsePoly& f, unsigned d);

// w = a/d for f in eigencoordinates with diagonal exponents e.
Rational diagonal_weight(const std::vector<unsigned>& exponents, const SparsePoly& f, unsigned d);

struct TwistedScheme {
  std::size_t gamma = 0;  // element index in the group
  Matrix gamma_matrix;
  unsigned d = 1;
  std::vector<unsigned> exponents;
  Matrix eigenbasis;
  std::vector<SparsePoly> eigen_equations;  // f_i in eigencoordinates
  std::vector<TPoly> equations;
  std::vector<Rational> weights;
  Rational weight_total;
  Rational age;
  std::size_t N = 0;
  std::size_t c = 0;
  std::size_t n() const { return N - c; }

  // Pullback of a G-invariant (or semi-invariant, with the given weight
  // removed) polynomial h on A^N to R[t]. Throws InternalError if the result is
  // not in R[t].
  TPoly pullback(const SparsePoly& h) const;
  // Same, but keeps fractional exponents (for semi-invariant generators).
  TPoly pullback_raw(const SparsePoly& h) const;
};

TwistedScheme build_twisted_scheme(std::size_t gamma, const FiniteGroup& g, const std::vector<SparsePoly>& fs);

// Diagonal matrix acting on the x-variables of a TPoly.
TPoly act_diagonal(const Matrix& diag, const TPoly& p);

}  // namespace mldforge
