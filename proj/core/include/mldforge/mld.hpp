#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mldforge/arcs.hpp"
#include "mldforge/errors.hpp"
#include "mldforge/group.hpp"
#include "mldforge/poly.hpp"

namespace mldforge {

struct PresentationFlags {
  bool klt = false;               // user asserts Y has klt singularities
  bool regular_sequence = false;  // user asserts f_1..f_c is a regular sequence
};

// Y = V(f_1..f_c)/G inside X = A^N/G, with an R-ideal on X restricted to Y.
struct Presentation {
  FiniteGroup group;
  std::vector<SparsePoly> equations;
  RIdealSpec ideal;
  Vector point;  // empty: the origin
  PresentationFlags flags;

  std::size_t N() const { return group.dimension(); }
  std::size_t c() const { return equations.size(); }
  // Cyclotomic order covering the group, equations, ideal and point.
  unsigned cyclotomic_order() const;
};

struct MldOptions {
  unsigned jet_min = 2;
  unsigned jet_max = 8;
  int b1_max = -1;  // -1: 2(N - c) + 2
  int b2_max = -1;
  std::vector<std::uint32_t> primes;  // empty: default primes of the field
  long ip_box = 4;
  GroebnerOptions gb;
  unsigned threads = 0;
};

enum class MldStatus { Exact, StabilizedEstimate, UpperBound };
std::string_view to_string(MldStatus status);

struct MldValue {
  enum class Kind { Finite, MinusInfinity, Unknown };
  Kind kind = Kind::Unknown;
  Rational value;

  static MldValue finite(const Rational& v) { return {Kind::Finite, v}; }
  static MldValue minus_infinity() { return {Kind::MinusInfinity, Rational()}; }
  static MldValue unknown() { return {}; }
  bool is_finite() const { return kind == Kind::Finite; }
  // "p/q", "-inf" or "unknown".
  std::string str() const;
  friend bool operator==(const MldValue& a, const MldValue& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
};

struct MldWitness {
  std::optional<std::size_t> class_index;
  std::optional<std::size_t> element;
  std::vector<Rational> u;   // lattice engines
  std::vector<unsigned> b;   // jet engines, in the order (b1, b2, ...)
  std::optional<unsigned> level;
};

// Contribution of one conjugacy class.
struct ClassTerm {
  std::size_t class_index = 0;
  std::size_t element = 0;
  MldValue value;
  MldStatus status = MldStatus::Exact;
  MldWitness witness;
};

struct MldReport {
  MldValue value;
  MldStatus status = MldStatus::UpperBound;
  MldWitness witness;
  std::string engine;
  std::vector<std::string> diagnostics;
  std::vector<std::uint32_t> primes;
  std::vector<ClassTerm> terms;
};

// --- validation ---

struct Finding {
  ErrorKind kind = ErrorKind::InvalidInput;
  bool rejection = false;
  std::optional<std::size_t> element;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool accepted() const;
  // Throws the first rejection as an Error.
  void raise() const;
};

// Checks: no pseudo-reflections; semi-invariant equations in the maximal
// ideal; G-invariant ideal generators; dim(Fix(gamma) cap V(f)) <= n - 2 for
// gamma != 1; dim V(f) = N - c. Dimensions are computed over F_p.
ValidationReport validate(const Presentation& p, const MldOptions& options = {});
void require_valid(const Presentation& p, const MldOptions& options = {});

// Presentation at `point` of V(f): the stabilizer acting on coordinates
// translated to the point. Throws PointNotOnY.
Presentation localize(const Presentation& p, const Vector& point);

// --- lattice engines (abelian groups) ---

// Common eigenbasis and exponents of every element relative to d = |G|.
struct DiagonalFrame {
  Matrix basis;
  unsigned d = 1;
  std::vector<std::vector<unsigned>> exponents;  // indexed like G.elements()
};
DiagonalFrame diagonal_frame(const FiniteGroup& g);  // throws NotAbelian

// Exponent vectors of the Hilbert basis of invariant monomials in the frame.
std::vector<std::vector<unsigned>> invariant_monomial_exponents(const DiagonalFrame& frame);

// min over classes of age(gamma) + #{i : e_i(gamma) = 0}.
MldReport mld_quotient_age(const FiniteGroup& g);

// Toric mld over N' = Z^N + sum_gamma (e^(gamma)/d) Z of the monomial R-ideal.
MldReport mld_toric_lattice(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options = {});

// Arc-order integer program of the quotient-pair formula, one program per
// element: u = v + e/d with <u, m> >= 1 on invariant monomials.
MldReport mld_quotient_pair_ip(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options = {});

// --- jet engines ---

// Quotient-pair formula on the smooth twisted spaces via cylinder codims.
MldReport mld_quotient_pair_jets(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options = {});

// IP engine for abelian groups with monomial data, jets otherwise.
MldReport mld_quotient_pair(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options = {});

// Hyperquotient formula over the twisted schemes B^(gamma) over k[t].
MldReport mld_hyperquotient(const Presentation& p, const MldOptions& options = {});

// --- inversion of adjunction ---

struct PairProblem {
  FiniteGroup group;
  RIdealSpec ideal;
};

// (A^N/G, (f_1 ... f_c)^{|G|})^{1/|G|} * a); identity when c = 0.
PairProblem pia_reduce(const Presentation& p);

enum class Verdict { Equal, ConsistentWithinStatus, Violated };
std::string_view to_string(Verdict v);

// Equal when the values agree; Violated when the values cannot both hold
// given the statuses (exact values pin the mld, other statuses bound it from
// above).
Verdict compare_reports(const MldReport& a, const MldReport& b);

struct BothSides {
  MldReport lhs;
  MldReport rhs;
  Verdict verdict = Verdict::Equal;
};

BothSides pia_check(const Presentation& p, const MldOptions& options = {});
// LHS: the pair with (f_1..f_c g)^{|G|})^{1/|G|}; RHS: the hyperquotient
// with g appended to the equations.
BothSides pia_divisor(const Presentation& p, const SparsePoly& g, const MldOptions& options = {});

struct LscRow {
  Vector point;
  bool special = false;  // nontrivial stabilizer or singular point of V(f)
  MldReport report;
};

struct LscScan {
  std::vector<LscRow> rows;
  bool holds = true;
  std::vector<std::string> notes;
};

LscScan lsc_scan(const Presentation& p, const std::vector<Vector>& points, const MldOptions& options = {});

}  // namespace mldforge
