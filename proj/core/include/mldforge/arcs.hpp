#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mldforge/fp.hpp"
#include "mldforge/groebner.hpp"
#include "mldforge/twist.hpp"

namespace mldforge {

enum class JetBase { OverK, OverKt };

// Jet variable x_{i,j} (coefficient of t^j in x_i(t)) has index j*N + i;
// witness variables follow all jet variables.
struct JetSystem {
  unsigned level = 0;
  JetBase base = JetBase::OverK;
  std::size_t N = 0;
  std::size_t nvars = 0;
  std::uint32_t prime = 0;
  std::vector<FpPoly> equations;

  std::size_t jet_var(std::size_t i, unsigned j) const { return j * N + i; }
  // x{i}_{j} with i 1-based, u{k} for witnesses.
  std::string var_name(std::uint16_t v) const;
  // Header line with prime and level, then one equation per line.
  std::string dump() const;
};

// Coefficients of t^0..t^m of each equation under x_i -> sum_j x_{i,j} t^j.
// Equations must have integer t-exponents, and none at all over k.
JetSystem jet_system(const std::vector<TPoly>& equations, std::size_t N, unsigned m, JetBase base,
                     const PrimeField& F);

enum class ContactMode { AtLeast, Exactly };

struct ContactClause {
  std::vector<TPoly> gens;
  ContactMode mode = ContactMode::AtLeast;
  unsigned order = 0;
};

struct ContactQuery {
  std::vector<ContactClause> clauses;
};

// Components whose union is the contact locus at level m. Witness variables
// are numbered from first_witness. Throws LevelTooSmall when an order exceeds
// m. An empty result means the locus is empty.
std::vector<std::vector<FpPoly>> contact_constraints(const ContactQuery& q, std::size_t N, unsigned m,
                                                     const PrimeField& F, std::size_t first_witness);

// nullopt: the locus is empty (codimension +infinity).
using CodimValue = std::optional<long>;

// Dimension of the level-m locus {jets of the scheme} cap {contact query},
// inside the N(m+1) jet coordinates. nullopt when empty.
std::optional<long> locus_dim(const std::vector<TPoly>& scheme_eqs, JetBase base, std::size_t N, unsigned m,
                              const ContactQuery& q, const PrimeField& F, const GroebnerOptions& gb = {});

struct CylinderOptions {
  std::vector<unsigned> levels;
  std::vector<std::uint32_t> primes;  // empty: default primes for the field
  GroebnerOptions gb;
  unsigned threads = 0;
};

struct CodimEstimate {
  std::map<unsigned, CodimValue> values;
  std::vector<unsigned> failed_levels;  // budget exhausted
  bool stabilized = false;
  CodimValue codim;
  bool prime_conflict = false;
  std::vector<std::uint32_t> primes_used;
};

// codim at level m = (m+1)n - (dim L_m - lift_defect), L_m the level-m locus.
// Stabilized iff the last two configured levels were computed and agree.
// Throws BudgetExceeded when no level could be computed.
CodimEstimate cylinder_codim(const std::vector<TPoly>& scheme_eqs, JetBase base, std::size_t N, std::size_t n,
                             const ContactQuery& q, long lift_defect, const CylinderOptions& options,
                             unsigned cyclotomic_order);

// c x c minors of the Jacobian matrix in the x-variables (t constant),
// zeros and duplicates dropped. {1} when there are no equations.
std::vector<TPoly> jacobian_minors(const std::vector<TPoly>& eqs, std::size_t N);
std::vector<TPoly> jacobian_fitting(const TwistedScheme& ts);

// Dimension of V(eqs) in A^N over F_p-bar, majority over the given primes.
std::optional<long> variety_dim(const std::vector<SparsePoly>& eqs, std::size_t N, unsigned cyclotomic_order,
                                const std::vector<std::uint32_t>& primes = {}, const GroebnerOptions& gb = {});

}  // namespace mldforge
