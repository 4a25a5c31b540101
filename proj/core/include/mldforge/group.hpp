#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mldforge/matrix.hpp"

namespace mldforge {

inline constexpr std::size_t kDefaultGroupCap = 10000;

struct GroupElement {
  Matrix matrix;
  unsigned order = 1;
};

// gamma = P diag(zeta_d^e_1, ..., zeta_d^e_N) P^{-1} with P = eigenbasis.
struct EigenData {
  std::vector<unsigned> exponents;  // ascending, each in [0, d)
  Matrix eigenbasis;                // columns are eigenvectors, grouped by exponent
};

struct ConjugacyClass {
  std::size_t representative = 0;  // least element index of the class
  std::vector<std::size_t> members;
  std::size_t size() const { return members.size(); }
};

// A finite subgroup of GL_N(Q(zeta_m)). Immutable after closure; the class
// list and eigen data of every element are computed eagerly.
class FiniteGroup {
 public:
  std::size_t dimension() const { return dimension_; }
  // |G|, the d used for exponents, ages and weights.
  unsigned order() const { return static_cast<unsigned>(elements_.size()); }
  // Lowest common cyclotomic order of all matrix entries and eigenvalues.
  unsigned field_order() const { return field_order_; }

  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const EigenData& eigen(std::size_t i) const { return eigen_.at(i); }
  std::size_t class_of(std::size_t i) const { return class_of_.at(i); }

  std::optional<std::size_t> index_of(const Matrix& m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }

  bool is_abelian() const;
  bool is_diagonal() const;

 private:
  friend FiniteGroup close_group(const std::vector<Matrix>& generators, std::size_t cap);

  std::size_t dimension_ = 0;
  unsigned entry_order_ = 1;
  unsigned field_order_ = 1;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> generators_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<EigenData> eigen_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Closure of the generated group. Elements are ordered breadth-first from the
// identity (index 0), each layer sorted lexicographically on canonical
// entries. Throws OrderCapExceeded when more than `cap` elements appear.
FiniteGroup close_group(const std::vector<Matrix>& generators, std::size_t cap = kDefaultGroupCap);

// The cyclic group <diag(zeta_r^w_1, ..., zeta_r^w_N)>.
FiniteGroup cyclic_group(unsigned r, const std::vector<long>& weights);

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);

bool is_pseudo_reflection(const Matrix& gamma);

// Eigen decomposition with exponents relative to d (gamma^d = 1).
EigenData eigen_decompose(const Matrix& gamma, unsigned d);

// (1/d) sum e_i.
Rational age(const Matrix& gamma, unsigned d);
Rational age(const EigenData& eigen, unsigned d);

FiniteGroup stabilizer(const FiniteGroup& g, const Vector& point);

// Throws ElementNotInGroup.
FiniteGroup centralizer(const FiniteGroup& g, const Matrix& gamma);

struct SimultaneousDiagonalization {
  Matrix basis;  // columns form a common eigenbasis
  // exponents[i][k]: gamma_i acts on basis column k by zeta_d^exponents[i][k]
  std::vector<std::vector<unsigned>> exponents;
};

// Throws NotAbelian.
SimultaneousDiagonalization simultaneous_diagonalize(const FiniteGroup& g);

// Subgroup consisting of the given (closed) subset of elements.
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<std::size_t>& members);

}  // namespace mldforge
