#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mldforge/fp.hpp"

namespace mldforge {

inline constexpr std::size_t kDefaultSpairBudget = 200000;

struct GroebnerOptions {
  std::size_t spair_budget = kDefaultSpairBudget;
  // Linear eliminations v = -(rest)/c are only done when `rest` is at most
  // this long.
  std::size_t substitution_limit = 64;
  // Use relations u w = k (k != 0) to treat w as a unit: drop it from
  // monomial equations and solve for variables whose coefficient is w.
  bool unit_eliminations = true;
  // Split the system into blocks of variables that never share an equation.
  bool split_blocks = true;
};

struct GroebnerStats {
  std::size_t spairs = 0;
  std::size_t zero_vars = 0;
  std::size_t eliminated_vars = 0;
  std::size_t blocks = 0;
  std::size_t largest_block = 0;
};

// Krull dimension of V(system) in affine nvars-space over the algebraic
// closure of F_p. nullopt means the locus is empty. Throws BudgetExceeded.
std::optional<long> groebner_dim(const std::vector<FpPoly>& system, std::size_t nvars, fp_t p,
                                 const GroebnerOptions& options = {}, GroebnerStats* stats = nullptr);

// Degrevlex Groebner basis of the system as given (no preprocessing),
// leading terms first, monic. Intended for tests and benchmarks; limited to
// 128 variables.
std::vector<FpPoly> groebner_basis(const std::vector<FpPoly>& system, std::size_t nvars, fp_t p,
                                   const GroebnerOptions& options = {});

// Size of a smallest variable set meeting every support (supports given as
// sorted variable lists). Used for the dimension of a monomial ideal.
std::size_t min_hitting_set(const std::vector<std::vector<std::uint16_t>>& supports);

}  // namespace mldforge
