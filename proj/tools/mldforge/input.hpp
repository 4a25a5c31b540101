#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mldforge/arcs.hpp"
#include "mldforge/mld.hpp"

namespace mldforge::cli {

inline constexpr int kSchemaVersion = 1;

struct JetsQuery {
  std::vector<unsigned> levels;
  JetBase base = JetBase::OverK;
  std::vector<TPoly> equations;
  ContactQuery contact;
};

// Parsed input document.
struct Problem {
  unsigned field_order = 1;
  Presentation presentation;
  MldOptions options;
  std::optional<SparsePoly> divisor;
  std::vector<Vector> points;
  std::optional<JetsQuery> jets;
};

// Throws Error(InvalidInput) on schema violations and the parser errors on
// bad polynomial strings.
Problem parse_problem(const nlohmann::json& doc);

// "p1,p2,..." -> primes. Throws InvalidInput.
std::vector<std::uint32_t> parse_prime_list(const std::string& text);

}  // namespace mldforge::cli
