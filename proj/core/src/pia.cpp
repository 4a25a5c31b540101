#include <algorithm>

#include "mldforge/mld.hpp"

namespace mldforge {

namespace {

bool is_origin(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const CycloScalar& x) { return x.is_zero(); });
}

Presentation at_point(const Presentation& p) {
  if (is_origin(p.point)) return p;
  return localize(p, p.point);
}

std::size_t jacobian_rank_at(const std::vector<SparsePoly>& eqs, std::size_t N, const Vector& point) {
  if (eqs.empty()) return 0;
  Matrix j(eqs.size(), N);
  const Vector at = point.empty() ? Vector(N, CycloScalar(0)) : point;
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) j(r, c) = eqs[r].derivative(c).evaluate(at);
  return j.rank();
}

}  // namespace

PairProblem pia_reduce(const Presentation& p) {
  PairProblem out{p.group, p.ideal};
  if (p.c() == 0) return out;
  SparsePoly prod = SparsePoly::constant(p.N(), CycloScalar(1));
  for (const auto& f : p.equations) prod = prod * f;
  IdealFactor fac;
  fac.gens = {prod.pow(p.group.order())};
  fac.exponent = Rational(1) / Rational(static_cast<long>(p.group.order()));
  fac.root = p.equations;
  out.ideal.factors.push_back(std::move(fac));
  return out;
}

BothSides pia_check(const Presentation& input, const MldOptions& options) {
  const Presentation p = at_point(input);
  require_valid(p, options);
  PairProblem pair = pia_reduce(p);
  BothSides out;
  out.lhs = mld_quotient_pair(pair.group, pair.ideal, options);
  out.rhs = mld_hyperquotient(p, options);
  out.verdict = compare_reports(out.lhs, out.rhs);
  return out;
}

BothSides pia_divisor(const Presentation& p, const SparsePoly& g, const MldOptions& options) {
  if (g.nvars() != p.N()) throw Error(ErrorKind::InvalidInput, "divisor has the wrong number of variables");
  Presentation q = p;
  q.equations.push_back(g);
  return pia_check(q, options);
}

LscScan lsc_scan(const Presentation& p, const std::vector<Vector>& points, const MldOptions& options) {
  LscScan scan;
  const Rational n(static_cast<long>(p.N() - p.c()));
  for (const auto& pt : points) {
    Presentation q = p;
    q.point = pt;
    Presentation local = localize(p, pt);
    LscRow row;
    row.point = pt;
    row.special = local.group.order() > 1 || jacobian_rank_at(p.equations, p.N(), pt) < p.c();
    row.report = mld_hyperquotient(q, options);
    scan.rows.push_back(std::move(row));
  }
  std::optional<Rational> generic_min, special_max;
  bool estimated = false;
  for (const auto& row : scan.rows) {
    const MldReport& r = row.report;
    if (!r.value.is_finite()) {
      if (r.value.kind == MldValue::Kind::MinusInfinity && !row.special) {
        scan.holds = false;
        scan.notes.push_back("a generic point has mld -inf");
      }
      continue;
    }
    if (r.status != MldStatus::Exact) estimated = true;
    if (r.value.value > n) {
      scan.holds = false;
      scan.notes.push_back("value " + r.value.str() + " exceeds the dimension " + n.str());
    }
    auto& slot = row.special ? special_max : generic_min;
    if (!slot || (row.special ? r.value.value > *slot : r.value.value < *slot)) slot = r.value.value;
  }
  if (generic_min && special_max && *special_max > *generic_min) {
    scan.holds = false;
    scan.notes.push_back("a special point has mld " + special_max->str() + " above the generic value " + generic_min->str());
  }
  if (!generic_min) scan.notes.push_back("no generic point among the samples");
  if (estimated) scan.notes.push_back("some values are estimates; the comparison treats them as values");
  return scan;
}

}  // namespace mldforge
