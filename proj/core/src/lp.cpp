#include "mldforge/lp.hpp"

#include "mldforge/errors.hpp"

namespace mldforge {

namespace {

class Tableau {
 public:
  // Rows a.y (+ slack) = b with y >= 0; rows with b < 0 are negated and get an
  // artificial variable.
  Tableau(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b, std::size_t n)
      : m_(a.size()), n_(n) {
    std::size_t nart = 0;
    for (const auto& v : b)
      if (v < 0) ++nart;
    width_ = n_ + m_ + nart + 1;
    t_.assign(m_, std::vector<mpq_class>(width_, 0));
    basis_.resize(m_);
    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      bool neg = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = neg ? mpq_class(-a[i][j]) : a[i][j];
      t_[i][n_ + i] = neg ? -1 : 1;
      t_[i][width_ - 1] = neg ? mpq_class(-b[i]) : b[i];
      if (neg) {
        t_[i][art] = 1;
        basis_[i] = art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
    first_art_ = n_ + m_;
  }

  // Phase 1; false when infeasible.
  bool feasible() {
    if (first_art_ == width_ - 1) return true;
    std::vector<mpq_class> c(width_ - 1, 0);
    for (std::size_t j = first_art_; j < width_ - 1; ++j) c[j] = 1;
    if (!optimize(c, width_ - 1)) return false;  // cannot be unbounded
    if (objective(c) != 0) return false;
    // Drive remaining artificials out of the basis.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j)
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
    }
    return true;
  }

  // Phase 2 over the non-artificial columns; false when unbounded.
  bool minimize(const std::vector<mpq_class>& cost) {
    std::vector<mpq_class> c(width_ - 1, 0);
    for (std::size_t j = 0; j < n_; ++j) c[j] = cost[j];
    return optimize(c, first_art_);
  }

  std::vector<mpq_class> solution() const {
    std::vector<mpq_class> y(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = t_[i][width_ - 1];
    return y;
  }

 private:
  mpq_class objective(const std::vector<mpq_class>& c) const {
    mpq_class v = 0;
    for (std::size_t i = 0; i < m_; ++i) v += c[basis_[i]] * t_[i][width_ - 1];
    return v;
  }

  // Bland's rule over columns < limit.
  bool optimize(const std::vector<mpq_class>& c, std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit && enter == limit; ++j) {
        bool basic = false;
        for (std::size_t i = 0; i < m_; ++i)
          if (basis_[i] == j) basic = true;
        if (basic) continue;
        mpq_class r = c[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (t_[i][j] != 0) r -= c[basis_[i]] * t_[i][j];
        if (r < 0) enter = j;
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        mpq_class ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    mpq_class inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      mpq_class f = t_[i][c];
      for (std::size_t j = 0; j < width_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_, n_, width_ = 0, first_art_ = 0;
  std::vector<std::vector<mpq_class>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.nvars;
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    std::vector<mpq_class> row(n);
    mpq_class rhs = lp.rhs[i].get();
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = lp.rows[i][j].get();
      rhs -= row[j] * lp.lower[j].get();
    }
    a.push_back(std::move(row));
    b.push_back(rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    if (*lp.upper[j] < lp.lower[j]) return {};
    std::vector<mpq_class> row(n, 0);
    row[j] = 1;
    a.push_back(std::move(row));
    b.push_back((*lp.upper[j] - lp.lower[j]).get());
  }
  Tableau t(a, b, n);
  LpResult res;
  if (!t.feasible()) return res;
  std::vector<mpq_class> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = lp.cost[j].get();
  if (!t.minimize(c)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  auto y = t.solution();
  res.value = lp.constant;
  for (std::size_t j = 0; j < n; ++j) {
    res.x.push_back(Rational(mpq_class(y[j] + lp.lower[j].get())));
    res.value += lp.cost[j] * res.x.back();
  }
  return res;
}

namespace {

struct BoxSearch {
  const IntegerProgram& ip;
  std::size_t budget;
  std::size_t nodes = 0;
  std::optional<Rational> best;
  std::vector<Rational> best_x;

  void run(LinearProgram lp) {
    if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "branch-and-bound node budget exhausted");
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::Infeasible) return;
    if (r.status == LpStatus::Unbounded) throw Error(ErrorKind::InternalError, "unbounded relaxation inside a box");
    if (best && r.value >= *best) return;
    for (std::size_t j = 0; j < lp.nvars; ++j) {
      if (!ip.integral[j] || r.x[j].is_integer()) continue;
      Rational fl(r.x[j].floor(), 1);
      LinearProgram down = lp;
      down.upper[j] = fl;
      LinearProgram up = std::move(lp);
      up.lower[j] = fl + 1;
      run(std::move(down));
      run(std::move(up));
      return;
    }
    best = r.value;
    best_x = r.x;
  }
};

}  // namespace

IlpResult minimize_integer(const IntegerProgram& ip, const IlpOptions& options) {
  const LinearProgram& base = ip.lp;
  IlpResult out;
  LpResult root = solve_lp(base);
  if (root.status == LpStatus::Infeasible) return out;
  const bool unbounded = root.status == LpStatus::Unbounded;
  std::size_t budget = options.node_budget;
  for (long R = std::max(1L, options.initial_box); R <= options.max_box; R *= 2) {
    BoxSearch bs{ip, budget};
    LinearProgram boxed = base;
    for (std::size_t j = 0; j < base.nvars; ++j) {
      if (!ip.integral[j]) continue;
      Rational cap = base.lower[j] + Rational(R);
      if (!boxed.upper[j] || cap < *boxed.upper[j]) boxed.upper[j] = cap;
    }
    if (unbounded) {
      // Only continuous variables can still be unbounded in the box; any
      // integral point certifies -infinity.
      for (std::size_t j = 0; j < base.nvars; ++j)
        if (!ip.integral[j] && !boxed.upper[j]) boxed.upper[j] = base.lower[j] + Rational(R);
      LinearProgram feas = boxed;
      for (auto& c : feas.cost) c = 0;
      bs.run(feas);
      out.nodes += bs.nodes;
      if (bs.best) {
        out.status = LpStatus::Unbounded;
        out.x = bs.best_x;
        out.box = R;
        return out;
      }
      budget -= std::min(budget, bs.nodes);
      continue;
    }
    bs.run(boxed);
    out.nodes += bs.nodes;
    budget -= std::min(budget, bs.nodes);
    // Outside the box: for each nonempty set S of integral variables beyond
    // the box, relax S to continuous and branch on the rest; any point
    // strictly better than the incumbent leaves the box uncertified.
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < base.nvars; ++j)
      if (ip.integral[j] && !(base.upper[j] && *base.upper[j] < base.lower[j] + Rational(R) + 1)) open.push_back(j);
    if (open.size() > 16) throw Error(ErrorKind::BudgetExceeded, "too many unbounded integer variables");
    bool certified = true;
    for (std::size_t mask = 1; mask < (std::size_t{1} << open.size()) && certified; ++mask) {
      IntegerProgram part{boxed, ip.integral};
      for (std::size_t k = 0; k < open.size(); ++k) {
        if (!(mask >> k & 1)) continue;
        const std::size_t j = open[k];
        part.integral[j] = false;
        part.lp.lower[j] = base.lower[j] + Rational(R) + 1;
        part.lp.upper[j] = base.upper[j];
      }
      BoxSearch outside{part, budget};
      outside.best = bs.best;
      outside.run(part.lp);
      out.nodes += outside.nodes;
      budget -= std::min(budget, outside.nodes);
      if (!outside.best_x.empty()) certified = false;
    }
    if (certified) {
      if (bs.best) {
        out.status = LpStatus::Optimal;
        out.value = *bs.best;
        out.x = bs.best_x;
      }
      out.box = R;
      return out;
    }
  }
  throw Error(ErrorKind::BudgetExceeded, "integer program box exceeded " + std::to_string(options.max_box));
}

}  // namespace mldforge
