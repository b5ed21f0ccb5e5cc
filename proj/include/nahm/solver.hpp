#ifndef NAHM_SOLVER_HPP
#define NAHM_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dynkin.hpp"
#include "numeric.hpp"
#include "ysystem.hpp"

namespace nahm {

// y = x / (1 - x).
template <class C>
std::vector<C> x_to_y(const std::vector<C>& x) {
  std::vector<C> y;
  y.reserve(x.size());
  for (const auto& v : x) {
    const C d = C(1) - v;
    if (real(d) == 0 && imag(d) == 0) throw PoleInput("x_to_y: component equal to 1");
    y.push_back(v / d);
  }
  return y;
}

// x = y / (1 + y).
template <class C>
std::vector<C> y_to_x(const std::vector<C>& y) {
  std::vector<C> x;
  x.reserve(y.size());
  for (const auto& v : y) {
    const C d = C(1) + v;
    if (real(d) == 0 && imag(d) == 0) throw PoleInput("y_to_x: component equal to -1");
    x.push_back(v / d);
  }
  return x;
}

template <class C>
using Matrix = std::vector<std::vector<C>>;

// Solves m * s = rhs by Gaussian elimination with partial pivoting.
// Returns nullopt when a pivot is exactly zero.
template <class C>
std::optional<std::vector<C>> lu_solve(Matrix<C> m, std::vector<C> rhs) {
  using std::abs;
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    auto best = abs(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto a = abs(m[r][col]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (best == 0) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const C f = m[r][col] / m[col][col];
      if (f == C(0)) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<C> s(n);
  for (std::size_t i = n; i-- > 0;) {
    C acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * s[c];
    s[i] = acc / m[i][i];
  }
  return s;
}

template <class C>
double max_norm(const std::vector<C>& v) {
  using std::abs;
  double m = 0;
  for (const auto& x : v) m = std::max(m, to_double(abs(x)));
  return m;
}

// The constant Y-system as polynomial-type residuals in y,
//   F_k(y) = y_k^2 prod (1 + 1/y_j')^{I(X')} - prod (1 + y_j)^{I(X)},
// with its analytic Jacobian.
class PolynomialSystem {
 public:
  explicit PolynomialSystem(PairIndexing pair) : pair_(std::move(pair)) {}

  const PairIndexing& pair() const { return pair_; }
  int size() const { return pair_.size(); }

  template <class C>
  std::vector<C> residual(const std::vector<C>& y) const {
    std::vector<C> f(size());
    for (int k = 0; k < size(); ++k)
      f[k] = y[k] * y[k] * detail::denominator_product(pair_, k, y) - detail::numerator_product(pair_, k, y);
    return f;
  }

  template <class C>
  Matrix<C> jacobian(const std::vector<C>& y) const {
    const int n = size();
    Matrix<C> j(n, std::vector<C>(n, C(0)));
    for (int k = 0; k < n; ++k) {
      const C den = detail::denominator_product(pair_, k, y);
      const C num = detail::numerator_product(pair_, k, y);
      const C lhs = y[k] * y[k] * den;
      j[k][k] += C(2) * y[k] * den;
      for (const auto& nb : pair_.along_second(k)) {
        const C& v = y[nb.index];
        j[k][nb.index] -= lhs * C(nb.power) / (v * (C(1) + v));
      }
      for (const auto& nb : pair_.along_first(k)) j[k][nb.index] -= num * C(nb.power) / (C(1) + y[nb.index]);
    }
    return j;
  }

  // Normalized form R_k = y_k^2 P_k / Q_k - 1. Same zeros as the cleared
  // residual away from y in {0,-1}, but those degenerate loci become poles
  // instead of spurious roots, so Newton is repelled rather than attracted.
  template <class C>
  std::vector<C> normalized_residual(const std::vector<C>& y) const {
    std::vector<C> f(size());
    for (int k = 0; k < size(); ++k)
      f[k] = y[k] * y[k] * detail::denominator_product(pair_, k, y) / detail::numerator_product(pair_, k, y) - C(1);
    return f;
  }

  template <class C>
  Matrix<C> normalized_jacobian(const std::vector<C>& y) const {
    const int n = size();
    Matrix<C> j(n, std::vector<C>(n, C(0)));
    const auto f = normalized_residual(y);
    for (int k = 0; k < n; ++k) {
      const C scale = f[k] + C(1);
      j[k][k] += scale * C(2) / y[k];
      for (const auto& nb : pair_.along_second(k)) {
        const C& v = y[nb.index];
        j[k][nb.index] -= scale * C(nb.power) / (v * (C(1) + v));
      }
      for (const auto& nb : pair_.along_first(k)) j[k][nb.index] -= scale * C(nb.power) / (C(1) + y[nb.index]);
    }
    return j;
  }

 private:
  PairIndexing pair_;
};

// Adapter selecting which residual form Newton iterates on.
struct NormalizedForm {
  const PolynomialSystem& sys;
  template <class C>
  std::vector<C> residual(const std::vector<C>& y) const {
    return sys.normalized_residual(y);
  }
  template <class C>
  Matrix<C> jacobian(const std::vector<C>& y) const {
    return sys.normalized_jacobian(y);
  }
};

struct NewtonOptions {
  int max_iterations = 200;
  int max_halvings = 40;
  double step_tol = 1e-30;
  // Abandon the run when a component leaves [min_abs, max_abs] or 1+y gets this close to 0.
  double min_abs = 1e-10;
  double max_abs = 1e10;
};

template <class C>
struct NewtonResult {
  std::vector<C> y;
  bool converged = false;
  int iterations = 0;
  std::vector<double> step_norms;
};

template <class C>
bool in_regular_region(const std::vector<C>& y, const NewtonOptions& opt) {
  using std::abs;
  for (const auto& v : y) {
    const double a = to_double(abs(v));
    if (!std::isfinite(a) || a < opt.min_abs || a > opt.max_abs) return false;
    if (to_double(abs(C(1) + v)) < opt.min_abs) return false;
  }
  return true;
}

// Damped Newton with step halving on the residual max-norm. `System` provides
// residual(y) and jacobian(y).
template <class System, class C>
NewtonResult<C> damped_newton(const System& sys, std::vector<C> y, const NewtonOptions& opt) {
  using std::abs;
  NewtonResult<C> out;
  if (!in_regular_region(y, opt)) {
    out.y = std::move(y);
    return out;
  }
  double fnorm = max_norm(sys.residual(y));
  for (int it = 0; it < opt.max_iterations; ++it) {
    out.iterations = it + 1;
    auto f = sys.residual(y);
    for (auto& v : f) v = -v;
    const auto step = lu_solve(sys.jacobian(y), f);
    if (!step) break;
    C lambda(1);
    std::vector<C> trial(y.size());
    bool accepted = false;
    double trial_norm = 0;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      for (std::size_t k = 0; k < y.size(); ++k) trial[k] = y[k] + lambda * (*step)[k];
      if (in_regular_region(trial, opt)) {
        trial_norm = max_norm(sys.residual(trial));
        if (trial_norm < fnorm || trial_norm == 0) {
          accepted = true;
          break;
        }
      }
      lambda /= C(2);
    }
    const double snorm = max_norm(*step) * to_double(abs(lambda));
    if (!accepted) {
      // Residual can no longer decrease; converged only if the full step is already negligible.
      if (max_norm(*step) < opt.step_tol) {
        out.step_norms.push_back(max_norm(*step));
        out.converged = true;
      }
      break;
    }
    y = trial;
    fnorm = trial_norm;
    out.step_norms.push_back(snorm);
    if (snorm < opt.step_tol) {
      out.converged = true;
      break;
    }
  }
  out.y = std::move(y);
  return out;
}

// Diagnostics for x = (1-x)^A with rational exponents evaluated as
// exp(a Log(1-x)) on the principal branch, plus a search over the finitely
// many branch shifts exp(2 pi i sum_j a_ij k_j), k_j mod the common denominator.
struct BranchDiagnostics {
  double principal_residual = 0;
  bool principal_ok = false;
  bool searched = false;
  bool branch_found = false;
  std::vector<int> branch;
  double branch_residual = 0;
};

template <class C>
BranchDiagnostics nahm_branch_diagnostics(const RationalMatrix& a, const std::vector<C>& x, double tol = 1e-15,
                                          long search_cap = 65536) {
  using R = typename C::value_type;
  using std::abs;
  const std::size_t n = x.size();
  std::vector<C> logs(n);
  for (std::size_t j = 0; j < n; ++j) logs[j] = log(C(1) - x[j]);
  std::vector<C> principal(n);
  BranchDiagnostics d;
  for (std::size_t i = 0; i < n; ++i) {
    C s(0);
    for (std::size_t j = 0; j < n; ++j) s += C(R(a(i, j))) * logs[j];
    principal[i] = exp(s);
    d.principal_residual = std::max(d.principal_residual, to_double(abs(x[i] - principal[i])));
  }
  d.principal_ok = d.principal_residual < tol;
  const long den = static_cast<long>(a.common_denominator());
  long combos = 1;
  for (std::size_t j = 0; j < n && combos <= search_cap; ++j) combos *= den;
  if (combos > search_cap) return d;
  d.searched = true;
  const R two_pi = 2 * pi<R>();
  std::vector<int> k(n, 0);
  d.branch_residual = d.principal_residual;
  for (long c = 0; c < combos; ++c) {
    long rest = c;
    for (std::size_t j = 0; j < n; ++j) {
      k[j] = static_cast<int>(rest % den);
      rest /= den;
    }
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      R phase(0);
      for (std::size_t j = 0; j < n; ++j) phase += R(a(i, j)) * k[j];
      const C shift = exp(C(R(0), two_pi * phase));
      worst = std::max(worst, to_double(abs(x[i] - principal[i] * shift)));
    }
    if (worst < tol) {
      d.branch_found = true;
      d.branch = k;
      d.branch_residual = worst;
      return d;
    }
  }
  return d;
}

template <class P>
struct Solution {
  std::vector<complex_t<P>> x;
  std::vector<complex_t<P>> y;
  double residual = 0;
  int multiplicity_hint = 1;
  BranchDiagnostics branch;
  std::vector<double> step_norms;
};

struct SolveBudget {
  int starts = 2000;
  std::uint64_t seed = 1;
  int max_size = 6;
};

template <class P>
struct SolutionSet {
  std::string pair;
  std::vector<Solution<P>> solutions;
  double dedup_tol = 1e-10;
  int starts = 0;
  std::uint64_t seed = 0;
  int converged_starts = 0;
  int rejected_degenerate = 0;
  int rejected_residual = 0;
};

namespace detail {

template <class P>
Solution<P> make_solution(const PairIndexing& pair, std::vector<complex_t<P>> y) {
  Solution<P> s;
  s.y = std::move(y);
  s.x = y_to_x(s.y);
  s.residual = to_double(constant_residual(pair, s.y, 0.0));
  s.branch = nahm_branch_diagnostics(nahm_matrix(pair.first(), pair.second()), s.x);
  return s;
}

}  // namespace detail

// The solution with every x in (0,1): Newton in t = log y started from
// x = (1/2, ..., 1/2), where the logarithmic form keeps iterates positive.
template <class P>
Solution<P> solve_positive(const PairIndexing& pair, const PrecisionContext& ctx) {
  using R = real_t<P>;
  using C = complex_t<P>;
  const int n = pair.size();
  std::vector<R> t(n, R(0));

  auto eval = [&](const std::vector<R>& tv, std::vector<R>& g, Matrix<R>* jac) {
    std::vector<R> y(n);
    for (int k = 0; k < n; ++k) y[k] = exp(tv[k]);
    g.assign(n, R(0));
    if (jac) jac->assign(n, std::vector<R>(n, R(0)));
    for (int k = 0; k < n; ++k) {
      g[k] = 2 * tv[k];
      if (jac) (*jac)[k][k] += 2;
      for (const auto& nb : pair.along_second(k)) {
        const R& v = y[nb.index];
        g[k] += nb.power * log1p(R(1) / v);
        if (jac) (*jac)[k][nb.index] -= R(nb.power) / (R(1) + v);
      }
      for (const auto& nb : pair.along_first(k)) {
        const R& v = y[nb.index];
        g[k] -= nb.power * log1p(v);
        if (jac) (*jac)[k][nb.index] -= R(nb.power) * v / (R(1) + v);
      }
    }
  };
  auto norm = [](const std::vector<R>& v) {
    R m(0);
    for (const auto& a : v) m = std::max(m, R(abs(a)));
    return m;
  };

  std::vector<double> steps;
  bool converged = false;
  std::vector<R> g;
  Matrix<R> jac;
  for (int it = 0; it < 200 && !converged; ++it) {
    eval(t, g, &jac);
    const R gnorm = norm(g);
    for (auto& v : g) v = -v;
    const auto step = lu_solve(jac, g);
    if (!step) throw NoConvergence("solve_positive: singular Jacobian");
    R lambda(1);
    std::vector<R> trial(n), gt;
    for (int h = 0; h <= 40; ++h) {
      for (int k = 0; k < n; ++k) trial[k] = t[k] + lambda * (*step)[k];
      eval(trial, gt, nullptr);
      if (norm(gt) < gnorm || h == 40) break;
      lambda /= 2;
    }
    const double snorm = to_double(norm(*step) * lambda);
    t = trial;
    steps.push_back(snorm);
    if (snorm < 1e-30 || norm(gt) == 0) converged = true;
  }
  if (!converged) throw NoConvergence("solve_positive: no convergence for " + pair.name());
  std::vector<C> y(n);
  for (int k = 0; k < n; ++k) y[k] = C(exp(t[k]));
  auto s = detail::make_solution<P>(pair, std::move(y));
  s.step_norms = std::move(steps);
  if (!(s.residual < ctx.tau_res)) throw NoConvergence("solve_positive: residual above tolerance for " + pair.name());
  return s;
}

// Multistart damped Newton over random complex starts. Each start is run in
// double precision, converged points are polished at tier P and deduplicated
// in max-norm on y.
template <class P>
SolutionSet<P> solve_all(const PairIndexing& pair, const SolveBudget& budget, const PrecisionContext& ctx) {
  using C = complex_t<P>;
  using CD = std::complex<double>;
  if (pair.size() > budget.max_size)
    throw InvalidArgument("solve_all: pair " + pair.name() + " has rr' = " + std::to_string(pair.size()) +
                          " above the cap " + std::to_string(budget.max_size));
  const PolynomialSystem sys(pair);
  SolutionSet<P> out;
  out.pair = pair.name();
  out.starts = budget.starts;
  out.seed = budget.seed;

  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> log_r(-1.0, 1.0);
  std::uniform_real_distribution<double> theta(0.0, 2 * std::numbers::pi);

  NewtonOptions coarse;
  coarse.step_tol = 1e-13;

  // Coarse stage: candidate points with their basin counts.
  std::vector<std::pair<std::vector<CD>, int>> candidates;
  for (int s = 0; s < budget.starts; ++s) {
    std::vector<CD> y0(pair.size());
    for (auto& v : y0) v = std::polar(std::exp(log_r(rng)), theta(rng));
    const auto res = damped_newton(NormalizedForm{sys}, y0, coarse);
    if (!res.converged) continue;
    ++out.converged_starts;
    bool merged = false;
    for (auto& [pt, count] : candidates) {
      double d = 0;
      for (std::size_t k = 0; k < pt.size(); ++k) d = std::max(d, std::abs(pt[k] - res.y[k]));
      if (d < 1e-9 * (1 + max_norm(pt))) {
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) candidates.emplace_back(res.y, 1);
  }

  NewtonOptions fine;
  fine.step_tol = 1e-30;
  fine.min_abs = 1e-8;
  fine.max_abs = 1e8;
  for (auto& [pt, count] : candidates) {
    std::vector<C> y0(pt.size());
    for (std::size_t k = 0; k < pt.size(); ++k) y0[k] = convert_complex<C>(pt[k]);
    const auto res = damped_newton(NormalizedForm{sys}, y0, fine);
    if (!in_regular_region(res.y, fine)) {
      out.rejected_degenerate += count;
      continue;
    }
    auto sol = detail::make_solution<P>(pair, res.y);
    if (!(sol.residual < ctx.tau_res)) {
      out.rejected_residual += count;
      continue;
    }
    sol.multiplicity_hint = count;
    sol.step_norms = res.step_norms;
    bool merged = false;
    for (auto& kept : out.solutions) {
      double d = 0;
      for (std::size_t k = 0; k < kept.y.size(); ++k) d = std::max(d, to_double(abs(kept.y[k] - sol.y[k])));
      if (d < out.dedup_tol) {
        kept.multiplicity_hint += sol.multiplicity_hint;
        if (sol.residual < kept.residual) {
          sol.multiplicity_hint = kept.multiplicity_hint;
          kept = std::move(sol);
        }
        merged = true;
        break;
      }
    }
    if (!merged) out.solutions.push_back(std::move(sol));
  }
  // Deterministic order: by real parts, then imaginary parts, of y.
  std::sort(out.solutions.begin(), out.solutions.end(), [](const Solution<P>& a, const Solution<P>& b) {
    for (std::size_t k = 0; k < a.y.size(); ++k) {
      if (real(a.y[k]) != real(b.y[k])) return real(a.y[k]) < real(b.y[k]);
      if (imag(a.y[k]) != imag(b.y[k])) return imag(a.y[k]) < imag(b.y[k]);
    }
    return false;
  });
  return out;
}

}  // namespace nahm

#endif  // NAHM_SOLVER_HPP
