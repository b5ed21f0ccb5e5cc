#ifndef NAHM_YSYSTEM_HPP
#define NAHM_YSYSTEM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dynkin.hpp"
#include "jet.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace nahm {

// Initial data for a trajectory: full vectors Y(0) and Y(-1) over I x I'.
// Both decoupled copies are carried; only the P+ copy is ever read back.
template <class S>
struct Seeds {
  std::vector<S> at_zero;
  std::vector<S> at_minus_one;
  std::string description;
};

// Y(0) = y on I+ and Y(-1) = 1/y on I- (all indices for tadpole pairs).
// Entries belonging to the P- copy are set to `filler`.
template <class S>
Seeds<S> seeds_from_variables(const PairIndexing& pair, const std::vector<S>& y, const S& filler = S(1)) {
  const int n = pair.size();
  if (static_cast<int>(y.size()) != n) throw InvalidArgument("seed vector has the wrong length");
  Seeds<S> s;
  s.at_zero.assign(n, filler);
  s.at_minus_one.assign(n, filler);
  for (int k = 0; k < n; ++k) {
    if (pair.in_plus_set(k)) s.at_zero[k] = y[k];
    if (pair.in_minus_set(k)) s.at_minus_one[k] = S(1) / y[k];
  }
  s.description = "Y(0)=y on I+, Y(-1)=1/y on I-";
  return s;
}

namespace detail {

template <class S>
double magnitude(const S& s) {
  using std::abs;
  return to_double(abs(primal(s)));
}

template <class S>
S ipow(const S& base, int p) {
  S r = base;
  for (int k = 1; k < p; ++k) r = r * base;
  return r;
}

// prod_j (1 + Y_j)^{I(X)} over neighbours along the first diagram.
template <class S>
S numerator_product(const PairIndexing& pair, int k, const std::vector<S>& y) {
  S num(1);
  for (const auto& nb : pair.along_first(k)) num = num * ipow(S(1) + y[nb.index], nb.power);
  return num;
}

// prod_j' (1 + Y_j'^{-1})^{I(X')} over neighbours along the second diagram.
template <class S>
S denominator_product(const PairIndexing& pair, int k, const std::vector<S>& y) {
  S den(1);
  for (const auto& nb : pair.along_second(k)) den = den * ipow(S(1) + S(1) / y[nb.index], nb.power);
  return den;
}

template <class S>
void require_regular(const std::vector<S>& v, double zero_tol, int u, const char* what) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double m = magnitude(v[k]);
    if (!std::isfinite(m) || m <= zero_tol)
      throw DegenerateStep(std::string(what) + " vanishes or is not finite at index " + std::to_string(k) +
                               " while computing u=" + std::to_string(u),
                           static_cast<int>(k), u);
    if (magnitude(S(1) + v[k]) <= zero_tol)
      throw DegenerateStep(std::string("1+") + what + " vanishes at index " + std::to_string(k) +
                               " while computing u=" + std::to_string(u),
                           static_cast<int>(k), u);
  }
}

}  // namespace detail

// One step of the Y-system in adjacency form (tadpole loops included):
//   Y(u+1) = prod (1+Y_j(u))^{I(X)} / prod (1+Y_j'(u)^{-1})^{I(X')} / Y(u-1).
// `u_next` only labels errors. Because the relation is symmetric in u-1 and
// u+1, y_step(pair, next, cur) recovers `prev`.
template <class S>
std::vector<S> y_step(const PairIndexing& pair, const std::vector<S>& prev, const std::vector<S>& cur,
                      double zero_tol, int u_next = 1) {
  const int n = pair.size();
  if (static_cast<int>(prev.size()) != n || static_cast<int>(cur.size()) != n)
    throw InvalidArgument("y_step: vector length does not match the pair");
  detail::require_regular(prev, zero_tol, u_next, "Y(u-1)");
  detail::require_regular(cur, zero_tol, u_next, "Y(u)");
  std::vector<S> next(n);
  for (int k = 0; k < n; ++k) {
    const S den = detail::denominator_product(pair, k, cur);
    if (detail::magnitude(den) <= zero_tol)
      throw DegenerateStep("1+1/Y vanishes while computing u=" + std::to_string(u_next), k, u_next);
    next[k] = detail::numerator_product(pair, k, cur) / den / prev[k];
  }
  return next;
}

// Values Y_k(u) for -1 <= u <= u_max. Both copies are stored; `in_plus`
// tells which entries belong to the P+ sublattice fixed by the seeds.
template <class S>
class YTrajectory {
 public:
  YTrajectory(PairIndexing pair, std::string seed_description)
      : pair_(std::move(pair)), seed_description_(std::move(seed_description)) {}

  const PairIndexing& pair() const { return pair_; }
  const std::string& seed_description() const { return seed_description_; }
  int u_min() const { return -1; }
  int u_max() const { return static_cast<int>(rows_.size()) - 2; }

  const S& value(int k, int u) const { return rows_.at(static_cast<std::size_t>(u + 1)).at(k); }
  const std::vector<S>& row(int u) const { return rows_.at(static_cast<std::size_t>(u + 1)); }
  bool in_plus(int k, int u) const { return pair_.in_plus(k, u); }

  void push(std::vector<S> row) { rows_.push_back(std::move(row)); }

  // Largest |log10 |Y|| over the P+ entries; drives precision escalation.
  double max_log_magnitude() const {
    double m = 0;
    for (int u = u_min(); u <= u_max(); ++u)
      for (int k = 0; k < pair_.size(); ++k)
        if (in_plus(k, u)) {
          using std::abs;
          using std::log10;
          m = std::max(m, std::abs(to_double(log10(abs(primal(value(k, u)))))));
        }
    return m;
  }

 private:
  PairIndexing pair_;
  std::string seed_description_;
  std::vector<std::vector<S>> rows_;
};

// Fills the trajectory for 0 <= u <= u_max (plus the seed row u = -1).
template <class S>
YTrajectory<S> iterate(const PairIndexing& pair, const Seeds<S>& seeds, int u_max, const PrecisionContext& ctx,
                       double zero_tol = -1) {
  if (zero_tol < 0) zero_tol = ctx.tau_res;
  if (u_max < 0) throw InvalidArgument("u_max must be >= 0");
  YTrajectory<S> traj(pair, seeds.description);
  traj.push(seeds.at_minus_one);
  traj.push(seeds.at_zero);
  for (int u = 0; u < u_max; ++u) traj.push(y_step(pair, traj.row(u - 1), traj.row(u), zero_tol, u + 1));
  detail::require_regular(traj.row(u_max), zero_tol, u_max, "Y(u)");
  return traj;
}

// max |Y(u + 2(h+h')) - Y(u)| over the P+ entries in the window.
template <class S>
CheckRecord check_periodicity(const YTrajectory<S>& traj, const PrecisionContext& ctx) {
  const int period = traj.pair().period();
  if (traj.u_max() < period)
    throw WindowTooShort("trajectory ends at u=" + std::to_string(traj.u_max()) + ", need at least " +
                         std::to_string(period));
  double worst = 0;
  for (int u = traj.u_min(); u + period <= traj.u_max(); ++u)
    for (int k = 0; k < traj.pair().size(); ++k) {
      if (!traj.in_plus(k, u)) continue;
      using std::abs;
      worst = std::max(worst, to_double(abs(traj.value(k, u + period) - traj.value(k, u))));
    }
  return make_check("periodicity " + traj.pair().name() + " period " + std::to_string(period), worst, ctx.tau_eq);
}

// Cleared-denominator constant Y-system residual:
//   max_k | y_k^2 prod (1+1/y_j')^{I(X')} - prod (1+y_j)^{I(X)} |.
template <class C>
typename C::value_type constant_residual(const PairIndexing& pair, const std::vector<C>& y,
                                         double zero_tol = 1e-20) {
  using std::abs;
  using R = typename C::value_type;
  if (static_cast<int>(y.size()) != pair.size()) throw InvalidArgument("constant_residual: wrong vector length");
  for (const auto& v : y)
    if (to_double(abs(v)) <= zero_tol || to_double(abs(C(1) + v)) <= zero_tol)
      throw DegenerateInput("constant_residual: component equal to 0 or -1");
  R worst(0);
  for (int k = 0; k < pair.size(); ++k) {
    const C lhs = y[k] * y[k] * detail::denominator_product(pair, k, y);
    const C rhs = detail::numerator_product(pair, k, y);
    worst = std::max(worst, R(abs(lhs - rhs)));
  }
  return worst;
}

inline constexpr std::array<double, 3> kSignSchedule{1e-4, 1e-6, 1e-8};

// Sign of the leading monomial T_k(u) from the scaling of |Y_k(u)| when every
// variable is set to eps: +1 if Y -> 0, -1 if Y -> infinity.
inline int monomial_sign_from_magnitudes(const std::array<double, 3>& log_mag) {
  std::array<double, 2> slope{};
  for (int s = 0; s < 2; ++s)
    slope[s] = (log_mag[s + 1] - log_mag[s]) / (std::log(kSignSchedule[s + 1]) - std::log(kSignSchedule[s]));
  if (slope[0] > 0.5 && slope[1] > 0.5) return 1;
  if (slope[0] < -0.5 && slope[1] < -0.5) return -1;
  throw Unstable("monomial sign is not stable across the eps schedule (slopes " + std::to_string(slope[0]) + ", " +
                 std::to_string(slope[1]) + ")");
}

// Signs for every (k,u) in S+, computed from three eps-trajectories.
template <class P>
std::vector<int> monomial_signs(const PairIndexing& pair, const PrecisionContext& ctx) {
  using C = complex_t<P>;
  const int last = pair.period() - 1;
  std::array<std::vector<std::vector<double>>, 3> logs;
  for (std::size_t s = 0; s < kSignSchedule.size(); ++s) {
    std::vector<C> y(pair.size(), C(kSignSchedule[s]));
    const auto traj = iterate(pair, seeds_from_variables(pair, y), std::max(last, 0), ctx, 1e-300);
    logs[s].assign(last + 2, std::vector<double>(pair.size()));
    for (int u = 0; u <= last; ++u)
      for (int k = 0; k < pair.size(); ++k) {
        using std::abs;
        using std::log;
        logs[s][u][k] = to_double(log(abs(traj.value(k, u))));
      }
  }
  std::vector<int> signs;
  for (auto [k, u] : pair.splus())
    signs.push_back(monomial_sign_from_magnitudes({logs[0][u][k], logs[1][u][k], logs[2][u][k]}));
  return signs;
}

template <class P>
int monomial_sign(const PairIndexing& pair, int k, int u, const PrecisionContext& ctx) {
  if (u < 0 || u >= pair.period() || !pair.in_plus(k, u))
    throw InvalidArgument("monomial_sign: (" + pair.label(k) + "," + std::to_string(u) + ") is not in S+");
  const auto& sp = pair.splus();
  const auto it = std::find(sp.begin(), sp.end(), std::make_pair(k, u));
  return monomial_signs<P>(pair, ctx)[static_cast<std::size_t>(it - sp.begin())];
}

}  // namespace nahm

#endif  // NAHM_YSYSTEM_HPP
