#ifndef NAHM_VERIFY_HPP
#define NAHM_VERIFY_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dilog.hpp"
#include "dynkin.hpp"
#include "jet.hpp"
#include "report.hpp"
#include "ysystem.hpp"

namespace nahm {

// Multiplicities d(i,u) for each entry of pair.splus(), in order.
inline std::vector<int> default_weights(const PairIndexing& pair) {
  std::vector<int> w;
  w.reserve(pair.splus().size());
  for (auto [k, u] : pair.splus()) w.push_back(pair.multiplicity(k, u));
  return w;
}

namespace detail {

template <class S>
YTrajectory<S> window_trajectory(const PairIndexing& pair, const std::vector<S>& y, const PrecisionContext& ctx) {
  try {
    detail::require_regular(y, ctx.tau_res, 0, "seed");
    return iterate(pair, seeds_from_variables(pair, y, S(1)), pair.period() - 1, ctx);
  } catch (const DegenerateStep& e) {
    throw DegeneratePoint(std::string("degenerate evaluation point: ") + e.what());
  }
}

inline void check_weights(const PairIndexing& pair, const std::vector<int>& weights) {
  if (weights.size() != pair.splus().size()) throw InvalidArgument("weights must have one entry per element of S+");
}

// Adds w * [log|Y| d arg(1+Y) - log|1+Y| d arg Y] given dY/dy_j, laid out as
// (d/dRe y_j, d/dIm y_j) pairs.
template <class C, class R>
void accumulate_regulator(std::vector<R>& form, int w, const C& value, const std::vector<C>& dvalue) {
  const C one_plus = C(1) + value;
  const R log_y = log(abs(value));
  const R log_1y = log(abs(one_plus));
  for (std::size_t j = 0; j < dvalue.size(); ++j) {
    const C g0 = dvalue[j] / value;
    const C g1 = dvalue[j] / one_plus;
    form[2 * j] += w * (log_y * imag(g1) - log_1y * imag(g0));
    form[2 * j + 1] += w * (log_y * real(g1) - log_1y * real(g0));
  }
}

template <class R>
R euclidean_norm(const std::vector<R>& v) {
  R s(0);
  for (const auto& x : v) s += x * x;
  return sqrt(s);
}

}  // namespace detail

// The real 1-form sum_{S+} d * eta(Y ^ (1+Y)) on the seed space, where
// eta(f ^ g) = log|f| d arg g - log|g| d arg f is additive in both slots and
// kills torsion, so it vanishes whenever the constancy identity holds in
// Lambda^2. Gradients come from forward-mode differentiation of the recurrence.
template <class P>
std::vector<real_t<P>> regulator_form(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                                      const std::vector<int>& weights, const PrecisionContext& ctx) {
  using C = complex_t<P>;
  using R = real_t<P>;
  using J = Jet<C>;
  detail::check_weights(pair, weights);
  const int n = pair.size();
  std::vector<J> y(n);
  for (int k = 0; k < n; ++k) y[k] = J::variable(point[k], k, n);
  const auto traj = detail::window_trajectory(pair, y, ctx);
  std::vector<R> form(2 * n, R(0));
  const auto& sp = pair.splus();
  for (std::size_t s = 0; s < sp.size(); ++s) {
    const J& v = traj.value(sp[s].first, sp[s].second);
    std::vector<C> dv(n);
    for (int j = 0; j < n; ++j) dv[j] = v.grad(j);
    detail::accumulate_regulator(form, weights[s], v.v, dv);
  }
  return form;
}

// Same form with gradients from central differences of step `h`.
template <class P>
std::vector<real_t<P>> regulator_form_fd(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                                         const std::vector<int>& weights, const PrecisionContext& ctx,
                                         const real_t<P>& h) {
  using C = complex_t<P>;
  using R = real_t<P>;
  detail::check_weights(pair, weights);
  const int n = pair.size();
  const auto base = detail::window_trajectory(pair, point, ctx);
  std::vector<YTrajectory<C>> plus, minus;
  for (int j = 0; j < n; ++j) {
    auto p = point;
    auto m = point;
    p[j] += C(h);
    m[j] -= C(h);
    plus.push_back(detail::window_trajectory(pair, p, ctx));
    minus.push_back(detail::window_trajectory(pair, m, ctx));
  }
  std::vector<R> form(2 * n, R(0));
  const auto& sp = pair.splus();
  for (std::size_t s = 0; s < sp.size(); ++s) {
    const auto [k, u] = sp[s];
    std::vector<C> dv(n);
    for (int j = 0; j < n; ++j) dv[j] = (plus[j].value(k, u) - minus[j].value(k, u)) / C(2 * h);
    detail::accumulate_regulator(form, weights[s], base.value(k, u), dv);
  }
  return form;
}

template <class P>
struct WedgeResidual {
  std::vector<complex_t<P>> point;
  double residual = 0;
};

template <class P>
WedgeResidual<P> wedge_form_residual(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                                     const PrecisionContext& ctx, const std::vector<int>& weights) {
  WedgeResidual<P> w;
  w.point = point;
  w.residual = to_double(detail::euclidean_norm(regulator_form<P>(pair, point, weights, ctx)));
  return w;
}

template <class P>
WedgeResidual<P> wedge_form_residual(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                                     const PrecisionContext& ctx) {
  return wedge_form_residual<P>(pair, point, ctx, default_weights(pair));
}

// sum_{(i,u) in S+} d * D(Y/(1+Y)) along the trajectory seeded at `point`.
template <class P>
real_t<P> dilog_sum_over_splus(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                               const PrecisionContext& ctx, const std::vector<int>& weights) {
  using C = complex_t<P>;
  using R = real_t<P>;
  detail::check_weights(pair, weights);
  const auto traj = detail::window_trajectory(pair, point, ctx);
  R sum(0);
  const auto& sp = pair.splus();
  for (std::size_t s = 0; s < sp.size(); ++s) {
    const C& v = traj.value(sp[s].first, sp[s].second);
    sum += weights[s] * bloch_wigner(C(v / (C(1) + v)));
  }
  return sum;
}

template <class P>
real_t<P> dilog_sum_over_splus(const PairIndexing& pair, const std::vector<complex_t<P>>& point,
                               const PrecisionContext& ctx) {
  return dilog_sum_over_splus<P>(pair, point, ctx, default_weights(pair));
}

// Evaluation points near the positive cone: real parts uniform in [lo, hi],
// imaginary parts uniform in [-noise, noise].
template <class P>
std::vector<complex_t<P>> sample_point(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0,
                                       double noise = 0.1) {
  using C = complex_t<P>;
  using R = real_t<P>;
  std::uniform_real_distribution<double> re(lo, hi);
  std::uniform_real_distribution<double> im(-noise, noise);
  std::vector<C> p(n);
  for (auto& v : p) {
    const double a = re(rng);
    const double b = noise > 0 ? im(rng) : 0.0;
    v = C(R(a), R(b));
  }
  return p;
}

// Seed points drawn in double precision so every tier sees the same inputs.
inline std::vector<std::vector<std::complex<double>>> sample_points(int count, int n, std::uint64_t seed,
                                                                   double noise = 0.1) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::complex<double>>> pts;
  for (int i = 0; i < count; ++i) pts.push_back(sample_point<DoubleTier>(n, rng, 0.5, 2.0, noise));
  return pts;
}

inline constexpr double kEscalationLogMagnitude = 30;

// max |Y(u + 2(h+h')) - Y(u)| over two full periods from one seed point.
template <class P>
std::pair<CheckRecord, double> periodicity_at(const PairIndexing& pair, const std::vector<std::complex<double>>& point,
                                              const PrecisionContext& ctx) {
  using C = complex_t<P>;
  std::vector<C> y;
  for (const auto& v : point) y.push_back(convert_complex<C>(v));
  const auto traj = iterate(pair, seeds_from_variables(pair, y), 2 * pair.period() - 1, ctx);
  return {check_periodicity(traj, ctx), traj.max_log_magnitude()};
}

// Periodicity at `samples` random seeds. A sample whose trajectory reaches
// |log10|Y|| > 30 is recomputed at 256 bits when P is narrower.
template <class P>
VerificationReport verify_periodicity(const PairIndexing& pair, int samples, std::uint64_t seed,
                                      const PrecisionContext& ctx) {
  VerificationReport r;
  r.command = "verify periodicity " + pair.name();
  r.seed = seed;
  r.precision_bits = P::bits;
  r.metadata["pair"] = pair.name();
  r.metadata["period"] = pair.period();
  r.metadata["samples"] = samples;
  int escalated = 0;
  const auto pts = sample_points(samples, pair.size(), seed);
  for (int i = 0; i < samples; ++i) {
    auto [check, mag] = periodicity_at<P>(pair, pts[i], ctx);
    if constexpr (P::bits < 256) {
      if (mag > kEscalationLogMagnitude) {
        check = periodicity_at<P256>(pair, pts[i], ctx).first;
        check.note = "escalated to 256 bits";
        ++escalated;
      }
    }
    check.name += " sample " + std::to_string(i);
    r.add(std::move(check));
  }
  r.metadata["escalated"] = escalated;
  return r;
}

inline constexpr double kWedgeTolerance = 1e-18;
inline constexpr double kDilogSumTolerance = 1e-18;

template <class P>
VerificationReport verify_wedge(const PairIndexing& pair, int points, std::uint64_t seed, const PrecisionContext& ctx,
                                double tolerance = kWedgeTolerance) {
  VerificationReport r;
  r.command = "verify wedge " + pair.name();
  r.seed = seed;
  r.precision_bits = P::bits;
  r.metadata["pair"] = pair.name();
  r.metadata["points"] = points;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < points; ++i) {
    const auto pt = sample_point<P>(pair.size(), rng);
    r.add(make_check("wedge " + pair.name() + " point " + std::to_string(i),
                     wedge_form_residual<P>(pair, pt, ctx).residual, tolerance));
  }
  return r;
}

template <class P>
VerificationReport verify_dilog_sum(const PairIndexing& pair, int points, std::uint64_t seed,
                                    const PrecisionContext& ctx, double tolerance = kDilogSumTolerance) {
  VerificationReport r;
  r.command = "verify dilogsum " + pair.name();
  r.seed = seed;
  r.precision_bits = P::bits;
  r.metadata["pair"] = pair.name();
  r.metadata["points"] = points;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < points; ++i) {
    const auto pt = sample_point<P>(pair.size(), rng);
    using std::abs;
    r.add(make_check("dilogsum " + pair.name() + " point " + std::to_string(i),
                     to_double(abs(dilog_sum_over_splus<P>(pair, pt, ctx))), tolerance));
  }
  return r;
}

}  // namespace nahm

#endif  // NAHM_VERIFY_HPP
