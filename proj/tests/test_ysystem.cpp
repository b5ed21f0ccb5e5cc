#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <nahm/verify.hpp>
#include <nahm/ysystem.hpp>

using namespace nahm;

namespace {

using C128 = complex_t<P128>;
using R128 = real_t<P128>;

std::vector<DynkinDiagram> diagrams_up_to(int rank) {
  std::vector<DynkinDiagram> v;
  for (int n = 1; n <= rank; ++n) {
    v.push_back(DynkinDiagram::make(Family::A, n));
    v.push_back(DynkinDiagram::make(Family::T, n));
    if (n >= 4) v.push_back(DynkinDiagram::make(Family::D, n));
    if (n >= 6 && n <= 8) v.push_back(DynkinDiagram::make(Family::E, n));
  }
  return v;
}

std::vector<PairIndexing> pairs_up_to(int size) {
  std::vector<PairIndexing> v;
  for (const auto& x : diagrams_up_to(size))
    for (const auto& y : diagrams_up_to(size))
      if (x.rank() * y.rank() <= size) v.emplace_back(x, y);
  return v;
}

template <class C>
std::vector<C> positive_seed(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.5, 2.0);
  std::vector<C> y(n);
  for (auto& v : y) v = C(d(rng));
  return y;
}

R128 inverse_golden() { return (sqrt(R128(5)) - 1) / 2; }

}  // namespace

TEST(YStep, A1A1IsInversion) {
  // No neighbours on either side: Y(u+1) Y(u-1) = 1.
  const auto p = PairIndexing::parse("A1,A1");
  EXPECT_EQ(y_step(p, std::vector<C128>{C128(1)}, std::vector<C128>{C128(1)}, 1e-20)[0], C128(1));
  EXPECT_EQ(y_step(p, std::vector<C128>{C128(2)}, std::vector<C128>{C128(7)}, 1e-20)[0], C128(R128(1) / 2));
}

TEST(YStep, A1T1HandValue) {
  // Y(u+1) = 1 / ((1 + 1/Y(u)) Y(u-1)).
  const auto p = PairIndexing::parse("A1,T1");
  const auto next = y_step(p, std::vector<C128>{C128(2)}, std::vector<C128>{C128(3)}, 1e-20);
  EXPECT_LT(to_double(abs(next[0] - C128(R128(3) / 8))), 1e-35);
}

TEST(YStep, ConstantSolutionIsFixed) {
  const auto p = PairIndexing::parse("A1,T1");
  const std::vector<C128> y{C128(inverse_golden())};
  EXPECT_LT(to_double(abs(y_step(p, y, y, 1e-20)[0] - y[0])), 1e-35);
  const auto a = PairIndexing::parse("A1,A1");
  const std::vector<C128> one{C128(1)};
  EXPECT_EQ(y_step(a, one, one, 1e-20)[0], C128(1));
}

TEST(YStep, DegenerateInputs) {
  const auto p = PairIndexing::parse("A2,A1");
  const std::vector<C128> ok{C128(1), C128(2)};
  EXPECT_THROW(y_step(p, ok, std::vector<C128>{C128(0), C128(1)}, 1e-20), DegenerateStep);
  EXPECT_THROW(y_step(p, ok, std::vector<C128>{C128(-1), C128(1)}, 1e-20), DegenerateStep);
  EXPECT_THROW(y_step(p, std::vector<C128>{C128(0), C128(1)}, ok, 1e-20), DegenerateStep);
  EXPECT_THROW(y_step(p, ok, std::vector<C128>{C128(1)}, 1e-20), InvalidArgument);
  try {
    y_step(p, ok, std::vector<C128>{C128(1), C128(0)}, 1e-20, 5);
    FAIL();
  } catch (const DegenerateStep& e) {
    EXPECT_EQ(e.index, 1);
    EXPECT_EQ(e.u, 5);
  }
}

TEST(YStep, ForwardBackwardRoundTrip) {
  std::mt19937_64 rng(11);
  for (const auto& p : pairs_up_to(6)) {
    const auto prev = sample_point<P128>(p.size(), rng);
    const auto cur = sample_point<P128>(p.size(), rng);
    const auto next = y_step(p, prev, cur, 1e-20);
    const auto back = y_step(p, next, cur, 1e-20);
    for (int k = 0; k < p.size(); ++k) EXPECT_LT(to_double(abs(back[k] - prev[k])), 1e-25) << p.name();
  }
}

TEST(Iterate, A1A1LongWindow) {
  const auto p = PairIndexing::parse("A1,A1");
  const PrecisionContext ctx;
  const auto traj = iterate(p, seeds_from_variables(p, std::vector<C128>{C128(1)}), 32, ctx);
  EXPECT_EQ(traj.u_max(), 32);
  EXPECT_EQ(traj.value(0, 32), C128(1));
}

TEST(Iterate, A2A1PositiveSeeds) {
  const auto p = PairIndexing::parse("A2,A1");
  const PrecisionContext ctx;
  std::mt19937_64 rng(3);
  const auto traj = iterate(p, seeds_from_variables(p, positive_seed<C128>(2, rng)), 20, ctx);
  for (int u = 0; u <= 20; ++u)
    for (int k = 0; k < 2; ++k)
      if (traj.in_plus(k, u)) EXPECT_GT(real(traj.value(k, u)), 0);
}

TEST(Iterate, ZeroSeedFailsAtFirstStep) {
  const auto p = PairIndexing::parse("A2,A1");
  const PrecisionContext ctx;
  try {
    iterate(p, seeds_from_variables(p, std::vector<C128>{C128(0), C128(1)}), 10, ctx);
    FAIL();
  } catch (const DegenerateStep& e) {
    EXPECT_EQ(e.u, 1);
  }
}

TEST(Periodicity, RandomPositiveSeeds256Bit) {
  const PrecisionContext ctx;
  std::mt19937_64 rng(2024);
  using C = complex_t<P256>;
  int pairs = 0;
  for (const auto& p : pairs_up_to(8)) {
    for (int s = 0; s < 20; ++s) {
      const auto traj = iterate(p, seeds_from_variables(p, positive_seed<C>(p.size(), rng)), 2 * p.period() - 1, ctx);
      const auto check = check_periodicity(traj, ctx);
      ASSERT_TRUE(check.pass) << p.name() << " residual " << check.residual;
    }
    ++pairs;
  }
  EXPECT_GT(pairs, 50);
}

TEST(Periodicity, NamedPairsAt128Bit) {
  const PrecisionContext ctx;
  for (const char* name : {"A1,A1", "A1,T1", "A2,T2", "E6,A1", "D4,A1"}) {
    const auto r = verify_periodicity<P128>(PairIndexing::parse(name), 20, 5, ctx);
    EXPECT_TRUE(r.pass()) << name << " worst " << r.worst_residual();
  }
  EXPECT_EQ(PairIndexing::parse("E6,A1").period(), 28);
}

TEST(Periodicity, NotPeriodicWithShorterWindow) {
  // The true period is not a proper divisor for A2,A1: half the window fails.
  const auto p = PairIndexing::parse("A2,A1");
  const PrecisionContext ctx;
  std::mt19937_64 rng(5);
  const auto seed = seeds_from_variables(p, positive_seed<C128>(2, rng));
  const auto traj = iterate(p, seed, 2 * p.period(), ctx);
  double worst = 0;
  for (int u = 0; u + p.period() / 2 + 1 <= traj.u_max(); ++u)
    for (int k = 0; k < 2; ++k)
      if (traj.in_plus(k, u))
        worst = std::max(worst, to_double(abs(traj.value(k, u + p.period() / 2 + 1) - traj.value(k, u))));
  EXPECT_GT(worst, 1e-3);
}

TEST(Periodicity, WindowTooShort) {
  const auto p = PairIndexing::parse("A1,T1");
  const PrecisionContext ctx;
  const auto traj = iterate(p, seeds_from_variables(p, std::vector<C128>{C128(2)}), p.period() - 1, ctx);
  EXPECT_THROW(check_periodicity(traj, ctx), WindowTooShort);
}

TEST(Decoupling, MinusSeedsDoNotReachPlusValues) {
  const PrecisionContext ctx;
  std::mt19937_64 rng(8);
  for (const auto& p : pairs_up_to(6)) {
    if (p.tadpole()) continue;
    const auto y = positive_seed<C128>(p.size(), rng);
    const auto a = iterate(p, seeds_from_variables(p, y, C128(1)), 2 * p.period(), ctx);
    const auto b = iterate(p, seeds_from_variables(p, y, C128(R128(37) / 10)), 2 * p.period(), ctx);
    for (int u = -1; u <= a.u_max(); ++u)
      for (int k = 0; k < p.size(); ++k)
        if (p.in_plus(k, u)) ASSERT_EQ(a.value(k, u), b.value(k, u)) << p.name() << " " << p.label(k) << " u=" << u;
  }
}

TEST(ConstantResidual, KnownSolutions) {
  const auto a = PairIndexing::parse("A1,A1");
  EXPECT_EQ(constant_residual(a, std::vector<C128>{C128(1)}), 0);
  EXPECT_GT(to_double(constant_residual(a, std::vector<C128>{C128(2)})), 1);

  const auto t = PairIndexing::parse("A1,T1");
  const R128 s5 = sqrt(R128(5));
  EXPECT_LT(to_double(constant_residual(t, std::vector<C128>{C128(inverse_golden())})), 1e-25);
  EXPECT_LT(to_double(constant_residual(t, std::vector<C128>{C128((-1 - s5) / 2)})), 1e-25);
  EXPECT_GT(to_double(constant_residual(t, std::vector<C128>{C128((1 + s5) / 2)})), 1);

  EXPECT_THROW(constant_residual(t, std::vector<C128>{C128(0)}), DegenerateInput);
  EXPECT_THROW(constant_residual(t, std::vector<C128>{C128(-1)}), DegenerateInput);
}

TEST(MonomialSigns, A1A1) {
  const auto p = PairIndexing::parse("A1,A1");
  const PrecisionContext ctx;
  EXPECT_EQ(monomial_sign<P128>(p, 0, 0, ctx), 1);
  EXPECT_EQ(monomial_sign<P128>(p, 0, 2, ctx), -1);
  EXPECT_THROW(monomial_sign<P128>(p, 0, 1, ctx), InvalidArgument);
  // f = Y/(1+Y) at u = 2 tends to 1 as the seed goes to 0.
  const auto traj = iterate(p, seeds_from_variables(p, std::vector<C128>{C128(R128(1e-30))}), 2, ctx, 1e-300);
  const C128 y2 = traj.value(0, 2);
  EXPECT_LT(to_double(abs(y2 / (C128(1) + y2) - C128(1))), 1e-25);
}

TEST(MonomialSigns, ClassifierRejectsFlatTrend) {
  EXPECT_EQ(monomial_sign_from_magnitudes({-9.2, -13.8, -18.4}), 1);
  EXPECT_EQ(monomial_sign_from_magnitudes({9.2, 13.8, 18.4}), -1);
  EXPECT_THROW(monomial_sign_from_magnitudes({0.1, 0.2, 0.1}), Unstable);
}

TEST(MonomialSigns, StableAndCountMatchesCentralCharge) {
  // #negative over S+ = m rr' h / (h + h'), m = h+h' (doubled with a tadpole).
  const PrecisionContext ctx;
  for (const auto& p : pairs_up_to(6)) {
    std::vector<int> signs;
    ASSERT_NO_THROW(signs = monomial_signs<P128>(p, ctx)) << p.name();
    int negative = 0;
    for (int s : signs) negative += s < 0;
    const int m = (p.tadpole() ? 2 : 1) * (p.h() + p.h_prime());
    EXPECT_EQ(negative * (p.h() + p.h_prime()), m * p.size() * p.h()) << p.name();
  }
}

TEST(Trajectory, MaxLogMagnitude) {
  const auto p = PairIndexing::parse("A1,A1");
  const PrecisionContext ctx;
  const auto traj = iterate(p, seeds_from_variables(p, std::vector<C128>{C128(R128(1e-40))}), 3, ctx, 1e-300);
  EXPECT_NEAR(traj.max_log_magnitude(), 40, 1e-9);
}
