#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <nahm/bloch.hpp>
#include <nahm/dilog.hpp>

using namespace nahm;

namespace {

using C = complex_t<P128>;
using R = real_t<P128>;

// -int_0^1 log(1 - t z) / t dt, real and imaginary parts separately.
C li2_quadrature(const C& z) {
  boost::math::quadrature::tanh_sinh<R> q;
  const R tol = R(1e-32);
  auto integrand = [&](const R& t, bool imag_part) {
    const C v = log(C(1) - C(t) * z) / C(t);
    return imag_part ? R(-imag(v)) : R(-real(v));
  };
  const R re = q.integrate([&](const R& t) { return integrand(t, false); }, R(0), R(1), tol);
  const R im = q.integrate([&](const R& t) { return integrand(t, true); }, R(0), R(1), tol);
  return C(re, im);
}

// G = pi/8 log(2 + sqrt3) + 3/8 sum 1/((2k+1)^2 binom(2k,k)).
R catalan_oracle() {
  R s(0);
  R binom(1);
  for (int k = 0; k < 400; ++k) {
    if (k > 0) binom = binom * (2 * k) * (2 * k - 1) / (k * k);
    s += R(1) / ((2 * k + 1) * (2 * k + 1) * binom);
  }
  return pi<R>() / 8 * log(2 + sqrt(R(3))) + 3 * s / 8;
}

// Clausen function Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt = D(e^{i theta}).
R clausen_oracle(const R& theta) {
  boost::math::quadrature::tanh_sinh<R> q;
  return -q.integrate([](const R& t) { return R(log(2 * sin(t / 2))); }, R(0), theta, R(1e-32));
}

C random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0, 1), a(0, 2 * std::numbers::pi);
  return convert_complex<C>(std::polar(radius * std::sqrt(u(rng)), a(rng)));
}

}  // namespace

TEST(Li2, TrivialValues) {
  EXPECT_EQ(li2(C(0)), C(0));
  EXPECT_LT(to_double(abs(li2(C(1)) - C(pi<R>() * pi<R>() / 6))), 1e-37);
  EXPECT_LT(to_double(abs(li2(C(-1)) + C(pi<R>() * pi<R>() / 12))), 1e-37);
  // Li2(1/2) = pi^2/12 - log^2(2)/2.
  const R l2 = log(R(2));
  EXPECT_LT(to_double(abs(li2(C(R(1) / 2)) - C(pi<R>() * pi<R>() / 12 - l2 * l2 / 2))), 1e-37);
}

TEST(Li2, CatalanAtI) {
  const R g = catalan_oracle();
  EXPECT_NEAR(to_double(g), 0.915965594177219015, 1e-17);
  EXPECT_LT(to_double(abs(imag(li2(C(R(0), R(1)))) - g)), 1e-36);
  EXPECT_LT(to_double(abs(real(li2(C(R(0), R(1)))) + pi<R>() * pi<R>() / 48)), 1e-36);
}

TEST(Li2, CutConventionIsLimitFromBelow) {
  const C v = li2(C(2));
  EXPECT_LT(to_double(abs(real(v) - pi<R>() * pi<R>() / 4)), 1e-36);
  EXPECT_LT(to_double(abs(imag(v) + pi<R>() * log(R(2)))), 1e-36);
  // Continuous with points just below the cut.
  const C below = li2(C(R(2), R(-1e-30)));
  EXPECT_LT(to_double(abs(below - v)), 1e-28);
}

TEST(Li2, AgreesWithQuadrature) {
  std::mt19937_64 rng(99);
  int n = 0;
  while (n < 50) {
    const C z = random_disk_point(rng, 3.0);
    if (real(z) > 0.9 && abs(imag(z)) < 0.05) continue;
    const C expect = li2_quadrature(z);
    EXPECT_LT(to_double(abs(li2(z) - expect)), 1e-20) << to_double(real(z)) << " " << to_double(imag(z));
    ++n;
  }
}

TEST(Li2, AccuracyScalesWithTier) {
  using C2 = complex_t<P256>;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const C z = random_disk_point(rng, 4.0);
    const C2 hi = li2(convert_complex<C2>(z));
    const C lo = li2(z);
    EXPECT_LT(to_double(abs(convert_complex<C2>(lo) - hi)), std::ldexp(1.0, -120) * (1 + to_double(abs(hi))));
  }
}

TEST(BlochWigner, VanishesOnRealAxis) {
  for (double x : {-3.0, -0.5, 0.0, 0.3, 0.7, 1.0, 1.5, 4.0}) EXPECT_EQ(bloch_wigner(C(x)), 0);
}

TEST(BlochWigner, CatalanAtI) {
  EXPECT_LT(to_double(abs(bloch_wigner(C(R(0), R(1))) - catalan_oracle())), 1e-36);
}

TEST(BlochWigner, MaximumOnUnitCircle) {
  const R third = pi<R>() / 3;
  const R dmax = bloch_wigner(C(cos(third), sin(third)));
  EXPECT_LT(to_double(abs(dmax - clausen_oracle(third))), 1e-30);
  EXPECT_NEAR(to_double(dmax), 1.01494160640965362502, 1e-17);
  for (double t : {0.3, 0.9, 1.04, 1.05, 1.2, 2.0, 3.0}) {
    const R th(t);
    EXPECT_LT(bloch_wigner(C(cos(th), sin(th))), dmax);
    EXPECT_LT(to_double(abs(bloch_wigner(C(cos(th), sin(th))) - clausen_oracle(th))), 1e-30);
  }
}

TEST(BlochWigner, FunctionalEquations1000Points) {
  const auto r = verify_functional_equations<P128>(1000, 17);
  ASSERT_EQ(r.checks.size(), 4u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.residual;
}

TEST(BlochWigner, FiveTermBoundaryAndErrors) {
  EXPECT_EQ(five_term_residual(C(0), C(0)), 0);
  EXPECT_EQ(five_term_residual(C(R(0.3)), C(R(-2.5))), 0);
  EXPECT_THROW(five_term_residual(C(2), C(R(1) / 2)), DegenerateInput);
}

TEST(BlochWigner, FiveTermFailsWhenPerturbed) {
  const C x(R(0.3), R(0.4));
  const C y(R(-0.2), R(0.9));
  const C one_xy = C(1) - x * y;
  const R wrong = bloch_wigner(x) + bloch_wigner(one_xy) + bloch_wigner(y) + bloch_wigner((C(1) - y) / one_xy) +
                  bloch_wigner((C(1) + x) / one_xy);
  EXPECT_GT(to_double(abs(wrong)), 1e-3);
  EXPECT_LT(to_double(five_term_residual(x, y)), 1e-35);
}

TEST(RogersL, ClassicalValues) {
  const R l1 = rogers_L(R(1));
  EXPECT_LT(to_double(abs(l1 - pi<R>() * pi<R>() / 6)), 1e-37);
  EXPECT_LT(to_double(abs(rogers_L(R(1) / 2) - pi<R>() * pi<R>() / 12)), 1e-37);
  // L((3 - sqrt5)/2) = pi^2/15.
  EXPECT_LT(to_double(abs(rogers_L((3 - sqrt(R(5))) / 2) - pi<R>() * pi<R>() / 15)), 1e-37);
  EXPECT_EQ(rogers_L(R(0)), 0);
  EXPECT_THROW(rogers_L(R(2)), InvalidArgument);
}

TEST(RogersL, Reflection) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const R x(u(rng));
    EXPECT_LT(to_double(abs(rogers_L(x) + rogers_L(R(1) - x) - rogers_L(R(1)))), 1e-36);
  }
}
