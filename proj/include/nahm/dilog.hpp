#ifndef NAHM_DILOG_HPP
#define NAHM_DILOG_HPP

#include <limits>

#include <boost/math/special_functions/bernoulli.hpp>

#include "numeric.hpp"

namespace nahm {

namespace detail {

// sum_{n>=1} z^n / n^2, for |z| <= 1/2.
template <class C>
C li2_power_series(const C& z) {
  using R = typename C::value_type;
  const R eps = std::numeric_limits<R>::epsilon();
  C sum(0);
  C zn = z;
  for (int n = 1; n < 100000; ++n) {
    const C term = zn / R(n * n);
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
    zn *= z;
  }
  return sum;
}

// sum_{n>=0} B_n w^{n+1} / (n+1)!, w = -log(1-z). Converges for |w| < 2 pi;
// used on |z| <= 1, Re z <= 1/2 where |w| < 1.3.
template <class C>
C li2_bernoulli_series(const C& z) {
  using R = typename C::value_type;
  const R eps = std::numeric_limits<R>::epsilon();
  const C w = -log(C(1) - z);
  const C w2 = w * w;
  C sum = w - w2 / R(4);
  C wpow = w;       // w^{2k+1}
  R factorial(1);   // (2k+1)!
  for (int k = 1; k < 10000; ++k) {
    wpow *= w2;
    factorial *= R((2 * k) * (2 * k + 1));
    const C term = wpow * (boost::math::bernoulli_b2n<R>(k) / factorial);
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

template <class C>
C li2_unit_disk(const C& z) {
  using R = typename C::value_type;
  const R pi2_6 = pi<R>() * pi<R>() / 6;
  if (real(z) > R(0.5)) {
    // Reflection: Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z).
    const C w = C(1) - z;
    return C(pi2_6) - log(z) * log(w) - li2_unit_disk(w);
  }
  if (abs(z) <= R(0.5)) return li2_power_series(z);
  return li2_bernoulli_series(z);
}

}  // namespace detail

// Principal branch of the dilogarithm, Li2(z) = -int_0^z log(1-t)/t dt.
// On the cut z in (1, inf) the value is the limit from below (Im z -> 0-).
template <class C>
C li2(const C& z) {
  using R = typename C::value_type;
  const R pi2_6 = pi<R>() * pi<R>() / 6;
  const R x = real(z);
  const R y = imag(z);
  if (x == 0 && y == 0) return C(0);
  if (x == 1 && y == 0) return C(pi2_6);
  if (y == 0 && x > 1) {
    // Li2(x - i0) = pi^2/3 - log^2(x)/2 - Li2(1/x) - i pi log x.
    const R lx = log(x);
    const R re = 2 * pi2_6 - lx * lx / 2 - real(detail::li2_unit_disk(C(R(1) / x)));
    return C(re, -pi<R>() * lx);
  }
  if (abs(z) <= R(1)) return detail::li2_unit_disk(z);
  // Inversion: Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z).
  const C l = log(-z);
  return C(-pi2_6) - l * l / R(2) - detail::li2_unit_disk(C(1) / z);
}

// D is singular (continuous but not smooth) at 0 and 1; the Bloch group
// convention [0] = [1] = 0 makes those terms vanish.
template <class C>
bool dilog_singular_point(const C& z) {
  return imag(z) == 0 && (real(z) == 0 || real(z) == 1);
}

// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + log|z| arg(1-z).
template <class C>
typename C::value_type bloch_wigner(const C& z) {
  using R = typename C::value_type;
  if (imag(z) == 0) return R(0);
  return imag(li2(z)) + log(abs(z)) * arg(C(1) - z);
}

// Rogers dilogarithm L(x) = Li2(x) + log(x) log(1-x)/2 on [0,1].
template <class R>
R rogers_L(const R& x) {
  if (x < 0 || x > 1) throw InvalidArgument("rogers_L: argument outside [0,1]");
  using C = boost::multiprecision::number<boost::multiprecision::complex_adaptor<typename R::backend_type>,
                                          boost::multiprecision::et_off>;
  if (x == 0) return R(0);
  if (x == 1) return pi<R>() * pi<R>() / 6;
  return real(li2(C(x))) + log(x) * log(R(1) - x) / 2;
}

// |D(x) + D(1-xy) + D(y) + D((1-y)/(1-xy)) + D((1-x)/(1-xy))|.
template <class C>
typename C::value_type five_term_residual(const C& x, const C& y) {
  const C one_xy = C(1) - x * y;
  if (real(one_xy) == 0 && imag(one_xy) == 0) throw DegenerateInput("five_term_residual: 1 - xy = 0");
  const auto s = bloch_wigner(x) + bloch_wigner(one_xy) + bloch_wigner(y) + bloch_wigner((C(1) - y) / one_xy) +
                 bloch_wigner((C(1) - x) / one_xy);
  return abs(s);
}

}  // namespace nahm

#endif  // NAHM_DILOG_HPP
