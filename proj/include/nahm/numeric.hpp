#ifndef NAHM_NUMERIC_HPP
#define NAHM_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace nahm {

// Error hierarchy. Every failure the toolkit reports derives from nahm::Error
// so that the CLI can map it to a diagnostic and an exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct DegenerateStep : Error {
  int index = -1;
  int u = 0;
  DegenerateStep(const std::string& what, int idx, int step)
      : Error(what), index(idx), u(step) {}
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct DegeneratePoint : Error {
  using Error::Error;
};
struct WindowTooShort : Error {
  using Error::Error;
};
struct Unstable : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct PoleInput : Error {
  using Error::Error;
};
struct NonIntegralExponent : Error {
  using Error::Error;
};
struct ReconstructionFailed : Error {
  using Error::Error;
};

// A precision tier bundles a real and a complex scalar type.
//
// Multiprecision tiers use binary floating point with exactly `Bits` mantissa
// bits; expression templates are disabled so `auto` is always a value.
template <unsigned Bits>
struct Tier {
  using backend = boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>;
  using real = boost::multiprecision::number<backend, boost::multiprecision::et_off>;
  using complex = boost::multiprecision::number<boost::multiprecision::complex_adaptor<backend>,
                                                boost::multiprecision::et_off>;
  static constexpr unsigned bits = Bits;
};

// Hardware double; used for the cheap multistart phase of the solver.
struct DoubleTier {
  using real = double;
  using complex = std::complex<double>;
  static constexpr unsigned bits = 53;
};

using P128 = Tier<128>;
using P256 = Tier<256>;
using P512 = Tier<512>;

template <class P>
using real_t = typename P::real;
template <class P>
using complex_t = typename P::complex;

// Runtime precision settings shared by all modules.
struct PrecisionContext {
  unsigned mantissa_bits = 128;
  double tau_eq = 1e-25;
  double tau_res = 1e-20;

  void validate() const {
    if (mantissa_bits < 53) throw InvalidArgument("mantissa_bits must be >= 53");
    if (!(tau_eq > 0) || !(tau_res > 0)) throw InvalidArgument("tolerances must be positive");
  }

  PrecisionContext scaled(double factor) const {
    PrecisionContext c = *this;
    c.tau_eq *= factor;
    c.tau_res *= factor;
    return c;
  }
};

// Calls f.template operator()<P>() with the smallest compiled tier whose
// mantissa covers `bits`.
template <class F>
decltype(auto) with_tier(unsigned bits, F&& f) {
  if (bits <= 128) return std::forward<F>(f).template operator()<P128>();
  if (bits <= 256) return std::forward<F>(f).template operator()<P256>();
  if (bits <= 512) return std::forward<F>(f).template operator()<P512>();
  throw InvalidArgument("precision above 512 bits is not supported");
}

template <class R>
R pi() {
  return boost::math::constants::pi<R>();
}

template <class C>
C make_complex(const typename C::value_type& re, const typename C::value_type& im) {
  return C(re, im);
}

template <class R>
inline double to_double(const R& x) {
  return static_cast<double>(x);
}
inline double to_double(double x) { return x; }

// Converts between tiers (or from double) through the real/imaginary parts.
template <class To, class From>
To convert_complex(const From& z) {
  using std::real;
  using std::imag;
  using Real = typename To::value_type;
  return To(Real(real(z)), Real(imag(z)));
}

// Full-precision decimal rendering for serialization.
template <class R>
std::string to_decimal(const R& x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<R>::max_digits10);
  os << x;
  return os.str();
}

template <class R>
R from_decimal(const std::string& s) {
  return R(s);
}
template <>
inline double from_decimal<double>(const std::string& s) {
  return std::stod(s);
}

}  // namespace nahm

#endif  // NAHM_NUMERIC_HPP
