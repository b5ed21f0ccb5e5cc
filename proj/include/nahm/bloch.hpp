#ifndef NAHM_BLOCH_HPP
#define NAHM_BLOCH_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dilog.hpp"
#include "dynkin.hpp"
#include "report.hpp"
#include "solver.hpp"

namespace nahm {

// Formal sum sum n_i [z_i]. Terms at 0 and 1 are zero by convention and are
// dropped on insertion, leaving a note.
template <class C>
class BlochElement {
 public:
  struct Term {
    int coefficient;
    C argument;
  };

  void add(int coefficient, const C& z) {
    if (dilog_singular_point(z)) {
      notes_.push_back("dropped [" + to_decimal(real(z)) + "]");
      return;
    }
    terms_.push_back({coefficient, z});
  }

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // D(xi) = sum n_i D(z_i).
  typename C::value_type bloch_wigner_value() const {
    typename C::value_type s(0);
    for (const auto& t : terms_) s += t.coefficient * bloch_wigner(t.argument);
    return s;
  }

 private:
  std::vector<Term> terms_;
  std::vector<std::string> notes_;
};

// xi_x = sum_i [x_i] for a solution of x = (1-x)^A.
template <class P>
BlochElement<complex_t<P>> xi_element(const Solution<P>& s) {
  BlochElement<complex_t<P>> xi;
  for (const auto& v : s.x) xi.add(1, v);
  return xi;
}

template <class P>
real_t<P> xi_D(const Solution<P>& s) {
  return xi_element(s).bloch_wigner_value();
}

inline constexpr double kTorsionTolerance = 1e-18;

// |D(xi_x)| < 1e-18 for every solution; conjugate solutions in the set stand
// in for the complex embeddings of the number field.
template <class P>
VerificationReport torsion_check(const SolutionSet<P>& set, double tolerance = kTorsionTolerance) {
  VerificationReport r;
  r.command = "torsion " + set.pair;
  r.seed = set.seed;
  r.precision_bits = P::bits;
  r.metadata["pair"] = set.pair;
  r.metadata["solutions"] = set.solutions.size();
  r.metadata["starts"] = set.starts;
  if (set.solutions.empty()) {
    r.add(make_check("torsion " + set.pair + ": solution set nonempty", 1, 1, "no solutions found"));
    return r;
  }
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    using std::abs;
    const double v = to_double(abs(xi_D(set.solutions[i])));
    r.add(make_check("torsion " + set.pair + " solution " + std::to_string(i), v, tolerance));
  }
  return r;
}

inline constexpr double kFunctionalEquationTolerance = 1e-30;

// Five-term, two-term (D(x)+D(1-x), D(x)+D(1/x)) and conjugation relations at
// random points of the disk of radius 2; each relation is one check holding the
// worst residual.
template <class P>
VerificationReport verify_functional_equations(int points, std::uint64_t seed,
                                               double tolerance = kFunctionalEquationTolerance) {
  using C = complex_t<P>;
  using R = real_t<P>;
  VerificationReport r;
  r.command = "verify fiveterm";
  r.seed = seed;
  r.precision_bits = P::bits;
  r.metadata["points"] = points;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  auto draw = [&] { return std::polar(2 * std::sqrt(radius(rng)), angle(rng)); };
  double five = 0, reflect = 0, invert = 0, conj_res = 0;
  for (int i = 0; i < points; ++i) {
    std::complex<double> a = draw(), b = draw();
    while (std::abs(1.0 - a * b) < 1e-3 || std::abs(a) < 1e-3 || std::abs(b) < 1e-3) {
      a = draw();
      b = draw();
    }
    const C x = convert_complex<C>(a);
    const C y = convert_complex<C>(b);
    using std::abs;
    five = std::max(five, to_double(five_term_residual(x, y)));
    const R dx = bloch_wigner(x);
    reflect = std::max(reflect, to_double(abs(dx + bloch_wigner(C(C(1) - x)))));
    invert = std::max(invert, to_double(abs(dx + bloch_wigner(C(C(1) / x)))));
    conj_res = std::max(conj_res, to_double(abs(dx + bloch_wigner(C(conj(x))))));
  }
  r.add(make_check("five-term relation", five, tolerance));
  r.add(make_check("D(x) + D(1-x)", reflect, tolerance));
  r.add(make_check("D(x) + D(1/x)", invert, tolerance));
  r.add(make_check("D(conj x) + D(x)", conj_res, tolerance));
  return r;
}

struct CentralChargeProbe {
  std::string sum;  // full-precision decimal
  Rational nearest;
  double error = 0;
  int denominator_bound = 0;
};

// Nearest p/q with q <= max_den to s, preferring the smallest q within `tol`.
template <class R>
std::pair<Rational, double> reconstruct_rational(const R& s, int max_den, double tol) {
  Rational best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int q = 1; q <= max_den; ++q) {
    const R scaled = s * q;
    const R p = round(scaled);
    using std::abs;
    const double err = to_double(abs(s - p / q));
    if (err < tol) return {Rational(p.template convert_to<Integer>(), q), err};
    if (err < best_err) {
      best_err = err;
      best = Rational(p.template convert_to<Integer>(), q);
    }
  }
  return {best, best_err};
}

// sum_i L(x_i) / L(1) at the positive solution, reconstructed as a rational
// with denominator at most 4(h+h').
template <class P>
CentralChargeProbe central_charge_probe(const PairIndexing& pair, const PrecisionContext& ctx,
                                        double tol = 1e-20) {
  using R = real_t<P>;
  const auto sol = solve_positive<P>(pair, ctx);
  R s(0);
  for (const auto& x : sol.x) s += rogers_L(R(real(x)));
  s /= rogers_L(R(1));
  CentralChargeProbe probe;
  probe.sum = to_decimal(s);
  probe.denominator_bound = 4 * (pair.h() + pair.h_prime());
  auto [q, err] = reconstruct_rational(s, probe.denominator_bound, tol);
  probe.nearest = q;
  probe.error = err;
  if (!(err < tol))
    throw ReconstructionFailed("central charge " + probe.sum + " has no rational within " + std::to_string(tol));
  return probe;
}

}  // namespace nahm

#endif  // NAHM_BLOCH_HPP
