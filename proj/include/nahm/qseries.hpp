#ifndef NAHM_QSERIES_HPP
#define NAHM_QSERIES_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "numeric.hpp"
#include "rational.hpp"
#include "report.hpp"

namespace nahm {

// q^C * sum_{k<=N} c_k q^k with exact integer coefficients. Products and sums
// truncate to the smaller order of the operands.
class PowerSeries {
 public:
  PowerSeries() : PowerSeries(0) {}
  explicit PowerSeries(int order, Rational prefactor = 0) : prefactor_(std::move(prefactor)) {
    if (order < 0) throw InvalidArgument("series order must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, Integer(0));
  }

  static PowerSeries one(int order) { return monomial(0, order); }
  static PowerSeries monomial(int k, int order) {
    PowerSeries s(order);
    if (k >= 0 && k <= order) s.coeffs_[static_cast<std::size_t>(k)] = 1;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& prefactor() const { return prefactor_; }
  void set_prefactor(Rational c) { prefactor_ = std::move(c); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Integer& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

  PowerSeries truncated(int order) const {
    PowerSeries s(std::min(order, this->order()), prefactor_);
    std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
    return s;
  }

  // In-place multiplication by (1 - q^k) and by 1/(1 - q^k).
  void mul_one_minus(int k) {
    if (k <= 0) throw InvalidArgument("mul_one_minus: k must be positive");
    for (int m = order(); m >= k; --m) coeffs_[m] -= coeffs_[m - k];
  }
  void div_one_minus(int k) {
    if (k <= 0) throw InvalidArgument("div_one_minus: k must be positive");
    for (int m = k; m <= order(); ++m) coeffs_[m] += coeffs_[m - k];
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    if (a.prefactor_ != b.prefactor_) throw InvalidArgument("cannot add series with different prefactors");
    PowerSeries s(std::min(a.order(), b.order()), a.prefactor_);
    for (int k = 0; k <= s.order(); ++k) s.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return s;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()), a.prefactor_ + b.prefactor_);
    const int n = s.order();
    for (int i = 0; i <= n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int j = 0; i + j <= n; ++j) s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return s;
  }

  bool operator==(const PowerSeries& o) const { return prefactor_ == o.prefactor_ && coeffs_ == o.coeffs_; }

 private:
  Rational prefactor_;
  std::vector<Integer> coeffs_;
};

// (q)_n = (1-q)(1-q^2)...(1-q^n) to order N.
inline PowerSeries pochhammer_q(int n, int order) {
  if (n < 0) throw InvalidArgument("pochhammer_q: n must be >= 0");
  PowerSeries s = PowerSeries::one(order);
  for (int k = 1; k <= std::min(n, order); ++k) s.mul_one_minus(k);
  return s;
}

// 1/(q)_n: partitions into parts <= n.
inline PowerSeries inverse_pochhammer_q(int n, int order) {
  if (n < 0) throw InvalidArgument("inverse_pochhammer_q: n must be >= 0");
  PowerSeries s = PowerSeries::one(order);
  for (int k = 1; k <= std::min(n, order); ++k) s.div_one_minus(k);
  return s;
}

namespace detail {

// Radius R with |n| <= R for every n >= 0 having n^T A n / 2 + B^T n <= N.
inline int lattice_radius(const RationalMatrix& a, const std::vector<Rational>& b, int order) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(a(i, j));
  const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (!(lambda > 1e-12)) throw InvalidArgument("f_abc: A must be positive definite");
  double bnorm = 0;
  for (const auto& v : b) bnorm += std::pow(static_cast<double>(v), 2);
  bnorm = std::sqrt(bnorm);
  const double lam = lambda * (1 - 1e-9);
  return static_cast<int>(std::floor((bnorm + std::sqrt(bnorm * bnorm + 2 * lam * order)) / lam)) + 1;
}

}  // namespace detail

// f_{A,B,C} = sum_{n >= 0} q^{n^T A n/2 + B^T n + C} / ((q)_{n_1} ... (q)_{n_r}) to order N.
inline PowerSeries f_abc(const RationalMatrix& a, const std::vector<Rational>& b, const Rational& c, int order) {
  if (order < 0) throw InvalidArgument("f_abc: N must be >= 0");
  if (!a.square() || !a.symmetric()) throw InvalidArgument("f_abc: A must be square and symmetric");
  const int r = static_cast<int>(a.rows());
  if (static_cast<int>(b.size()) != r) throw InvalidArgument("f_abc: B has the wrong length");
  const int radius = detail::lattice_radius(a, b, order);

  PowerSeries total(order, c);
  std::vector<int> n(static_cast<std::size_t>(r), 0);
  // Odometer over the box [0, radius]^r.
  while (true) {
    Rational e = 0;
    for (int i = 0; i < r; ++i) {
      e += b[i] * n[i];
      for (int j = 0; j < r; ++j) e += a(i, j) * n[i] * n[j] / 2;
    }
    if (e <= order) {
      if (denominator(e) != 1) throw NonIntegralExponent("f_abc: exponent " + rational_to_string(e) + " is not an integer");
      if (e < 0) throw InvalidArgument("f_abc: negative exponent " + rational_to_string(e));
      const int shift = static_cast<int>(numerator(e));
      PowerSeries term = PowerSeries::monomial(shift, order);
      for (int i = 0; i < r; ++i)
        for (int k = 1; k <= std::min(n[i], order); ++k) term.div_one_minus(k);
      for (int k = shift; k <= order; ++k) total[k] += term[k];
    }
    int i = 0;
    while (i < r && n[i] == radius) n[i++] = 0;
    if (i == r) break;
    ++n[i];
  }
  return total;
}

// prod_{n > 0, n mod m in residues} 1/(1 - q^n) to order N.
inline PowerSeries eta_like_product(const std::set<int>& residues, int modulus, int order) {
  if (modulus < 2) throw InvalidArgument("eta_like_product: modulus must be >= 2");
  for (int r : residues)
    if (r < 1 || r >= modulus) throw InvalidArgument("eta_like_product: residues must lie in 1..m-1");
  PowerSeries s = PowerSeries::one(order);
  for (int n = 1; n <= order; ++n)
    if (residues.count(n % modulus)) s.div_one_minus(n);
  return s;
}

// Exact coefficient comparison up to the smaller truncation; one check for the
// prefactor and one whose residual counts the mismatched coefficients.
inline VerificationReport compare_series(const PowerSeries& lhs, const PowerSeries& rhs, int order,
                                         const std::string& label = "series") {
  VerificationReport r;
  r.command = "compare " + label;
  r.precision_bits = 0;
  const int n = std::min({order, lhs.order(), rhs.order()});
  r.metadata["order"] = n;
  r.metadata["lhs_prefactor"] = rational_to_string(lhs.prefactor());
  r.metadata["rhs_prefactor"] = rational_to_string(rhs.prefactor());
  r.add(make_check(label + ": prefactor", lhs.prefactor() == rhs.prefactor() ? 0.0 : 1.0, 0.5,
                   rational_to_string(lhs.prefactor()) + " vs " + rational_to_string(rhs.prefactor())));
  int mismatches = 0;
  int first = -1;
  for (int k = 0; k <= n; ++k)
    if (lhs[k] != rhs[k]) {
      ++mismatches;
      if (first < 0) first = k;
    }
  r.add(make_check(label + ": coefficients to q^" + std::to_string(n), mismatches, 0.5,
                   first < 0 ? std::string{} : "first mismatch at q^" + std::to_string(first)));
  return r;
}

// Sum and product side of a q-series identity.
struct SeriesIdentity {
  std::string name;
  PowerSeries sum_side;
  PowerSeries product_side;
};

inline SeriesIdentity rogers_ramanujan(int which, int order) {
  if (which != 1 && which != 2) throw InvalidArgument("rogers_ramanujan: which must be 1 or 2");
  const RationalMatrix a = RationalMatrix::from_rows({{2}});
  const Rational c = which == 1 ? Rational(-1, 60) : Rational(11, 60);
  SeriesIdentity id;
  id.name = which == 1 ? "rogers-ramanujan 1" : "rogers-ramanujan 2";
  id.sum_side = f_abc(a, {Rational(which - 1)}, c, order);
  id.product_side = eta_like_product(which == 1 ? std::set<int>{1, 4} : std::set<int>{2, 3}, 5, order);
  id.product_side.set_prefactor(c);
  return id;
}

// sum q^{N1^2 + N2^2} / ((q)_{n1} (q)_{n2}), N1 = n1 + n2, N2 = n2, against
// the product over n not congruent to 0, +-3 mod 7.
inline SeriesIdentity andrews_gordon_2(int order) {
  SeriesIdentity id;
  id.name = "andrews-gordon 2";
  id.sum_side = f_abc(RationalMatrix::from_rows({{2, 2}, {2, 4}}), {Rational(0), Rational(0)}, 0, order);
  id.product_side = eta_like_product({1, 2, 5, 6}, 7, order);
  return id;
}

inline nlohmann::json to_json(const PowerSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(c.str());
  return {{"C", rational_to_string(s.prefactor())}, {"coeffs", coeffs}, {"N", s.order()}};
}

inline PowerSeries series_from_json(const nlohmann::json& j) {
  const int n = j.at("N").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != n + 1) throw InvalidArgument("series JSON: coeffs must have N+1 entries");
  PowerSeries s(n, parse_rational(j.at("C").get<std::string>()));
  for (int k = 0; k <= n; ++k) s[k] = Integer(coeffs[static_cast<std::size_t>(k)].get<std::string>());
  return s;
}

}  // namespace nahm

#endif  // NAHM_QSERIES_HPP
