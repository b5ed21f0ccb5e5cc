#ifndef NAHM_JET_HPP
#define NAHM_JET_HPP

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace nahm {

// First-order forward-mode value: v + sum_k d[k] e_k.
// An empty gradient stands for a constant.
template <class C>
struct Jet {
  C v{};
  std::vector<C> d;

  Jet() = default;
  Jet(int x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Jet(const C& x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Jet(const C& x, std::vector<C> grad) : v(x), d(std::move(grad)) {}

  // Seed variable `k` of `n`.
  static Jet variable(const C& x, std::size_t k, std::size_t n) {
    Jet j(x);
    j.d.assign(n, C(0));
    j.d[k] = C(1);
    return j;
  }

  C grad(std::size_t k) const { return k < d.size() ? d[k] : C(0); }
};

template <class T>
struct is_jet : std::false_type {};
template <class C>
struct is_jet<Jet<C>> : std::true_type {};

template <class C>
const C& primal(const Jet<C>& j) {
  return j.v;
}
template <class C, std::enable_if_t<!is_jet<C>::value, int> = 0>
const C& primal(const C& z) {
  return z;
}

namespace detail {
// out = a*da + b*db over the union of supports.
template <class C>
std::vector<C> combine(const C& a, const std::vector<C>& da, const C& b, const std::vector<C>& db) {
  const std::size_t n = std::max(da.size(), db.size());
  std::vector<C> out(n, C(0));
  for (std::size_t k = 0; k < da.size(); ++k) out[k] += a * da[k];
  for (std::size_t k = 0; k < db.size(); ++k) out[k] += b * db[k];
  return out;
}
}  // namespace detail

template <class C>
Jet<C> operator+(const Jet<C>& a, const Jet<C>& b) {
  return {a.v + b.v, detail::combine(C(1), a.d, C(1), b.d)};
}
template <class C>
Jet<C> operator-(const Jet<C>& a, const Jet<C>& b) {
  return {a.v - b.v, detail::combine(C(1), a.d, C(-1), b.d)};
}
template <class C>
Jet<C> operator-(const Jet<C>& a) {
  return Jet<C>(C(0)) - a;
}
template <class C>
Jet<C> operator*(const Jet<C>& a, const Jet<C>& b) {
  return {a.v * b.v, detail::combine(b.v, a.d, a.v, b.d)};
}
template <class C>
Jet<C> operator/(const Jet<C>& a, const Jet<C>& b) {
  const C q = a.v / b.v;
  const C inv = C(1) / b.v;
  return {q, detail::combine(inv, a.d, -q * inv, b.d)};
}

}  // namespace nahm

#endif  // NAHM_JET_HPP
