#ifndef NAHM_DYNKIN_HPP
#define NAHM_DYNKIN_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rational.hpp"

namespace nahm {

enum class Family { A, D, E, T };

inline char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
    case Family::T: return 'T';
  }
  return '?';
}

// A simply-laced Dynkin diagram or the tadpole T_r (the folding of A_{2r}).
//
// Vertex numbering (0-based internally, 1-based in output):
//   A_n, T_n  path 1-2-...-n; the tadpole loop sits on vertex n.
//   D_n       path 1-...-(n-2), with n-1 and n both attached to n-2.
//   E_n       Bourbaki: chain 1-3-4-5-...-n, vertex 2 attached to 4.
class DynkinDiagram {
 public:
  static DynkinDiagram make(Family family, int rank) {
    if (rank <= 0) throw InvalidArgument("rank must be positive");
    if (family == Family::E && (rank < 6 || rank > 8)) throw InvalidArgument("invalid rank for E");
    if (family == Family::D && rank < 2) throw InvalidArgument("invalid rank for D");
    return DynkinDiagram(family, rank);
  }

  // "A3", "d4", "E8", "T2".
  static DynkinDiagram parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 2) throw InvalidArgument("bad diagram name '" + text + "'");
    Family f;
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'A': f = Family::A; break;
      case 'D': f = Family::D; break;
      case 'E': f = Family::E; break;
      case 'T': f = Family::T; break;
      default: throw InvalidArgument("unknown diagram family in '" + text + "'");
    }
    const std::string digits = s.substr(1);
    if (digits.empty() || digits.size() > 4 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InvalidArgument("bad diagram rank in '" + text + "'");
    return make(f, std::stoi(digits));
  }

  Family family() const { return family_; }
  int rank() const { return rank_; }
  bool tadpole() const { return family_ == Family::T; }
  std::string name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

  bool operator==(const DynkinDiagram&) const = default;

  // Undirected edges, 0-based, each listed once with a < b.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    const int n = rank_;
    switch (family_) {
      case Family::A:
      case Family::T:
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        break;
      case Family::D:
        for (int i = 0; i + 1 < n - 2; ++i) e.emplace_back(i, i + 1);
        if (n >= 3) {
          e.emplace_back(n - 3, n - 2);
          e.emplace_back(n - 3, n - 1);
        }
        break;
      case Family::E:
        e.emplace_back(0, 2);
        e.emplace_back(1, 3);
        for (int i = 2; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        break;
    }
    return e;
  }

 private:
  DynkinDiagram(Family f, int r) : family_(f), rank_(r) {}

  Family family_;
  int rank_;
};

inline RationalMatrix adjacency_matrix(const DynkinDiagram& d) {
  RationalMatrix m(d.rank(), d.rank());
  for (auto [a, b] : d.edges()) {
    m(a, b) = 1;
    m(b, a) = 1;
  }
  if (d.tadpole()) m(d.rank() - 1, d.rank() - 1) = 1;
  return m;
}

inline RationalMatrix cartan_matrix(const DynkinDiagram& d) {
  return RationalMatrix::identity(d.rank()).scaled(2) - adjacency_matrix(d);
}

inline int coxeter_number(const DynkinDiagram& d) {
  const int n = d.rank();
  switch (d.family()) {
    case Family::A: return n + 1;
    case Family::D: return 2 * n - 2;
    case Family::E: return n == 6 ? 12 : n == 7 ? 18 : 30;
    case Family::T: return 2 * n + 1;
  }
  return 0;
}

// Two-colouring of the vertex set. Tadpoles carry a loop and cannot be
// coloured; they report `degenerate` with every vertex on both sides.
struct Bipartition {
  std::vector<int> plus;
  std::vector<int> minus;
  bool degenerate = false;

  // +1 / -1 colour for a non-degenerate partition.
  std::vector<int> signs(int rank) const {
    std::vector<int> s(rank, 0);
    for (int v : plus) s[v] = 1;
    for (int v : minus) s[v] = -1;
    return s;
  }
};

inline Bipartition bipartition(const DynkinDiagram& d) {
  Bipartition b;
  const int n = d.rank();
  if (d.tadpole()) {
    b.degenerate = true;
    for (int v = 0; v < n; ++v) b.plus.push_back(v);
    b.minus = b.plus;
    return b;
  }
  std::vector<std::vector<int>> adj(n);
  for (auto [a, c] : d.edges()) {
    adj[a].push_back(c);
    adj[c].push_back(a);
  }
  // BFS from the lowest-numbered vertex of each component, which gets +1.
  std::vector<int> colour(n, 0);
  for (int start = 0; start < n; ++start) {
    if (colour[start] != 0) continue;
    colour[start] = 1;
    std::vector<int> queue{start};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int v = queue[q];
      for (int w : adj[v]) {
        if (colour[w] == 0) {
          colour[w] = -colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          throw Error("diagram " + d.name() + " is not bipartite");
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) (colour[v] > 0 ? b.plus : b.minus).push_back(v);
  return b;
}

// Numerical positive-definiteness via pivoted LDL^T.
inline bool positive_definite(const RationalMatrix& m, double tol = 1e-12) {
  if (!m.square()) return false;
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = static_cast<double>(m(i, j));
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success) return false;
  return ldlt.vectorD().minCoeff() > tol;
}

// A = C(X) (x) C(X')^{-1}, rows and columns indexed by (i,i') row-major.
inline RationalMatrix nahm_matrix(const DynkinDiagram& x, const DynkinDiagram& xp) {
  RationalMatrix a = cartan_matrix(x).kronecker(cartan_matrix(xp).inverse());
  if (!a.symmetric() || !positive_definite(a))
    throw Error("Nahm matrix for (" + x.name() + "," + xp.name() + ") failed the positive-definiteness check");
  return a;
}

// One neighbour term in the Y-system: the flat index it refers to and the
// adjacency exponent it carries.
struct Neighbour {
  int index;
  int power;
};

// The product index set I x I' with everything the Y-system needs:
// colouring, parity sublattice P+, the window S+ and the folding multiplicity.
class PairIndexing {
 public:
  PairIndexing(const DynkinDiagram& x, const DynkinDiagram& xp)
      : x_(x), xp_(xp), r_(x.rank()), rp_(xp.rank()), h_(coxeter_number(x)), hp_(coxeter_number(xp)) {
    const auto ix = adjacency_matrix(x);
    const auto ixp = adjacency_matrix(xp);
    tadpole_ = x.tadpole() || xp.tadpole();
    multiplicity_ = (x.tadpole() && xp.tadpole()) ? 2 : 1;

    const int n = size();
    eps_.assign(n, 1);
    if (!tadpole_) {
      const auto s = bipartition(x).signs(r_);
      const auto sp = bipartition(xp).signs(rp_);
      for (int i = 0; i < r_; ++i)
        for (int ip = 0; ip < rp_; ++ip) eps_[flat(i, ip)] = s[i] * sp[ip];
    }

    along_x_.resize(n);
    along_xp_.resize(n);
    for (int i = 0; i < r_; ++i)
      for (int ip = 0; ip < rp_; ++ip) {
        const int k = flat(i, ip);
        for (int j = 0; j < r_; ++j) {
          const int p = static_cast<int>(ix(i, j));
          if (p != 0) along_x_[k].push_back({flat(j, ip), p});
        }
        for (int jp = 0; jp < rp_; ++jp) {
          const int p = static_cast<int>(ixp(ip, jp));
          if (p != 0) along_xp_[k].push_back({flat(i, jp), p});
        }
      }

    for (int u = 0; u < period(); ++u)
      for (int k = 0; k < n; ++k)
        if (in_plus(k, u)) splus_.emplace_back(k, u);
  }

  static PairIndexing parse(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidArgument("pair must look like 'A1,T2', got '" + text + "'");
    return PairIndexing(DynkinDiagram::parse(text.substr(0, comma)), DynkinDiagram::parse(text.substr(comma + 1)));
  }

  const DynkinDiagram& first() const { return x_; }
  const DynkinDiagram& second() const { return xp_; }
  std::string name() const { return x_.name() + "," + xp_.name(); }

  int size() const { return r_ * rp_; }
  int rank_first() const { return r_; }
  int rank_second() const { return rp_; }
  int h() const { return h_; }
  int h_prime() const { return hp_; }
  int period() const { return 2 * (h_ + hp_); }
  bool tadpole() const { return tadpole_; }

  int flat(int i, int ip) const { return i * rp_ + ip; }
  std::pair<int, int> split(int k) const { return {k / rp_, k % rp_}; }
  // "(i,i')" with 1-based vertices.
  std::string label(int k) const {
    auto [i, ip] = split(k);
    return "(" + std::to_string(i + 1) + "," + std::to_string(ip + 1) + ")";
  }

  int epsilon(int k) const { return eps_[k]; }
  bool in_plus_set(int k) const { return tadpole_ || eps_[k] > 0; }
  bool in_minus_set(int k) const { return tadpole_ || eps_[k] < 0; }

  // (k,u) in P+ ; every pair is in P+ when a tadpole is involved.
  bool in_plus(int k, int u) const {
    if (tadpole_) return true;
    const int parity = (u % 2 == 0) ? 1 : -1;
    return eps_[k] * parity > 0;
  }

  const std::vector<std::pair<int, int>>& splus() const { return splus_; }
  int multiplicity(int /*k*/, int /*u*/) const { return multiplicity_; }

  const std::vector<Neighbour>& along_first(int k) const { return along_x_[k]; }
  const std::vector<Neighbour>& along_second(int k) const { return along_xp_[k]; }

  // Copy with one recurrence exponent shifted by `delta`; only meaningful as a
  // negative control. `slot` indexes along_first(k) when along_first_diagram,
  // else along_second(k).
  PairIndexing with_perturbed_exponent(int k, bool along_first_diagram, std::size_t slot, int delta) const {
    PairIndexing copy = *this;
    auto& list = along_first_diagram ? copy.along_x_[k] : copy.along_xp_[k];
    if (slot >= list.size()) throw InvalidArgument("no neighbour in that slot");
    list[slot].power += delta;
    return copy;
  }

 private:
  DynkinDiagram x_;
  DynkinDiagram xp_;
  int r_;
  int rp_;
  int h_;
  int hp_;
  bool tadpole_ = false;
  int multiplicity_ = 1;
  std::vector<int> eps_;
  std::vector<std::vector<Neighbour>> along_x_;
  std::vector<std::vector<Neighbour>> along_xp_;
  std::vector<std::pair<int, int>> splus_;
};

}  // namespace nahm

#endif  // NAHM_DYNKIN_HPP
