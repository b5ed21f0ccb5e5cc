#ifndef NAHM_IO_HPP
#define NAHM_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "dynkin.hpp"
#include "numeric.hpp"
#include "rational.hpp"
#include "solver.hpp"
#include "ysystem.hpp"

namespace nahm {

// Matrices: arrays of arrays of "p/q" strings.
inline nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline RationalMatrix matrix_from_json(const nlohmann::json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    rows.emplace_back();
    for (const auto& v : row) rows.back().push_back(parse_rational(v.get<std::string>()));
  }
  return RationalMatrix::from_rows(rows);
}

template <class C>
nlohmann::json complex_to_json(const C& z) {
  using std::real;
  using std::imag;
  return nlohmann::json::array({to_decimal(real(z)), to_decimal(imag(z))});
}

template <class C>
C complex_from_json(const nlohmann::json& j) {
  using R = typename C::value_type;
  return C(from_decimal<R>(j.at(0).get<std::string>()), from_decimal<R>(j.at(1).get<std::string>()));
}

// {"pair", "u": [...], "values": {"(i,i')": [[re,im] | null, ...]}}; entries
// outside P+ are null.
template <class S>
nlohmann::json to_json(const YTrajectory<S>& traj) {
  const auto& pair = traj.pair();
  nlohmann::json j;
  j["pair"] = pair.name();
  j["seeds"] = traj.seed_description();
  nlohmann::json us = nlohmann::json::array();
  for (int u = traj.u_min(); u <= traj.u_max(); ++u) us.push_back(u);
  j["u"] = us;
  nlohmann::json values = nlohmann::json::object();
  for (int k = 0; k < pair.size(); ++k) {
    nlohmann::json col = nlohmann::json::array();
    for (int u = traj.u_min(); u <= traj.u_max(); ++u)
      col.push_back(traj.in_plus(k, u) ? complex_to_json(primal(traj.value(k, u))) : nlohmann::json());
    values[pair.label(k)] = col;
  }
  j["values"] = values;
  return j;
}

inline nlohmann::json to_json(const BranchDiagnostics& d) {
  nlohmann::json j{{"principal_residual", d.principal_residual},
                   {"principal_ok", d.principal_ok},
                   {"searched", d.searched},
                   {"branch_found", d.branch_found},
                   {"branch_residual", d.branch_residual}};
  j["branch"] = d.branch;
  return j;
}

inline BranchDiagnostics branch_from_json(const nlohmann::json& j) {
  BranchDiagnostics d;
  d.principal_residual = j.at("principal_residual").get<double>();
  d.principal_ok = j.at("principal_ok").get<bool>();
  d.searched = j.at("searched").get<bool>();
  d.branch_found = j.at("branch_found").get<bool>();
  d.branch_residual = j.at("branch_residual").get<double>();
  d.branch = j.at("branch").get<std::vector<int>>();
  return d;
}

template <class P>
nlohmann::json to_json(const Solution<P>& s) {
  nlohmann::json y = nlohmann::json::array();
  nlohmann::json x = nlohmann::json::array();
  for (const auto& v : s.y) y.push_back(complex_to_json(v));
  for (const auto& v : s.x) x.push_back(complex_to_json(v));
  return {{"y", y},
          {"x", x},
          {"residual", s.residual},
          {"multiplicity_hint", s.multiplicity_hint},
          {"branch", to_json(s.branch)}};
}

template <class P>
Solution<P> solution_from_json(const nlohmann::json& j) {
  Solution<P> s;
  for (const auto& v : j.at("y")) s.y.push_back(complex_from_json<complex_t<P>>(v));
  for (const auto& v : j.at("x")) s.x.push_back(complex_from_json<complex_t<P>>(v));
  s.residual = j.at("residual").get<double>();
  s.multiplicity_hint = j.at("multiplicity_hint").get<int>();
  s.branch = branch_from_json(j.at("branch"));
  return s;
}

template <class P>
nlohmann::json to_json(const SolutionSet<P>& set) {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : set.solutions) sols.push_back(to_json(s));
  return {{"pair", set.pair},
          {"precision_bits", P::bits},
          {"starts", set.starts},
          {"seed", set.seed},
          {"dedup_tol", set.dedup_tol},
          {"converged_starts", set.converged_starts},
          {"rejected_degenerate", set.rejected_degenerate},
          {"rejected_residual", set.rejected_residual},
          {"solutions", sols}};
}

template <class P>
SolutionSet<P> solution_set_from_json(const nlohmann::json& j) {
  SolutionSet<P> set;
  set.pair = j.at("pair").get<std::string>();
  set.starts = j.at("starts").get<int>();
  set.seed = j.at("seed").get<std::uint64_t>();
  set.dedup_tol = j.at("dedup_tol").get<double>();
  set.converged_starts = j.at("converged_starts").get<int>();
  set.rejected_degenerate = j.at("rejected_degenerate").get<int>();
  set.rejected_residual = j.at("rejected_residual").get<int>();
  for (const auto& s : j.at("solutions")) set.solutions.push_back(solution_from_json<P>(s));
  return set;
}

}  // namespace nahm

#endif  // NAHM_IO_HPP
