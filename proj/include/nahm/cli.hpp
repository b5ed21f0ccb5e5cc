#ifndef NAHM_CLI_HPP
#define NAHM_CLI_HPP

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloch.hpp"
#include "dynkin.hpp"
#include "io.hpp"
#include "qseries.hpp"
#include "report.hpp"
#include "solver.hpp"
#include "verify.hpp"
#include "ysystem.hpp"

namespace nahm::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kBadArguments = 2 };

struct Globals {
  unsigned precision_bits = 128;
  double tol_scale = 1;
  std::uint64_t seed = 1;
  std::string json_path;

  PrecisionContext context() const {
    if (!(tol_scale > 0)) throw InvalidArgument("--tol-scale must be positive");
    PrecisionContext c;
    c.mantissa_bits = precision_bits;
    c.validate();
    return c.scaled(tol_scale);
  }
};

namespace detail {

template <class C>
std::string short_complex(const C& z) {
  using std::real;
  using std::imag;
  std::ostringstream os;
  os << std::setprecision(12) << to_double(real(z));
  const double im = to_double(imag(z));
  if (im != 0) os << (im < 0 ? " - " : " + ") << std::setprecision(12) << std::abs(im) << "i";
  return os.str();
}

inline void print_checks(const VerificationReport& r, std::ostream& out) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(12) << "residual" << "  "
      << std::setw(10) << "tolerance" << "  status\n";
  for (const auto& c : r.checks) {
    std::ostringstream res, tol;
    res << std::setprecision(3) << std::scientific << c.residual;
    tol << std::setprecision(1) << std::scientific << c.tolerance;
    out << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(12) << res.str() << "  "
        << std::setw(10) << tol.str() << "  " << (c.pass ? "pass" : "FAIL");
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (r.pass() ? "PASS" : "FAIL") << ": " << r.checks.size() << " checks, worst residual " << std::setprecision(3)
      << std::scientific << r.worst_residual() << std::defaultfloat << "\n";
}

inline std::set<int> parse_int_set(const std::string& text) {
  std::set<int> s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      s.insert(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidArgument("not an integer list: '" + text + "'");
    }
  }
  return s;
}

// "2,2;2,4" -> [[2,2],[2,4]].
inline RationalMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    rows.emplace_back();
    std::stringstream rs(row);
    std::string v;
    while (std::getline(rs, v, ',')) rows.back().push_back(parse_rational(v));
  }
  if (rows.empty()) throw InvalidArgument("empty matrix");
  return RationalMatrix::from_rows(rows);
}

inline std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  return v;
}

}  // namespace detail

inline VerificationReport matrix_command(const PairIndexing& pair, std::ostream& out) {
  VerificationReport r;
  r.command = "matrix " + pair.name();
  const auto a = nahm_matrix(pair.first(), pair.second());
  r.metadata["pair"] = pair.name();
  r.metadata["matrix"] = to_json(a);
  r.metadata["h"] = pair.h();
  r.metadata["h_prime"] = pair.h_prime();
  r.add(make_check("symmetric", a.symmetric() ? 0.0 : 1.0, 0.5));
  r.add(make_check("positive definite", positive_definite(a) ? 0.0 : 1.0, 0.5));
  out << "A = C(" << pair.first().name() << ") (x) C(" << pair.second().name() << ")^-1, h = " << pair.h()
      << ", h' = " << pair.h_prime() << "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << std::setw(6) << rational_to_short(a(i, j));
    out << " ]\n";
  }
  return r;
}

template <class P>
VerificationReport solve_command(const PairIndexing& pair, bool all, int starts, const Globals& g,
                                 const PrecisionContext& ctx, std::ostream& out) {
  VerificationReport r;
  r.precision_bits = P::bits;
  r.seed = g.seed;
  r.metadata["pair"] = pair.name();
  if (!all) {
    r.command = "solve " + pair.name();
    const auto s = solve_positive<P>(pair, ctx);
    r.metadata["solution"] = to_json(s);
    r.add(make_check("positive solution residual", s.residual, ctx.tau_res));
    out << "positive solution of " << pair.name() << ":\n";
    for (int k = 0; k < pair.size(); ++k)
      out << "  " << pair.label(k) << "  y = " << detail::short_complex(s.y[k])
          << "  x = " << detail::short_complex(s.x[k]) << "\n";
    return r;
  }
  r.command = "solve --all " + pair.name();
  SolveBudget budget;
  budget.starts = starts;
  budget.seed = g.seed;
  const auto set = solve_all<P>(pair, budget, ctx);
  r.metadata["solution_set"] = to_json(set);
  out << set.solutions.size() << " solutions of " << pair.name() << " from " << set.starts << " starts ("
      << set.converged_starts << " converged, " << set.rejected_degenerate << " degenerate, " << set.rejected_residual
      << " above residual tolerance)\n";
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& s = set.solutions[i];
    out << "#" << i << "  basin " << s.multiplicity_hint << "  residual " << std::setprecision(3) << std::scientific
        << s.residual << std::defaultfloat << "  branch "
        << (s.branch.principal_ok ? "principal" : s.branch.branch_found ? "shifted" : "none") << "\n";
    for (int k = 0; k < pair.size(); ++k) out << "    " << pair.label(k) << "  y = " << detail::short_complex(s.y[k]) << "\n";
    r.add(make_check("solution " + std::to_string(i) + " residual", s.residual, ctx.tau_res));
  }
  if (set.solutions.empty()) r.add(make_check("solution set nonempty", 1, 0.5));
  return r;
}

template <class P>
VerificationReport periodicity_command(const PairIndexing& pair, int samples, const std::string& dump,
                                       const Globals& g, const PrecisionContext& ctx) {
  auto r = verify_periodicity<P>(pair, samples, g.seed, ctx);
  if (!dump.empty()) {
    using C = complex_t<P>;
    std::vector<C> y;
    const auto pts = sample_points(1, pair.size(), g.seed);
    for (const auto& v : pts[0]) y.push_back(convert_complex<C>(v));
    const auto traj = iterate(pair, seeds_from_variables(pair, y), 2 * pair.period() - 1, ctx);
    std::ofstream f(dump);
    if (!f) throw InvalidArgument("cannot write " + dump);
    f << to_json(traj).dump(2) << "\n";
  }
  return r;
}

template <class P>
VerificationReport wedge_command(const PairIndexing& pair, int points, const Globals& g, const PrecisionContext& ctx) {
  return verify_wedge<P>(pair, points, g.seed, ctx, kWedgeTolerance * g.tol_scale);
}

template <class P>
VerificationReport dilogsum_command(const PairIndexing& pair, int points, const Globals& g,
                                    const PrecisionContext& ctx) {
  return verify_dilog_sum<P>(pair, points, g.seed, ctx, kDilogSumTolerance * g.tol_scale);
}

template <class P>
VerificationReport torsion_command(const PairIndexing& pair, int starts, const Globals& g,
                                   const PrecisionContext& ctx) {
  SolveBudget budget;
  budget.starts = starts;
  budget.seed = g.seed;
  const auto set = solve_all<P>(pair, budget, ctx);
  auto r = torsion_check(set, kTorsionTolerance * g.tol_scale);
  r.metadata["solution_set"] = to_json(set);
  return r;
}

template <class P>
VerificationReport signs_command(const PairIndexing& pair, const PrecisionContext& ctx) {
  VerificationReport r;
  r.command = "verify signs " + pair.name();
  r.precision_bits = P::bits;
  r.metadata["pair"] = pair.name();
  try {
    const auto signs = monomial_signs<P>(pair, ctx);
    int negative = 0;
    for (int s : signs) negative += s < 0;
    r.metadata["signs"] = signs;
    r.metadata["negative"] = negative;
    r.add(make_check("monomial signs stable over S+", 0, 0.5, std::to_string(negative) + " negative of " +
                                                               std::to_string(signs.size())));
  } catch (const Unstable& e) {
    r.add(make_check("monomial signs stable over S+", 1, 0.5, e.what()));
  }
  return r;
}

template <class P>
VerificationReport central_charge_command(const PairIndexing& pair, const Globals& g, const PrecisionContext& ctx) {
  VerificationReport r;
  r.command = "central charge " + pair.name();
  r.precision_bits = P::bits;
  const double tol = 1e-20 * g.tol_scale;
  try {
    const auto probe = central_charge_probe<P>(pair, ctx, tol);
    r.metadata["sum"] = probe.sum;
    r.metadata["rational"] = rational_to_string(probe.nearest);
    r.add(make_check("central charge " + pair.name() + " = " + rational_to_short(probe.nearest), probe.error, tol));
  } catch (const ReconstructionFailed& e) {
    r.add(make_check("central charge " + pair.name(), 1, tol, e.what()));
  }
  return r;
}

template <class P>
VerificationReport report_command(const PairIndexing& pair, int starts, const Globals& g, const PrecisionContext& ctx,
                                  std::ostream& out) {
  std::ostringstream sink;
  VerificationReport r = matrix_command(pair, sink);
  r.command = "report " + pair.name();
  r.precision_bits = P::bits;
  r.seed = g.seed;
  if (pair.size() <= SolveBudget{}.max_size) {
    const auto t = torsion_command<P>(pair, starts, g, ctx);
    r.merge(t);
    r.metadata["solution_set"] = t.metadata["solution_set"];
  }
  r.merge(verify_periodicity<P>(pair, 5, g.seed, ctx));
  if (pair.size() <= 6) r.merge(wedge_command<P>(pair, 5, g, ctx));
  r.merge(dilogsum_command<P>(pair, 10, g, ctx));
  r.merge(signs_command<P>(pair, ctx));
  const auto cc = central_charge_command<P>(pair, g, ctx);
  r.merge(cc);
  if (cc.metadata.contains("rational")) r.metadata["central_charge"] = cc.metadata["rational"];
  out << "report for " << pair.name() << " (" << P::bits << "-bit)\n";
  return r;
}

inline std::string join_args(int argc, const char* const* argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
  return s;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nahm matrices, Y-systems and dilogarithm identities", "nahm"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--precision-bits", g.precision_bits, "mantissa bits (128, 256 or 512 tiers)")->capture_default_str();
  app.add_option("--tol-scale", g.tol_scale, "multiplier on every default tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--json", g.json_path, "write the report as JSON");

  std::string pair_text;
  bool all = false;
  int starts = 2000;
  int samples = 20;
  int points = 0;
  int order = 0;
  int which = 0;
  std::string dump, a_text, b_text, c_text = "0", residues_text;
  int modulus = 0;

  auto* matrix = app.add_subcommand("matrix", "print A = C(X) (x) C(X')^-1");
  matrix->add_option("--pair", pair_text, "pair of diagrams, e.g. A1,T2")->required();

  auto* solve = app.add_subcommand("solve", "solve the constant Y-system");
  solve->add_option("--pair", pair_text)->required();
  solve->add_flag("--all", all, "multistart search for all solutions");
  solve->add_option("--starts", starts, "multistart budget")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run one verification");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* periodicity = verify->add_subcommand("periodicity", "Y(u + 2(h+h')) = Y(u)");
  periodicity->add_option("--pair", pair_text)->required();
  periodicity->add_option("--samples", samples, "random seed points")->capture_default_str();
  periodicity->add_option("--dump", dump, "write the first trajectory as JSON");
  auto* wedge = verify->add_subcommand("wedge", "regulator form of the constancy condition");
  wedge->add_option("--pair", pair_text)->required();
  wedge->add_option("--points", points, "evaluation points (default 5)");
  auto* dilogsum = verify->add_subcommand("dilogsum", "sum of d D(Y/(1+Y)) over S+");
  dilogsum->add_option("--pair", pair_text)->required();
  dilogsum->add_option("--points", points, "evaluation points (default 10)");
  auto* torsion = verify->add_subcommand("torsion", "sum of D(x) over every solution");
  torsion->add_option("--pair", pair_text)->required();
  torsion->add_option("--starts", starts, "multistart budget")->capture_default_str();
  auto* fiveterm = verify->add_subcommand("fiveterm", "five-term and two-term relations for D");
  fiveterm->add_option("--points", points, "random points (default 1000)");
  auto* signs = verify->add_subcommand("signs", "leading monomial signs over S+");
  signs->add_option("--pair", pair_text)->required();

  auto* qseries = app.add_subcommand("qseries", "exact q-series identities");
  qseries->require_subcommand(1);
  qseries->fallthrough();
  auto* rr = qseries->add_subcommand("rr", "Rogers-Ramanujan identities");
  rr->add_option("--N", order, "truncation order (default 200)");
  rr->add_option("--which", which, "1 or 2 (default both)")->check(CLI::Range(1, 2));
  auto* ag = qseries->add_subcommand("ag", "Andrews-Gordon identity for A = [[2,2],[2,4]]");
  ag->add_option("--N", order, "truncation order (default 100)");
  auto* custom = qseries->add_subcommand("custom", "f_{A,B,C} against an optional product");
  custom->add_option("--N", order, "truncation order")->required();
  custom->add_option("--A", a_text, "matrix rows, e.g. '2,2;2,4'")->required();
  custom->add_option("--B", b_text, "vector, e.g. '0,0' (default zero)");
  custom->add_option("--C", c_text, "prefactor exponent, e.g. -1/60")->capture_default_str();
  custom->add_option("--modulus", modulus, "product side modulus");
  custom->add_option("--residues", residues_text, "product side residues, e.g. '1,4'");

  auto* report = app.add_subcommand("report", "full verification suite for one pair");
  report->add_option("--pair", pair_text)->required();
  report->add_option("--starts", starts, "multistart budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kBadArguments;
  }

  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  try {
    const PrecisionContext ctx = g.context();
    auto pair = [&] { return PairIndexing::parse(pair_text); };
    auto tiered = [&](auto&& f) { return with_tier(g.precision_bits, f); };
    if (matrix->parsed()) {
      r = matrix_command(pair(), out);
    } else if (solve->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return solve_command<P>(p, all, starts, g, ctx, out); });
    } else if (periodicity->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return periodicity_command<P>(p, samples, dump, g, ctx); });
    } else if (wedge->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return wedge_command<P>(p, points ? points : 5, g, ctx); });
    } else if (dilogsum->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return dilogsum_command<P>(p, points ? points : 10, g, ctx); });
    } else if (torsion->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return torsion_command<P>(p, starts, g, ctx); });
    } else if (fiveterm->parsed()) {
      r = tiered([&]<class P>() {
        return verify_functional_equations<P>(points ? points : 1000, g.seed, kFunctionalEquationTolerance * g.tol_scale);
      });
    } else if (signs->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return signs_command<P>(p, ctx); });
    } else if (rr->parsed() || ag->parsed() || custom->parsed()) {
      std::vector<SeriesIdentity> ids;
      if (rr->parsed()) {
        const int n = order ? order : 200;
        for (int w = 1; w <= 2; ++w)
          if (which == 0 || which == w) ids.push_back(rogers_ramanujan(w, n));
      } else if (ag->parsed()) {
        ids.push_back(andrews_gordon_2(order ? order : 100));
      } else {
        const auto a = detail::parse_matrix(a_text);
        auto b = b_text.empty() ? std::vector<Rational>(a.rows(), Rational(0)) : detail::parse_vector(b_text);
        SeriesIdentity id;
        id.name = "custom";
        id.sum_side = f_abc(a, b, parse_rational(c_text), order);
        if (modulus) {
          id.product_side = eta_like_product(detail::parse_int_set(residues_text), modulus, order);
          id.product_side.set_prefactor(id.sum_side.prefactor());
          ids.push_back(id);
        } else {
          r.command = "qseries custom";
          r.metadata["series"] = to_json(id.sum_side);
          out << "q^(" << rational_to_short(id.sum_side.prefactor()) << ") * (";
          for (int k = 0; k <= std::min(order, 20); ++k) out << (k ? ", " : "") << id.sum_side[k];
          out << (order > 20 ? ", ...)\n" : ")\n");
        }
      }
      if (!ids.empty()) r.command = "qseries";
      for (const auto& id : ids) {
        const auto c = compare_series(id.sum_side, id.product_side, id.sum_side.order(), id.name);
        r.merge(c);
        r.metadata[id.name] = {{"sum_side", to_json(id.sum_side)}, {"product_side", to_json(id.product_side)}};
      }
      r.precision_bits = 0;
    } else if (report->parsed()) {
      const auto p = pair();
      r = tiered([&]<class P>() { return report_command<P>(p, starts, g, ctx, out); });
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  r.command = join_args(argc, argv);
  r.metadata["argv"] = r.command;
  if (!r.seed) r.seed = g.seed;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!r.checks.empty()) detail::print_checks(r, out);
  if (!g.json_path.empty()) {
    std::ofstream f(g.json_path);
    if (!f) {
      err << "error: cannot write " << g.json_path << "\n";
      return kBadArguments;
    }
    f << to_json(r).dump(2) << "\n";
  }
  if (!r.pass()) err << "one or more checks failed\n";
  return r.pass() ? kPass : kCheckFailed;
}

}  // namespace nahm::cli

#endif  // NAHM_CLI_HPP
