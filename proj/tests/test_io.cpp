#include <gtest/gtest.h>

#include <nahm/io.hpp>
#include <nahm/verify.hpp>

using namespace nahm;

namespace {

using C = complex_t<P128>;
using R = real_t<P128>;

double distance(const C& a, const C& b) { return to_double(abs(a - b)); }

}  // namespace

TEST(Json, MatrixRoundTrip) {
  const auto a = nahm_matrix(DynkinDiagram::parse("A1"), DynkinDiagram::parse("A2"));
  const auto j = to_json(a);
  EXPECT_EQ(j[0][0], "4/3");
  EXPECT_EQ(j[0][1], "2/3");
  EXPECT_EQ(matrix_from_json(j), a);
  const auto b = nahm_matrix(DynkinDiagram::parse("A2"), DynkinDiagram::parse("T2"));
  EXPECT_EQ(matrix_from_json(to_json(b)), b);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"([["1","2"],["3"]])")), InvalidArgument);
}

TEST(Json, ComplexKeepsFullPrecision) {
  const C z(sqrt(R(2)), -pi<R>());
  const auto back = complex_from_json<C>(complex_to_json(z));
  EXPECT_LT(distance(back, z), 1e-37);
}

TEST(Json, SolutionSetRoundTrip) {
  const auto set = solve_all<P128>(PairIndexing::parse("A2,A1"), SolveBudget{200, 3, 6}, PrecisionContext{});
  ASSERT_EQ(set.solutions.size(), 2u);
  const auto j = to_json(set);
  EXPECT_EQ(j["pair"], "A2,A1");
  EXPECT_EQ(j["precision_bits"], 128);
  const auto back = solution_set_from_json<P128>(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.pair, set.pair);
  EXPECT_EQ(back.starts, set.starts);
  EXPECT_EQ(back.seed, set.seed);
  EXPECT_EQ(back.converged_starts, set.converged_starts);
  ASSERT_EQ(back.solutions.size(), set.solutions.size());
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& a = set.solutions[i];
    const auto& b = back.solutions[i];
    for (std::size_t k = 0; k < a.y.size(); ++k) {
      EXPECT_LT(distance(a.y[k], b.y[k]), 1e-36);
      EXPECT_LT(distance(a.x[k], b.x[k]), 1e-36);
    }
    EXPECT_EQ(a.residual, b.residual);
    EXPECT_EQ(a.branch.branch, b.branch.branch);
    EXPECT_EQ(a.branch.principal_ok, b.branch.principal_ok);
  }
}

TEST(Json, ReportRoundTrip) {
  auto r = verify_wedge<P128>(PairIndexing::parse("A1,T1"), 3, 7, PrecisionContext{});
  r.metadata["extra"] = {1, 2, 3};
  r.wall_time_s = 0.25;
  r.checks[0].note = "a note";
  const auto j = to_json(r);
  EXPECT_EQ(j["pass"], r.pass());
  const auto back = report_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.command, r.command);
  EXPECT_EQ(back.metadata, r.metadata);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.precision_bits, r.precision_bits);
  EXPECT_EQ(back.wall_time_s, r.wall_time_s);
  ASSERT_EQ(back.checks.size(), r.checks.size());
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    EXPECT_EQ(back.checks[i].name, r.checks[i].name);
    EXPECT_EQ(back.checks[i].residual, r.checks[i].residual);
    EXPECT_EQ(back.checks[i].tolerance, r.checks[i].tolerance);
    EXPECT_EQ(back.checks[i].pass, r.checks[i].pass);
    EXPECT_EQ(back.checks[i].note, r.checks[i].note);
  }
}

TEST(Json, TrajectoryShape) {
  const auto p = PairIndexing::parse("A2,A1");
  const auto traj = iterate(p, seeds_from_variables(p, std::vector<C>{C(2), C(3)}), 5, PrecisionContext{});
  const auto j = to_json(traj);
  EXPECT_EQ(j["pair"], "A2,A1");
  EXPECT_EQ(j["u"].front(), -1);
  EXPECT_EQ(j["u"].back(), 5);
  ASSERT_EQ(j["values"].size(), 2u);
  int nulls = 0, values = 0;
  for (const auto& [label, col] : j["values"].items()) {
    ASSERT_EQ(col.size(), j["u"].size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      const int u = j["u"][i];
      const int k = label == p.label(0) ? 0 : 1;
      EXPECT_EQ(col[i].is_null(), !p.in_plus(k, u)) << label << " u=" << u;
      col[i].is_null() ? ++nulls : ++values;
    }
  }
  EXPECT_GT(nulls, 0);
  EXPECT_GT(values, 0);
  EXPECT_LT(distance(complex_from_json<C>(j["values"][p.label(0)][1]), traj.value(0, 0)), 1e-36);
}
