#include <gtest/gtest.h>

#include <msurf/solver.hpp>

using namespace msurf;

namespace {

auto anywhere = [](const Eigen::VectorXd&) { return true; };

Eigen::VectorXd vec(std::initializer_list<double> xs)
{
    Eigen::VectorXd v(xs.size());
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

} // namespace

TEST(NelderMead, Quadratic)
{
    SimplexConfig cfg;
    cfg.targetResidual = 1e-14;
    auto f = [](const Eigen::VectorXd& x) { return (x - vec({1, -2, 3})).squaredNorm(); };
    auto r = nelder_mead(f, vec({0, 0, 0}), anywhere, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_LT((r.x - vec({1, -2, 3})).norm(), 1e-6);
}

TEST(NelderMead, Rosenbrock)
{
    SimplexConfig cfg;
    cfg.targetResidual = 1e-12;
    cfg.maxIterations = 5000;
    cfg.initialSpread = 0.5;
    auto f = [](const Eigen::VectorXd& x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); };
    auto r = nelder_mead(f, vec({-1.2, 1}), anywhere, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_LT((r.x - vec({1, 1})).norm(), 1e-4);
}

TEST(NelderMead, WallKeepsIteratesFeasible)
{
    // minimum of the unconstrained problem lies outside x > 0.5
    SimplexConfig cfg;
    cfg.maxIterations = 500;
    auto feasible = [](const Eigen::VectorXd& x) { return x[0] > 0.5; };
    auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    auto r = nelder_mead(f, vec({2, 1}), feasible, cfg);
    EXPECT_GT(r.x[0], 0.5);
    EXPECT_NEAR(r.x[0], 0.5, 1e-3);
    for (auto& [x, fx] : r.trajectory) EXPECT_TRUE(feasible(x));
}

TEST(NelderMead, ThrowingObjectiveTreatedAsInfinite)
{
    SimplexConfig cfg;
    cfg.targetResidual = 1e-12;
    auto f = [](const Eigen::VectorXd& x) {
        if (x[0] < 0) throw Error(ErrorKind::NoConvergence, "bad region");
        return std::pow(x[0] - 0.1, 2);
    };
    auto r = nelder_mead(f, vec({1}), anywhere, cfg);
    EXPECT_NEAR(r.x[0], 0.1, 1e-5);
}

TEST(NelderMead, InfeasibleStartRejected)
{
    auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    try {
        nelder_mead(f, vec({0}), [](const Eigen::VectorXd& x) { return x[0] > 1; }, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InfeasibleStart);
    }
}

TEST(NelderMead, InvalidCoefficientsRejected)
{
    SimplexConfig cfg;
    cfg.contraction = 1.5;
    EXPECT_THROW(nelder_mead([](const Eigen::VectorXd&) { return 0.0; }, vec({0}), anywhere, cfg), Error);
}

TEST(TrinoidSolve, DefaultStartConverges)
{
    auto r = solve_trinoid_periods(symmetric_params(-0.5, -1.5, -3.0), false);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.residualNorm, 1e-8);
    EXPECT_LE(r.iterations, 2000);
    EXPECT_NEAR(r.solution.lambda1, -0.3366960146, 1e-6);
    EXPECT_NEAR(r.solution.lambda3, -2.4359624740, 1e-6);
    ASSERT_EQ(r.endAngles.size(), 3u);
    for (double a : r.endAngles) EXPECT_NEAR(a, 2 * M_PI / 3, 1e-6);
}

TEST(TrinoidSolve, InfeasibleStart)
{
    try {
        solve_trinoid_periods({-0.5, -0.2, -3.0, 1, false}, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InfeasibleStart);
    }
}

TEST(TrinoidSolve, TrajectoryIsRecorded)
{
    SimplexConfig cfg;
    cfg.maxIterations = 10;
    auto r = solve_trinoid_periods(symmetric_params(-0.5, -1.5, -3.0), false, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 10);
    EXPECT_EQ(r.trajectory.size(), 11u); // starting simplex plus one entry per iteration
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) EXPECT_LE(r.trajectory[k].second, r.trajectory[k - 1].second);
}

TEST(TrinoidSolve, DegenerateLimitDetected)
{
    EXPECT_TRUE(degenerate_solution({-1e-5, -1, -2, 1, false}));
    EXPECT_FALSE(degenerate_solution(symmetric_params(-0.5, -1.5, -3.0)));
}
