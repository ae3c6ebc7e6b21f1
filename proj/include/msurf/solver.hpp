#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "catalog.hpp"
#include "ends.hpp"
#include "periods.hpp"

namespace msurf {

struct SimplexConfig {
    double reflection = 1, expansion = 2, contraction = 0.5, shrink = 0.5;
    int maxIterations = 2000;
    double targetResidual = 1e-9;
    double initialSpread = 0.05;
    double minDiameter = 1e-12;

    void validate() const
    {
        if (!(reflection > 0 && expansion > 1 && contraction > 0 && contraction < 1 && shrink > 0 && shrink < 1 &&
              targetResidual > 0 && initialSpread > 0 && maxIterations >= 0))
            throw Error(ErrorKind::InvariantViolation, "invalid simplex coefficients");
    }
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<Eigen::VectorXd, double>> trajectory; // best vertex after each iteration
};

using Objective = std::function<double(const Eigen::VectorXd&)>;
using Feasibility = std::function<bool(const Eigen::VectorXd&)>;

// Nelder-Mead.  Infeasible points get +inf without being evaluated; objective failures
// (numerical errors thrown as msurf::Error) also count as +inf.
inline SimplexResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Feasibility& feasible,
                                 const SimplexConfig& cfg)
{
    cfg.validate();
    const double inf = std::numeric_limits<double>::infinity();
    if (!feasible(x0)) throw Error(ErrorKind::InfeasibleStart, "starting point violates the constraints");
    SimplexResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        if (!feasible(x)) return inf;
        ++res.evaluations;
        try {
            double v = f(x);
            return std::isfinite(v) ? v : inf;
        } catch (const Error&) {
            return inf;
        }
    };
    double f0 = eval(x0);
    if (!std::isfinite(f0)) throw Error(ErrorKind::InfeasibleStart, "objective is not finite at the start");
    res.x = x0;
    res.value = f0;
    res.trajectory.push_back({x0, f0});
    if (f0 <= cfg.targetResidual) {
        res.converged = true;
        return res;
    }

    const int n = int(x0.size());
    std::vector<Eigen::VectorXd> xs{x0};
    std::vector<double> fs{f0};
    for (int i = 0; i < n; ++i) {
        double step = cfg.initialSpread * std::max(1.0, std::abs(x0[i]));
        Eigen::VectorXd v = x0;
        v[i] += step;
        if (!feasible(v)) v[i] = x0[i] - step;
        for (int k = 0; k < 40 && !feasible(v); ++k) {
            step *= 0.5;
            v[i] = x0[i] + ((k % 2) ? -step : step);
        }
        xs.push_back(v);
        fs.push_back(eval(v));
    }

    std::vector<int> idx(n + 1);
    auto order = [&] {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<Eigen::VectorXd> x2;
        std::vector<double> f2;
        for (int i : idx) {
            x2.push_back(xs[i]);
            f2.push_back(fs[i]);
        }
        xs = std::move(x2);
        fs = std::move(f2);
    };
    auto diameter = [&] {
        double d = 0;
        for (int i = 1; i <= n; ++i) d = std::max(d, (xs[i] - xs[0]).norm());
        return d;
    };

    order();
    while (true) {
        res.x = xs[0];
        res.value = fs[0];
        if (fs[0] <= cfg.targetResidual) {
            res.converged = true;
            break;
        }
        if (res.iterations >= cfg.maxIterations || diameter() < cfg.minDiameter) break;
        ++res.iterations;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;
        Eigen::VectorXd xr = centroid + cfg.reflection * (centroid - xs[n]);
        double fr = eval(xr);
        if (fr < fs[0]) {
            Eigen::VectorXd xe = centroid + cfg.expansion * (xr - centroid);
            double fe = eval(xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            bool outside = fr < fs[n];
            Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + cfg.contraction * (xr - centroid))
                                         : Eigen::VectorXd(centroid + cfg.contraction * (xs[n] - centroid));
            double fc = eval(xc);
            if (fc < (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + cfg.shrink * (xs[i] - xs[0]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
        order();
        res.trajectory.push_back({xs[0], fs[0]});
    }
    return res;
}

struct SolveReport {
    TrinoidParams solution;
    double residualNorm = 0;
    double objective = 0;
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<TrinoidParams, double>> trajectory;
    std::vector<double> endAngles;
};

inline bool trinoid_feasible(const Eigen::VectorXd& x)
{
    for (int i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) return false;
    if (!(0 > x[0] && x[0] > x[1] && x[1] > x[2])) return false;
    return x.size() < 4 || x[3] > 0;
}

inline TrinoidParams params_from(const Eigen::VectorXd& x)
{
    if (x.size() >= 4) return TrinoidParams{x[0], x[1], x[2], x[3], false};
    return symmetric_params(x[0], x[1], x[2]);
}

// Sum of |sorted angles - sorted targets|.
inline double angle_mismatch(std::vector<double> angles, std::vector<double> targets)
{
    if (angles.size() != targets.size()) throw Error(ErrorKind::InvariantViolation, "angle target count mismatch");
    std::sort(angles.begin(), angles.end());
    std::sort(targets.begin(), targets.end());
    double s = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) s += std::abs(angles[i] - targets[i]);
    return s;
}

// Minimizes the period residual norm over (l1, l2, l3), or (l1, l2, l3, c) when freeC.  With
// target end angles the mismatch is added to the objective.
inline SolveReport solve_trinoid_periods(const TrinoidParams& x0, bool freeC, const SimplexConfig& cfg = {},
                                         const PeriodConfig& pcfg = {},
                                         const std::optional<std::vector<double>>& targetAngles = std::nullopt)
{
    Eigen::VectorXd v(freeC ? 4 : 3);
    v.head<3>() << x0.lambda1, x0.lambda2, x0.lambda3;
    if (freeC) v[3] = x0.c;
    if (!trinoid_feasible(v)) throw Error(ErrorKind::InfeasibleStart, "start must satisfy 0 > l1 > l2 > l3, c > 0");
    auto objective = [&](const Eigen::VectorXd& x) {
        auto d = make_trinoid_genus1(params_from(x));
        double val = period_residual(d, pcfg).norm;
        if (targetAngles) val += angle_mismatch(end_normal_angles(d, pcfg.numeric), *targetAngles);
        return val;
    };
    auto r = nelder_mead(objective, v, trinoid_feasible, cfg);
    SolveReport rep;
    rep.solution = params_from(r.x);
    rep.objective = r.value;
    rep.residualNorm = period_residual(rep.solution, pcfg).norm;
    rep.iterations = r.iterations;
    rep.evaluations = r.evaluations;
    rep.converged = r.converged;
    for (auto& [x, fx] : r.trajectory) rep.trajectory.push_back({params_from(x), fx});
    try {
        rep.endAngles = end_normal_angles(make_trinoid_genus1(rep.solution), pcfg.numeric);
    } catch (const Error&) {
    }
    return rep;
}

inline double lambda_distance(const TrinoidParams& a, const TrinoidParams& b)
{
    return std::sqrt(std::pow(a.lambda1 - b.lambda1, 2) + std::pow(a.lambda2 - b.lambda2, 2) +
                     std::pow(a.lambda3 - b.lambda3, 2));
}

// Solutions whose smallest parameter gap collapses are limits of the family, not embedded
// trinoids.
inline bool degenerate_solution(const TrinoidParams& p, double minGap = 1e-3)
{
    return std::min({-p.lambda1, p.lambda1 - p.lambda2, p.lambda2 - p.lambda3}) < minGap;
}

struct BasinSearch {
    std::vector<SolveReport> runs;
    std::vector<TrinoidParams> basins; // distinct non-degenerate converged solutions
};

// Symmetric-c solves from random feasible starts (gaps log-uniform in [gapLo, gapHi]).
inline BasinSearch search_basins(int starts, unsigned seed, const SimplexConfig& cfg = {}, const PeriodConfig& pcfg = {},
                                 double gapLo = 0.1, double gapHi = 2.0, double distinct = 1e-3)
{
    BasinSearch out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(std::log(gapLo), std::log(gapHi));
    for (int k = 0; k < starts; ++k) {
        double l1 = -std::exp(u(rng));
        double l2 = l1 - std::exp(u(rng));
        double l3 = l2 - std::exp(u(rng));
        SolveReport rep;
        try {
            rep = solve_trinoid_periods(symmetric_params(l1, l2, l3), false, cfg, pcfg);
        } catch (const Error&) {
            continue;
        }
        out.runs.push_back(rep);
        if (!rep.converged || degenerate_solution(rep.solution)) continue;
        bool seen = false;
        for (auto& b : out.basins)
            if (lambda_distance(b, rep.solution) <= distinct) seen = true;
        if (!seen) out.basins.push_back(rep.solution);
    }
    return out;
}

} // namespace msurf
