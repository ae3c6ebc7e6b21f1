#include <gtest/gtest.h>

#include <msurf/periods.hpp>
#include <msurf/total_curvature.hpp>

using namespace msurf;

namespace {

const TrinoidParams kSolvedA = symmetric_params(-0.3366960146, -0.8649606527, -2.4359624740);
const TrinoidParams kSolvedB = symmetric_params(-0.4391249397, -0.6983918913, -1.3619707401);

} // namespace

TEST(Boundary, FiveArcsInDecreasingOrder)
{
    auto d = make_trinoid_genus1(kSolvedB);
    auto s = boundary_segments(d);
    ASSERT_EQ(s.size(), 5u);
    EXPECT_EQ(s[0].label, BoundaryLabel::Alpha1);
    EXPECT_EQ(s[0].a, 1);
    EXPECT_TRUE(std::isinf(s[0].b));
    EXPECT_EQ(s[2].a, kSolvedB.lambda1);
    EXPECT_EQ(s[2].b, 0);
    EXPECT_TRUE(std::isinf(s[4].a));
    // g is real on alternate arcs: the arcs lie in planes of the two families in turn
    EXPECT_EQ(s[0].family, PlaneFamily::RealG);
    EXPECT_EQ(s[1].family, PlaneFamily::ImaginaryG);
    EXPECT_EQ(s[2].family, PlaneFamily::RealG);
    EXPECT_EQ(s[3].family, PlaneFamily::ImaginaryG);
}

TEST(Boundary, ArcsArePlanar)
{
    auto d = make_trinoid_genus1(kSolvedB);
    for (auto& s : boundary_segments(d)) {
        auto fit = fit_plane(segment_trace(d, s, 12, {}));
        EXPECT_LT(fit.maxDeviation, 1e-8 * std::max(1.0, fit.diameter)) << to_string(s.label);
    }
}

TEST(Periods, VanishAtSolutions)
{
    EXPECT_LT(period_residual(kSolvedA).norm, 1e-8);
    EXPECT_LT(period_residual(kSolvedB).norm, 1e-8);
}

TEST(Periods, NonzeroAwayFromSolutions)
{
    EXPECT_GT(period_residual(symmetric_params(-0.5, -1.5, -3.0)).norm, 1e-2);
}

TEST(Periods, RequiresTrinoid)
{
    try {
        period_residual(make_catenoid());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotTrinoid);
    }
}

TEST(Periods, InsensitiveToOffsetAndTruncation)
{
    PeriodConfig base, half, wide;
    double eps = 1e-4 * (1 + std::abs(kSolvedB.lambda3)), R = 50 * (1 + std::abs(kSolvedB.lambda3));
    half.offsetEpsilon = eps / 2;
    wide.truncationRadius = 2 * R;
    double r0 = period_residual(kSolvedB, base).norm;
    EXPECT_LT(std::abs(period_residual(kSolvedB, half).norm - r0), 1e-5);
    EXPECT_LT(std::abs(period_residual(kSolvedB, wide).norm - r0), 1e-5);
}

TEST(NormalReversal, OnlyOnOuterArc)
{
    auto d = make_trinoid_genus1(kSolvedB);
    PeriodConfig pc;
    auto segs = boundary_segments(d, pc);
    auto rev = normal_reversals(trace_segment(d, segs[0], 40, pc.numeric));
    ASSERT_EQ(rev.size(), 1u);
    EXPECT_GT(rev[0], 1);
    for (int k = 1; k < 5; ++k) EXPECT_TRUE(normal_reversals(trace_segment(d, segs[k], 40, pc.numeric)).empty()) << k;
}

TEST(NormalReversal, MonotoneCircle)
{
    SegmentTrace t;
    for (int k = 0; k < 20; ++k) {
        double a = 0.1 * k;
        t.xs.push_back(k);
        t.points.push_back(Vec3(std::cos(a), std::sin(a), 0));
        t.normals.push_back(Vec3(std::cos(a), std::sin(a), 0));
    }
    EXPECT_TRUE(normal_reversals(t).empty());
    for (int k = 10; k < 20; ++k) {
        double a = 0.1 * (18 - k);
        t.normals[k] = Vec3(std::cos(a), std::sin(a), 0);
    }
    auto r = normal_reversals(t);
    ASSERT_EQ(r.size(), 1u);
}

TEST(TotalCurvature, DiskUnderLinearGaussMapIsHemisphere)
{
    SurfaceData d = make_enneper();
    EXPECT_NEAR(total_curvature(d, DiskRegion{0, 1}, 1e-8), 2 * M_PI, 1e-6);
}

TEST(TotalCurvature, WholePlaneDegreeFormula)
{
    EXPECT_NEAR(total_curvature(make_catenoid()), 4 * M_PI, 1e-5);
    EXPECT_NEAR(total_curvature(make_enneper()), 4 * M_PI, 1e-5);
    EXPECT_NEAR(total_curvature(make_noid(3)), 8 * M_PI, 1e-5);
    EXPECT_DOUBLE_EQ(expected_total_curvature(make_noid(4)), 12 * M_PI);
}

TEST(TotalCurvature, RectanglesAdd)
{
    auto d = make_catenoid();
    double whole = total_curvature(d, RectRegion{-1, 1, 0.5, 1.5}, 1e-9);
    double left = total_curvature(d, RectRegion{-1, 0, 0.5, 1.5}, 1e-9);
    double right = total_curvature(d, RectRegion{0, 1, 0.5, 1.5}, 1e-9);
    EXPECT_NEAR(whole, left + right, 1e-7);
}
