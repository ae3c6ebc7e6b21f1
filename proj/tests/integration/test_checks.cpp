#include <gtest/gtest.h>

#include <msurf/checks.hpp>

using namespace msurf;

namespace {

const TrinoidParams kCompact = symmetric_params(-0.4391249397, -0.6983918913, -1.3619707401);

VerifyOptions quick(int resolution = 16)
{
    VerifyOptions o;
    o.run.meshResolution = resolution;
    o.isometrySamples = 50;
    return o;
}

} // namespace

TEST(Checks, CatenoidPassesEverything)
{
    auto d = make_catenoid();
    for (auto& name : known_checks()) {
        auto r = run_check(name, d, quick());
        EXPECT_TRUE(r.pass) << name << ": " << r.message << " " << to_json(r).dump();
        EXPECT_FALSE(r.skipped) << name;
    }
}

TEST(Checks, NoidPassesEverything)
{
    auto d = make_noid(3);
    for (auto& name : known_checks()) {
        auto r = run_check(name, d, quick());
        EXPECT_TRUE(r.pass) << name << ": " << r.message << " " << to_json(r).dump();
    }
}

TEST(Checks, EnneperSkipsWhatDoesNotApply)
{
    auto d = make_enneper();
    auto sym = run_check("symmetry", d, quick());
    EXPECT_TRUE(sym.skipped);
    auto ends = run_check("end-angles", d, quick());
    EXPECT_TRUE(ends.skipped);
    EXPECT_TRUE(run_check("total-curvature", d, quick()).pass);
}

TEST(Checks, UnknownNameRejected)
{
    try {
        run_check("flatness", make_catenoid(), quick());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownCheck);
    }
}

TEST(Checks, HelicoidKeepsHalfTurn)
{
    auto d = associate(make_catenoid(), M_PI / 2);
    MeshSampling s;
    s.resolution = 16;
    auto rep = symmetry_report(d, s);
    EXPECT_EQ(rep.deviations.size(), 2u);
    for (double x : rep.deviations) EXPECT_LT(x, 1e-9);
}

TEST(Checks, NoidNegativeControlMoves)
{
    MeshSampling s;
    s.resolution = 16;
    auto rep = symmetry_report(make_noid(5), s);
    ASSERT_EQ(rep.deviations.size(), 10u);
    for (double x : rep.deviations) EXPECT_LT(x, 1e-9);
    EXPECT_GT(rep.negativeControl, 0.1);
}

TEST(TrinoidChecks, MinimalAndIsometric)
{
    auto d = make_trinoid_genus1(kCompact);
    auto o = quick();
    auto h = run_check("mean-curvature", d, o);
    EXPECT_TRUE(h.pass) << to_json(h).dump();
    auto iso = run_check("conjugation-isometry", d, o);
    EXPECT_TRUE(iso.pass) << to_json(iso).dump();
}

TEST(TrinoidChecks, EndAnglesOnSolvedSurface)
{
    auto r = run_check("end-angles", make_trinoid_genus1(kCompact), quick(32));
    EXPECT_TRUE(r.pass) << to_json(r).dump();
    EXPECT_LT(r.values["meshDeviation"].get<double>(), 1e-3);
}

TEST(TrinoidChecks, EndAnglesRejectUnsolvedParameters)
{
    auto r = run_check("end-angles", make_trinoid_genus1(symmetric_params(-0.5, -1.5, -3.0)), quick());
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.values["periodResidual"].get<double>(), 1e-6);
}

TEST(TrinoidChecks, MirrorsAreExactSymmetries)
{
    auto d = make_trinoid_genus1(kCompact);
    MeshSampling s;
    s.resolution = 16;
    auto rep = symmetry_report(d, s);
    ASSERT_EQ(rep.deviations.size(), 12u);
    // the first four elements are generated by the two reflections used to build the surface
    for (int k = 0; k < 4; ++k) EXPECT_LT(rep.deviations[k], 1e-8) << k;
}

TEST(TrinoidChecks, TotalCurvatureOverHalfPlane)
{
    auto r = run_check("total-curvature", make_trinoid_genus1(kCompact), quick());
    EXPECT_TRUE(r.pass) << to_json(r).dump();
    EXPECT_NEAR(r.values["totalCurvature"].get<double>(), 3 * M_PI, 1e-4);
}

TEST(Studies, MinimalityRatiosOnCatenoid)
{
    auto st = minimality_study(make_catenoid(), {8, 16, 32});
    ASSERT_EQ(st.ratios.size(), 2u);
    for (double q : st.ratios) EXPECT_GT(q, 3);
    EXPECT_TRUE(st.pass);
}
