#include <gtest/gtest.h>

#include <msurf/catalog.hpp>
#include <msurf/weierstrass.hpp>

#include <random>

using namespace msurf;

namespace {

NumericConfig cfg;

// With g = z, eta = dz/z^2 and base point 1:
//   catenoid  X = (2 - (r + 1/r) cos t, -(r + 1/r) sin t, 2 log r)
//   helicoid  X = ((r - 1/r) sin t, -(r - 1/r) cos t, -2t)
Vec3 catenoid_at(Complex z)
{
    double r = std::abs(z), t = std::arg(z);
    return {2 - (r + 1 / r) * std::cos(t), -(r + 1 / r) * std::sin(t), 2 * std::log(r)};
}

Vec3 helicoid_at(Complex z)
{
    double r = std::abs(z), t = std::arg(z);
    return {(r - 1 / r) * std::sin(t), -(r - 1 / r) * std::cos(t), -2 * t};
}

std::vector<Complex> sample_points(int n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lr(std::log(0.3), std::log(3.0)), ang(-2.5, 2.5);
    std::vector<Complex> out;
    for (int k = 0; k < n; ++k) out.push_back(std::polar(std::exp(lr(rng)), ang(rng)));
    return out;
}

SpacePoint straight(const SurfaceData& d, Complex z)
{
    return integrate_phi(d, make_path({d.basePoint, z}, singular_points(d), cfg), cfg);
}

} // namespace

TEST(Immersion, CatenoidMatchesClosedForm)
{
    auto d = make_catenoid();
    for (auto z : sample_points(20, 1)) EXPECT_LT((straight(d, z) - catenoid_at(z)).norm(), 1e-8) << z;
}

TEST(Immersion, HelicoidMatchesClosedForm)
{
    auto d = associate(make_catenoid(), M_PI / 2);
    for (auto z : sample_points(20, 2)) EXPECT_LT((straight(d, z) - helicoid_at(z)).norm(), 1e-8) << z;
}

TEST(Immersion, HalfTurnNegates)
{
    auto d = make_noid(3), e = associate(d, M_PI);
    for (Complex z : {Complex(0.3, 0.2), Complex(-0.4, 0.1), Complex(0.1, -0.6)})
        EXPECT_LT((value_at(d, z, cfg).x + value_at(e, z, cfg).x).norm(), 1e-12);
}

TEST(Immersion, ClosedLoopAroundCatenoidNeckHasNoPeriod)
{
    auto d = make_catenoid();
    std::vector<Complex> w;
    for (int k = 0; k <= 32; ++k) w.push_back(std::polar(1.0, 2 * M_PI * k / 32));
    auto x = integrate_phi(d, make_path(w, singular_points(d), cfg), cfg);
    EXPECT_LT(x.norm(), 1e-10);
}

TEST(Immersion, HelicoidLoopHasVerticalPeriod)
{
    auto d = associate(make_catenoid(), M_PI / 2);
    std::vector<Complex> w;
    for (int k = 0; k <= 32; ++k) w.push_back(std::polar(1.0, 2 * M_PI * k / 32));
    auto x = integrate_phi(d, make_path(w, singular_points(d), cfg), cfg);
    EXPECT_LT((x - Vec3(0, 0, -4 * M_PI)).norm(), 1e-10);
}

TEST(Immersion, PathMustStartAtSeed)
{
    auto d = make_catenoid();
    try {
        integrate_phi(d, make_path({Complex(2), Complex(3)}, {}, cfg), cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPath);
    }
}

TEST(Immersion, ZeroOfGaussMapRejected)
{
    auto d = make_enneper();
    EXPECT_THROW(phi_forms(d, Complex(0), Complex(0), cfg), Error);
}

TEST(AssociateFamily, PhaseWraps)
{
    EXPECT_DOUBLE_EQ(associate(make_catenoid(), 2 * M_PI + 0.5).associatePhase, 0.5);
    EXPECT_DOUBLE_EQ(associate(make_catenoid(), -M_PI / 2).associatePhase, 1.5 * M_PI);
}

TEST(AssociateFamily, MetricIndependentOfPhase)
{
    auto d = make_noid(4);
    for (Complex z : {Complex(0.3, 0.2), Complex(-0.5, 0.4)}) {
        Complex g = value_at(d, z, cfg).end.g;
        double m0 = metric_factor(d, z, g, cfg);
        for (double t : {0.3, 1.0, M_PI / 2, 2.9}) EXPECT_EQ(metric_factor(associate(d, t), z, g, cfg), m0);
    }
}

TEST(GaussMap, StereographicProjection)
{
    EXPECT_LT((gauss_map(Complex(0)) - Vec3(0, 0, -1)).norm(), 1e-15);
    EXPECT_LT((gauss_map(Complex(1)) - Vec3(1, 0, 0)).norm(), 1e-15);
    EXPECT_NEAR(gauss_map(Complex(0.3, -2)).norm(), 1, 1e-15);
}

TEST(SingularPoints, TrinoidListsEndAndBranchPoints)
{
    auto d = make_trinoid_genus1(symmetric_params(-0.5, -1.5, -3.0));
    auto s = singular_points(d);
    auto has = [&](double x) { return std::any_of(s.begin(), s.end(), [&](Complex z) { return std::abs(z - x) < 1e-12; }); };
    for (double x : {-1.5, -0.5, 0.0, 1.0}) EXPECT_TRUE(has(x)) << x;
    // the pole of g at lambda3 is a regular point of the immersion
    EXPECT_FALSE(has(-3.0));
}
