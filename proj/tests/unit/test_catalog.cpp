#include <gtest/gtest.h>

#include <msurf/catalog.hpp>
#include <msurf/ends.hpp>

using namespace msurf;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvariantViolation;
}

} // namespace

TEST(Catalog, NamesDispatch)
{
    EXPECT_EQ(make_named("catenoid").name, "catenoid");
    EXPECT_EQ(make_named("enneper").name, "enneper");
    EXPECT_EQ(make_named("noid5").noidOrder, 5);
    EXPECT_TRUE(make_named("trinoid-genus1").trinoid.has_value());
    EXPECT_EQ(kind_of([] { make_named("torus"); }), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of([] { make_named("noidx"); }), ErrorKind::SchemaError);
}

TEST(Catalog, NoidOrder)
{
    EXPECT_EQ(kind_of([] { make_noid(1); }), ErrorKind::InvalidOrder);
    auto d = make_noid(4);
    EXPECT_EQ(d.ends().size(), 4u);
    EXPECT_EQ(d.gSquared.zeros()[0].multiplicity, 6);
}

TEST(Catalog, TrinoidConstant)
{
    // c = -3 l2 (l2 - l3)^2 / ((l2 - 1)(l2 - l1))
    double c = trinoid_c(-0.5, -1.5, -3.0);
    EXPECT_NEAR(c, -3 * -1.5 * 2.25 / (-2.5 * -1.0), 1e-14);
    EXPECT_GT(c, 0);
}

TEST(Catalog, TrinoidOrderingEnforced)
{
    EXPECT_EQ(kind_of([] { symmetric_params(0.5, -1.5, -3.0); }), ErrorKind::OrderingViolation);
    EXPECT_EQ(kind_of([] { make_trinoid_genus1({-0.5, -1.5, -1.5, 1, false}); }), ErrorKind::OrderingViolation);
    EXPECT_EQ(kind_of([] { make_trinoid_genus1({-1.5, -0.5, -3.0, 1, false}); }), ErrorKind::OrderingViolation);
}

TEST(Catalog, TrinoidConstantChecked)
{
    EXPECT_EQ(kind_of([] { make_trinoid_genus1({-0.5, -1.5, -3.0, -1, false}); }), ErrorKind::InvariantViolation);
    EXPECT_EQ(kind_of([] { make_trinoid_genus1({-0.5, -1.5, -3.0, 2.0, true}); }), ErrorKind::InvariantViolation);
    EXPECT_NO_THROW(make_trinoid_genus1({-0.5, -1.5, -3.0, 2.0, false}));
}

TEST(Catalog, TrinoidSeedIsPrincipalRoot)
{
    auto d = make_trinoid_genus1(symmetric_params(-0.5, -1.5, -3.0));
    EXPECT_EQ(d.domain, Domain::UpperHalfPlane);
    EXPECT_NEAR(std::abs(d.branchSeed.g * d.branchSeed.g - d.gSquared(d.basePoint)), 0, 1e-12);
    EXPECT_GE(d.branchSeed.g.real(), 0);
    EXPECT_EQ(d.ends().size(), 2u);
}

TEST(Ends, CatenoidEndsAreOpposite)
{
    auto n = end_normals(make_catenoid());
    ASSERT_EQ(n.size(), 2u);
    EXPECT_NEAR(angle_between(n[0], n[1]), M_PI, 1e-10);
}

TEST(Ends, NoidEndsAreEquiangular)
{
    for (int k : {3, 4, 5}) {
        auto a = end_normal_angles(make_noid(k));
        ASSERT_EQ(a.size(), std::size_t(k));
        for (double x : a) EXPECT_NEAR(x, 2 * M_PI / k, 1e-7);
    }
}

TEST(Ends, SymmetricTrinoidAnglesFromAnyParameters)
{
    for (auto p : {symmetric_params(-0.5, -1.5, -3.0), symmetric_params(-0.2, -0.9, -1.1)}) {
        auto a = end_normal_angles(make_trinoid_genus1(p));
        ASSERT_EQ(a.size(), 3u);
        for (double x : a) EXPECT_NEAR(x, 2 * M_PI / 3, 1e-7);
    }
}
