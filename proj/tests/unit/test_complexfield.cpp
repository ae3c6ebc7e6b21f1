#include <gtest/gtest.h>

#include <msurf/complexfield.hpp>

#include <algorithm>
#include <cmath>

using namespace msurf;

namespace {

NumericConfig cfg;

std::vector<Complex> arc(Complex center, double r, double t0, double t1, int n)
{
    std::vector<Complex> out;
    for (int k = 0; k <= n; ++k) out.push_back(center + std::polar(r, t0 + (t1 - t0) * k / n));
    return out;
}

} // namespace

TEST(Polynomial, EvaluatesAscendingCoefficients)
{
    Polynomial p({1, -3, 2}); // 1 - 3z + 2z^2
    EXPECT_EQ(p.degree(), 2);
    EXPECT_NEAR(std::abs(p(Complex(2)) - Complex(3)), 0, 1e-14);
    EXPECT_NEAR(std::abs(p.derivative()(Complex(1)) - Complex(1)), 0, 1e-14);
}

TEST(Polynomial, TrimsTrailingZeros)
{
    Polynomial p({1, 2, 0, 0});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_TRUE(Polynomial({0, 0}).is_zero());
}

TEST(Polynomial, RootsWithMultiplicity)
{
    auto p = Polynomial::from_roots(2, {{Complex(1, 1), 1}, {Complex(-2), 3}});
    auto r = p.roots();
    ASSERT_EQ(r.size(), 2u);
    std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.second < b.second; });
    EXPECT_NEAR(std::abs(r[0].first - Complex(1, 1)), 0, 1e-10);
    EXPECT_EQ(r[1].second, 3);
    EXPECT_NEAR(std::abs(r[1].first - Complex(-2)), 0, 1e-5);
}

TEST(RationalFn, CancelsCommonFactors)
{
    // (z - 1)(z + 2) / ((z - 1) z^2)
    RationalFn f(Polynomial::from_roots(1, {{1, 1}, {-2, 1}}), Polynomial::from_roots(1, {{1, 1}, {0, 2}}));
    EXPECT_EQ(f.zeros().size(), 1u);
    ASSERT_EQ(f.poles().size(), 1u);
    EXPECT_EQ(f.poles()[0].multiplicity, 2);
    EXPECT_EQ(f.degree_at_infinity(), -1);
    Complex z(0.3, 0.7);
    EXPECT_NEAR(std::abs(f(z) - (z + 2.0) / (z * z)), 0, 1e-13);
}

TEST(RationalFn, ZeroDenominatorRejected)
{
    EXPECT_THROW(RationalFn(Polynomial({1}), Polynomial({0})), Error);
}

TEST(RationalFn, EvaluationAtPoleThrows)
{
    auto f = RationalFn::from_factors(1, {}, {{Complex(0.5), 1}});
    try {
        f(Complex(0.5));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PoleProximity);
    }
}

TEST(RationalFn, DerivativeMatchesDifferenceQuotient)
{
    auto f = RationalFn::from_factors(3, {{Complex(1), 1}, {Complex(-0.4), 1}}, {{Complex(0), 1}, {Complex(-2), 2}});
    Complex z(0.7, 0.2), h(1e-6, 0);
    Complex fd = (f(z + h) - f(z - h)) / (2.0 * h);
    EXPECT_NEAR(std::abs(f.derivative(z) - fd), 0, 1e-7);
}

TEST(Path, RejectsSegmentThroughExclusion)
{
    EXPECT_THROW(make_path({Complex(-1), Complex(1)}, {Complex(0)}, cfg), Error);
    EXPECT_NO_THROW(make_path({Complex(-1), Complex(0, 1), Complex(1)}, {Complex(0)}, cfg));
}

TEST(Path, SingularEndpointFlagged)
{
    auto p = make_path({Complex(1), Complex(0)}, {Complex(0)}, cfg, true);
    EXPECT_TRUE(p.singularEnd);
    EXPECT_FALSE(p.singularStart);
}

TEST(Quadrature, ReciprocalOverUpperSemicircle)
{
    auto p = make_path(arc(0, 1, 0, M_PI, 32), {Complex(0)}, cfg);
    auto r = integrate_plain([](Complex z) { return 1.0 / z; }, p, cfg);
    EXPECT_NEAR(r.value.real(), 0, 1e-12);
    EXPECT_NEAR(r.value.imag(), M_PI, 1e-12);
}

TEST(Quadrature, PolynomialExact)
{
    auto p = make_path({Complex(0), Complex(2, 1)}, {}, cfg);
    auto r = integrate_plain([](Complex z) { return 3.0 * z * z; }, p, cfg);
    Complex e = std::pow(Complex(2, 1), 3);
    EXPECT_NEAR(std::abs(r.value - e), 0, 1e-12);
}

TEST(Quadrature, InverseSquareRootEndpoint)
{
    // integral of z^(-1/2) from 1 to 0 along the real axis is -2
    auto f = RationalFn::from_factors(1, {{Complex(0), 1}}, {});
    auto p = make_path({Complex(1), Complex(0)}, {Complex(0)}, cfg, true);
    auto r = integrate_form([](Complex, Complex g) { return 1.0 / g; }, f, p, {Complex(1), Complex(1)}, cfg);
    EXPECT_TRUE(r.endSingular);
    EXPECT_NEAR(std::abs(r.value - Complex(-2)), 0, 1e-8);
}

TEST(Branch, SquareRootChangesSignAroundBranchPoint)
{
    auto f = RationalFn::from_factors(1, {{Complex(0), 1}}, {});
    auto p = make_path(arc(0, 1, 0, 2 * M_PI, 64), {Complex(0)}, cfg);
    auto states = continue_sqrt(f, p, {Complex(1), Complex(1)}, cfg);
    EXPECT_NEAR(std::abs(states.back().g - Complex(-1)), 0, 1e-12);
}

TEST(Branch, SquareRootReturnsAroundDoubleZero)
{
    auto f = RationalFn::from_factors(1, {{Complex(0), 2}}, {});
    auto p = make_path(arc(0, 1, 0, 2 * M_PI, 64), {Complex(0)}, cfg);
    auto states = continue_sqrt(f, p, {Complex(1), Complex(1)}, cfg);
    EXPECT_NEAR(std::abs(states.back().g - Complex(1)), 0, 1e-12);
}

TEST(Branch, ContinuationCommutesWithPathSubdivision)
{
    auto f = RationalFn::from_factors(1, {{Complex(1), 1}, {Complex(-1), 1}}, {});
    auto coarse = make_path({Complex(0, 1), Complex(2, 1), Complex(2, -1)}, {Complex(1), Complex(-1)}, cfg);
    std::vector<Complex> w;
    for (int k = 0; k <= 10; ++k) w.push_back(Complex(0, 1) + Complex(0.2 * k, 0));
    for (int k = 1; k <= 10; ++k) w.push_back(Complex(2, 1 - 0.2 * k));
    auto fine = make_path(w, {Complex(1), Complex(-1)}, cfg);
    Complex g0 = std::sqrt(f(Complex(0, 1)));
    auto a = continue_sqrt(f, coarse, {Complex(0, 1), g0}, cfg);
    auto b = continue_sqrt(f, fine, {Complex(0, 1), g0}, cfg);
    EXPECT_NEAR(std::abs(a.back().g - b.back().g), 0, 1e-12);
}
