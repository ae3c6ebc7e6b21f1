#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "weierstrass.hpp"

namespace msurf {

inline SurfaceData make_catenoid()
{
    SurfaceData d;
    d.name = "catenoid";
    d.gSquared = RationalFn::from_factors(1, {{0, 2}}, {});
    d.gEta = RationalFn::from_factors(1, {}, {{0, 1}});
    d.branchSeed = {1, 1};
    d.basePoint = 1;
    d.markedPoints = {{Complex(0), PointKind::End}, {std::nullopt, PointKind::End}};
    return d;
}

inline SurfaceData make_enneper()
{
    SurfaceData d;
    d.name = "enneper";
    d.gSquared = RationalFn::from_factors(1, {{0, 2}}, {});
    d.gEta = RationalFn::from_factors(1, {{0, 1}}, {});
    d.branchSeed = {1, 1};
    d.basePoint = 1;
    d.markedPoints = {{std::nullopt, PointKind::End}};
    return d;
}

// Jorge-Meeks n-oid: g = z^(n-1), eta = dz/(z^n - 1)^2.
inline SurfaceData make_noid(int n)
{
    if (n < 2) throw Error(ErrorKind::InvalidOrder, "n-oid needs n >= 2");
    SurfaceData d;
    d.name = "noid" + std::to_string(n);
    d.noidOrder = n;
    d.gSquared = RationalFn::from_factors(1, {{0, 2 * (n - 1)}}, {});
    std::vector<Root> poles;
    for (int k = 0; k < n; ++k) {
        Complex w = std::polar(1.0, 2 * M_PI * k / n);
        if (std::abs(w.imag()) < 1e-15) w.imag(0);
        if (std::abs(w.real()) < 1e-15) w.real(0);
        poles.push_back({w, 2});
        d.markedPoints.push_back({w, PointKind::End});
    }
    d.gEta = RationalFn::from_factors(1, {{0, n - 1}}, poles);
    d.basePoint = 0.5;
    d.branchSeed = {0.5, std::pow(0.5, n - 1)};
    return d;
}

inline double trinoid_c(double l1, double l2, double l3)
{
    if (!(0 > l1 && l1 > l2 && l2 >= l3))
        throw Error(ErrorKind::OrderingViolation, "trinoid parameters need 0 > lambda1 > lambda2 > lambda3");
    return -3 * l2 * (l2 - l3) * (l2 - l3) / ((l2 - 1) * (l2 - l1));
}

inline TrinoidParams symmetric_params(double l1, double l2, double l3)
{
    TrinoidParams p{l1, l2, l3, trinoid_c(l1, l2, l3), true};
    return p;
}

inline void validate(const TrinoidParams& p)
{
    if (!(0 > p.lambda1 && p.lambda1 > p.lambda2 && p.lambda2 > p.lambda3) || !std::isfinite(p.lambda3))
        throw Error(ErrorKind::OrderingViolation, "trinoid parameters need 0 > lambda1 > lambda2 > lambda3");
    if (!(p.c > 0) || !std::isfinite(p.c)) throw Error(ErrorKind::InvariantViolation, "trinoid constant c must be positive");
    if (p.symmetricC) {
        double c = trinoid_c(p.lambda1, p.lambda2, p.lambda3);
        if (std::abs(c - p.c) > 1e-12 * std::abs(c))
            throw Error(ErrorKind::InvariantViolation, "c does not match the symmetric value");
    }
}

inline SurfaceData make_trinoid_genus1(const TrinoidParams& p)
{
    validate(p);
    SurfaceData d;
    d.name = "trinoid-genus1";
    d.trinoid = p;
    d.domain = Domain::UpperHalfPlane;
    const double l1 = p.lambda1, l2 = p.lambda2, l3 = p.lambda3;
    d.gSquared = RationalFn::from_factors(p.c, {{1, 1}, {l1, 1}}, {{0, 1}, {l3, 2}});
    d.gEta = RationalFn::from_factors(1, {{l3, 1}}, {{l2, 2}});
    d.markedPoints = {
        {Complex(l3), PointKind::BoundaryMarker}, {Complex(l2), PointKind::End},
        {Complex(l1), PointKind::BranchPoint},    {Complex(0), PointKind::BranchPoint},
        {Complex(1), PointKind::BranchPoint},     {std::nullopt, PointKind::End},
    };
    d.basePoint = Complex(0, 1);
    Complex g = std::sqrt(d.gSquared(d.basePoint));
    if (g.real() < 0 || (g.real() == 0 && g.imag() < 0)) g = -g;
    d.branchSeed = {d.basePoint, g};
    return d;
}

enum class Solid { Tetra, Cube, Octa, Dodeca, Icosa };

inline std::pair<double, double> platonic_angles(Solid s)
{
    switch (s) {
    case Solid::Tetra: return {M_PI / 3, M_PI / 3};
    case Solid::Cube: return {M_PI / 3, M_PI / 4};
    case Solid::Octa: return {M_PI / 4, M_PI / 3};
    case Solid::Dodeca: return {M_PI / 3, M_PI / 5};
    case Solid::Icosa: return {M_PI / 5, M_PI / 3};
    }
    return {0, 0};
}

// Catalog dispatch by name: catenoid, enneper, noidN, trinoid-genus1.  Without parameters the
// trinoid is the solved symmetric one with the smaller c.
inline SurfaceData make_named(const std::string& name, const std::optional<TrinoidParams>& tp = std::nullopt)
{
    if (name == "catenoid") return make_catenoid();
    if (name == "enneper") return make_enneper();
    if (name.rfind("noid", 0) == 0 && name.size() > 4) {
        int n = 0;
        try {
            n = std::stoi(name.substr(4));
        } catch (...) {
            throw Error(ErrorKind::SchemaError, "bad n-oid name: " + name);
        }
        return make_noid(n);
    }
    if (name == "trinoid-genus1" || name == "trinoid") {
        TrinoidParams p = tp ? *tp : symmetric_params(-0.4391249397, -0.6983918913, -1.3619707401);
        return make_trinoid_genus1(p);
    }
    throw Error(ErrorKind::SchemaError, "unknown catalog name: " + name);
}

} // namespace msurf
