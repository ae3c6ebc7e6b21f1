#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "complexfield.hpp"

namespace msurf {

using Vec3 = Eigen::Vector3d;
using SpacePoint = Vec3;

enum class PointKind { End, BranchPoint, BoundaryMarker };
enum class Domain { Plane, UpperHalfPlane };

struct MarkedPoint {
    std::optional<Complex> at; // nullopt is the point at infinity
    PointKind kind;

    bool is_infinity() const { return !at.has_value(); }
};

struct TrinoidParams {
    double lambda1 = -0.5, lambda2 = -1.5, lambda3 = -3.0;
    double c = 1;
    bool symmetricC = true;
};

struct SurfaceData {
    std::string name = "raw";
    RationalFn gSquared;
    RationalFn gEta;
    BranchState branchSeed{1, 1};
    std::vector<MarkedPoint> markedPoints;
    double associatePhase = 0;
    Complex basePoint = 1;
    Domain domain = Domain::Plane;
    std::optional<TrinoidParams> trinoid;
    int noidOrder = 0;

    std::vector<MarkedPoint> ends() const
    {
        std::vector<MarkedPoint> out;
        for (auto& m : markedPoints)
            if (m.kind == PointKind::End) out.push_back(m);
        return out;
    }
};

inline double wrap_phase(double t)
{
    double r = std::fmod(t, 2 * M_PI);
    if (r < 0) r += 2 * M_PI;
    if (r >= 2 * M_PI) r = 0;
    return r;
}

inline SurfaceData associate(SurfaceData d, double theta)
{
    d.associatePhase = wrap_phase(d.associatePhase + theta);
    return d;
}

inline SurfaceData conjugate(SurfaceData d) { return associate(std::move(d), M_PI / 2); }

// Points a path must keep away from: finite marked points, branch points of g, poles of gEta,
// zeros of g.
inline std::vector<Complex> singular_points(const SurfaceData& d)
{
    std::vector<Complex> out;
    auto add = [&](Complex z) {
        for (auto& w : out)
            if (std::abs(w - z) < 1e-14 * std::max(1.0, std::abs(z))) return;
        out.push_back(z);
    };
    for (auto& m : d.markedPoints)
        if (m.at && m.kind != PointKind::BoundaryMarker) add(*m.at);
    for (auto z : d.gSquared.odd_points()) add(z);
    for (auto& r : d.gSquared.zeros()) add(r.at);
    for (auto& p : d.gEta.poles()) add(p.at);
    return out;
}

inline CVec3 phi_forms(const SurfaceData& d, Complex z, Complex g, const NumericConfig& cfg = {})
{
    if (std::abs(g) < cfg.zeroGaussTol) throw Error(ErrorKind::ZeroGauss, "g vanishes; eta = gEta/g undefined");
    Complex ge = d.gEta(z, cfg.poleRelTol);
    Complex eta = ge / g, gge = g * ge;
    Complex rot = d.associatePhase == 0 ? Complex(1) : std::polar(1.0, d.associatePhase);
    CVec3 out;
    out << rot * (eta - gge), rot * (Complex(0, 1) * (eta + gge)), rot * (2.0 * ge);
    return out;
}

struct PhiResult {
    SpacePoint x = SpacePoint::Zero();
    BranchState end;
    bool endSingular = false;
};

inline PhiResult integrate_phi(const SurfaceData& d, const PathPolyline& path, const BranchState& start,
                               const NumericConfig& cfg)
{
    auto form = [&](Complex z, Complex g) { return phi_forms(d, z, g, cfg); };
    auto r = integrate_form(form, d.gSquared, path, start, cfg);
    PhiResult out;
    out.x = SpacePoint(r.value[0].real(), r.value[1].real(), r.value[2].real());
    out.end = r.end;
    out.endSingular = r.endSingular;
    return out;
}

// Path must start at the branch seed.
inline SpacePoint integrate_phi(const SurfaceData& d, const PathPolyline& path, const NumericConfig& cfg = {})
{
    if (path.waypoints.empty()) throw Error(ErrorKind::InvalidPath, "empty path");
    if (std::abs(path.waypoints.front() - d.branchSeed.at) > 1e-12 * std::max(1.0, std::abs(d.branchSeed.at)))
        throw Error(ErrorKind::InvalidPath, "path does not start at the branch seed; supply a start state");
    return integrate_phi(d, path, d.branchSeed, cfg).x;
}

// Straight route from the base point, or an axis-aligned dogleg through the domain when the
// straight segment runs too close to a singular point.
inline PathPolyline path_from_base(const SurfaceData& d, Complex target, const NumericConfig& cfg,
                                   bool allowSingularEnd = false, double keepAway = -1)
{
    auto excl = singular_points(d);
    Complex b = d.basePoint;
    std::vector<std::vector<Complex>> candidates;
    if (target != b) candidates.push_back({b, target});
    else candidates.push_back({b});
    double h = std::max({1.0, std::abs(b.imag()), std::abs(target.imag())});
    candidates.push_back({b, Complex(b.real(), h), Complex(target.real(), h), target});
    candidates.push_back({b, Complex(target.real(), b.imag()), target});
    candidates.push_back({b, Complex(b.real(), 2 * h), Complex(target.real(), 2 * h), target});
    for (auto& c : candidates) {
        std::vector<Complex> w;
        for (auto z : c)
            if (w.empty() || w.back() != z) w.push_back(z);
        try {
            return make_path(w, excl, cfg, allowSingularEnd, keepAway);
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::InvalidPath, "no admissible path from the base point");
}

// Phi(z) relative to the base point, with the branch state at z.
inline PhiResult value_at(const SurfaceData& d, Complex z, const NumericConfig& cfg, bool allowSingular = false)
{
    auto path = path_from_base(d, z, cfg, allowSingular);
    return integrate_phi(d, path, d.branchSeed, cfg);
}

inline Vec3 gauss_map(Complex g)
{
    double m = std::norm(g);
    return Vec3(2 * g.real(), 2 * g.imag(), m - 1) / (m + 1);
}

inline Vec3 gauss_map(const SurfaceData&, Complex, Complex g) { return gauss_map(g); }

inline Vec3 gauss_map_infinity() { return Vec3(0, 0, 1); }

inline double metric_factor(const SurfaceData& d, Complex z, Complex g, const NumericConfig& cfg = {})
{
    if (std::abs(g) < cfg.zeroGaussTol) throw Error(ErrorKind::ZeroGauss, "g vanishes");
    double s = std::abs(d.gEta(z, cfg.poleRelTol)) / std::abs(g) * (1 + std::norm(g)) / 2;
    return s * s;
}

// |dPhi| per |dz| for Phi = Re int phi: twice the square root of metric_factor.
inline double speed(const SurfaceData& d, Complex z, Complex g, const NumericConfig& cfg = {})
{
    return 2 * std::sqrt(metric_factor(d, z, g, cfg));
}

} // namespace msurf
