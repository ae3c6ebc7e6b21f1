#pragma once

#include <cmath>
#include <vector>

#include "weierstrass.hpp"

namespace msurf {

inline double angle_between(const Vec3& a, const Vec3& b)
{
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// g at each waypoint of a polyline, continued from the branch seed.
inline std::vector<Complex> branch_along(const SurfaceData& d, const std::vector<Complex>& waypoints,
                                         const NumericConfig& cfg)
{
    auto excl = singular_points(d);
    std::vector<Complex> out;
    BranchState st = d.branchSeed;
    Complex prev = d.branchSeed.at;
    for (auto z : waypoints) {
        if (z != prev) {
            double near = std::abs(z - prev);
            for (auto& e : excl) near = std::min({near, std::abs(e - z), std::abs(e - prev)});
            // straight if possible, else bent around the obstruction (upper side first)
            std::optional<PathPolyline> path;
            Complex mid = 0.5 * (prev + z), perp = Complex(0, 0.5) * (z - prev);
            if (perp.imag() < 0) perp = -perp;
            for (auto w : {std::vector<Complex>{prev, z}, std::vector<Complex>{prev, mid + perp, z},
                           std::vector<Complex>{prev, mid - perp, z}}) {
                try {
                    path = make_path(w, excl, cfg, false, 0.1 * near);
                    break;
                } catch (const Error&) {
                }
            }
            if (!path) throw Error(ErrorKind::InvalidPath, "no admissible path for branch continuation");
            st = continue_sqrt(d.gSquared, *path, st, cfg).back();
        }
        out.push_back(st.g);
        prev = z;
    }
    return out;
}

// Limiting unit normal at an end: Gauss map at three points approaching the end, extrapolated
// assuming a power-law approach.  Throws ExtrapolationUnstable when the samples disagree.
inline Vec3 end_normal(const SurfaceData& d, const MarkedPoint& end, const NumericConfig& cfg)
{
    auto excl = singular_points(d);
    double scale = 1;
    for (auto& e : excl) scale = std::max(scale, std::abs(e));
    std::vector<Complex> approach;
    Complex b = d.basePoint;
    if (end.is_infinity()) {
        Complex dir = d.domain == Domain::UpperHalfPlane ? Complex(0, 1) : (b != Complex(0) ? b / std::abs(b) : Complex(1));
        double R = 1e6 * scale;
        approach = {dir * R, dir * (10 * R), dir * (100 * R)};
        if (d.domain == Domain::UpperHalfPlane) approach.insert(approach.begin(), Complex(b.real(), std::max(b.imag(), 1.0)) * 1.0);
    } else {
        Complex e = *end.at;
        double dmin = 1;
        for (auto& x : excl)
            if (std::abs(x - e) > 0) dmin = std::min(dmin, std::abs(x - e));
        Complex dir = d.domain == Domain::UpperHalfPlane ? Complex(0, 1) : (b - e) / std::abs(b - e);
        double r = 1e-3 * dmin;
        if (d.domain == Domain::UpperHalfPlane) approach.push_back(e + dir * (0.5 * dmin));
        approach.insert(approach.end(), {e + dir * r, e + dir * (r / 10), e + dir * (r / 100)});
    }
    auto gs = branch_along(d, approach, cfg);
    std::vector<Vec3> n;
    for (std::size_t k = gs.size() - 3; k < gs.size(); ++k) n.push_back(gauss_map(gs[k]));
    double spread = std::max({angle_between(n[0], n[1]), angle_between(n[1], n[2]), angle_between(n[0], n[2])});
    if (spread > 1e-2) throw Error(ErrorKind::ExtrapolationUnstable, "end normal samples disagree");
    double d1 = (n[0] - n[1]).norm(), d2 = (n[1] - n[2]).norm();
    Vec3 out = n[2];
    if (d2 > 0 && d1 > 0) {
        double p = std::log10(d1 / d2);
        if (std::isfinite(p) && p > 0.1) out = n[2] + (n[2] - n[1]) / (std::pow(10.0, p) - 1);
    }
    return out.normalized();
}

// End normals of the complete surface.  For the genus-1 trinoid the quarter piece carries the
// ends at lambda2 and infinity; the third end is the mirror image of the lambda2 end in the
// plane of the real-g boundary arcs (normal e2).
inline std::vector<Vec3> end_normals(const SurfaceData& d, const NumericConfig& cfg = {})
{
    std::vector<Vec3> out;
    if (d.trinoid) {
        Vec3 ninf = end_normal(d, {std::nullopt, PointKind::End}, cfg);
        Vec3 n2 = end_normal(d, {Complex(d.trinoid->lambda2), PointKind::End}, cfg);
        Vec3 n3(n2.x(), -n2.y(), n2.z());
        return {ninf, n2, n3};
    }
    for (auto& e : d.ends()) out.push_back(end_normal(d, e, cfg));
    return out;
}

// Angles between consecutive end normals (cyclic when there are three or more ends).
inline std::vector<double> end_normal_angles(const std::vector<Vec3>& normals)
{
    std::vector<double> out;
    const std::size_t n = normals.size();
    if (n == 2) return {angle_between(normals[0], normals[1])};
    for (std::size_t k = 0; k < n; ++k) out.push_back(angle_between(normals[k], normals[(k + 1) % n]));
    return out;
}

inline std::vector<double> end_normal_angles(const SurfaceData& d, const NumericConfig& cfg = {})
{
    return end_normal_angles(end_normals(d, cfg));
}

} // namespace msurf
