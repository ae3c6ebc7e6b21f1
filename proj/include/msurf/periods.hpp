#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "catalog.hpp"
#include "weierstrass.hpp"

namespace msurf {

enum class BoundaryLabel { Alpha1 = 1, Alpha2, Alpha3, Alpha4, Alpha5 };

// RealG: g real on the segment, normal has no e2 part, plane x2 = const.
// ImaginaryG: g imaginary, plane x1 = const.
enum class PlaneFamily { RealG, ImaginaryG };

inline std::string to_string(BoundaryLabel l) { return "alpha" + std::to_string(int(l)); }

struct BoundarySegment {
    BoundaryLabel label;
    double a, b;           // a < b, either may be infinite
    double offsetEpsilon;
    double truncationRadius;
    double endGap;         // distance kept from an end marker at a finite endpoint
    PlaneFamily family;
};

struct PeriodConfig {
    NumericConfig numeric;
    double offsetEpsilon = 0;    // 0 selects 1e-4 (1 + |lambda3|)
    double truncationRadius = 0; // 0 selects 50 (1 + |lambda3|)
    int samples = 8;
    double endGapFraction = 0.05;
};

namespace detail {

inline const TrinoidParams& trinoid_of(const SurfaceData& d)
{
    if (!d.trinoid || d.domain != Domain::UpperHalfPlane)
        throw Error(ErrorKind::NotTrinoid, "data is not a genus-1 trinoid");
    return *d.trinoid;
}

inline PlaneFamily family_at(const SurfaceData& d, double x)
{
    Complex f = d.gSquared(Complex(x));
    return f.real() > 0 ? PlaneFamily::RealG : PlaneFamily::ImaginaryG;
}

} // namespace detail

// Labels by decreasing x: alpha1 = (1, inf), alpha2 = (0, 1), alpha3 = (lambda1, 0),
// alpha4 = (lambda2, lambda1), alpha5 = (-inf, lambda2).  lambda3 is interior to alpha5, where
// g has a simple pole but the immersion is regular.
inline std::vector<BoundarySegment> boundary_segments(const SurfaceData& d, const PeriodConfig& cfg = {})
{
    const auto& p = detail::trinoid_of(d);
    const double l1 = p.lambda1, l2 = p.lambda2, l3 = p.lambda3;
    const double inf = std::numeric_limits<double>::infinity();
    double scale = 1 + std::abs(l3);
    double gap = std::min({1.0, -l1, l1 - l2, l2 - l3});
    double eps = cfg.offsetEpsilon > 0 ? cfg.offsetEpsilon : 1e-4 * scale;
    eps = std::min(eps, 0.25 * gap);
    double R = cfg.truncationRadius > 0 ? cfg.truncationRadius : 50 * scale;
    double endGap = cfg.endGapFraction * std::min(l1 - l2, l2 - l3);
    std::vector<BoundarySegment> out = {
        {BoundaryLabel::Alpha1, 1, inf, eps, R, endGap, PlaneFamily::RealG},
        {BoundaryLabel::Alpha2, 0, 1, eps, R, endGap, PlaneFamily::ImaginaryG},
        {BoundaryLabel::Alpha3, l1, 0, eps, R, endGap, PlaneFamily::RealG},
        {BoundaryLabel::Alpha4, l2, l1, eps, R, endGap, PlaneFamily::ImaginaryG},
        {BoundaryLabel::Alpha5, -inf, l2, eps, R, endGap, PlaneFamily::ImaginaryG},
    };
    const double probe[5] = {2, 0.5, 0.5 * l1, 0.5 * (l1 + l2), 0.5 * (l2 + l3)};
    for (int k = 0; k < 5; ++k)
        if (detail::family_at(d, probe[k]) != out[k].family)
            throw Error(ErrorKind::NotTrinoid, "boundary pattern does not match the trinoid labelling");
    return out;
}

// Real-axis sample positions, from b down to a.
inline std::vector<double> segment_samples(const SurfaceData& d, const BoundarySegment& s, int samples)
{
    if (samples < 2) throw Error(ErrorKind::InvariantViolation, "segment_trace needs at least 2 samples");
    const auto& p = detail::trinoid_of(d);
    auto isEnd = [&](double x) { return x == p.lambda2; };
    double hi = std::isfinite(s.b) ? s.b : s.truncationRadius;
    double lo = std::isfinite(s.a) ? s.a : -s.truncationRadius;
    if (std::isfinite(s.b) && isEnd(s.b)) hi -= s.endGap;
    if (std::isfinite(s.a) && isEnd(s.a)) lo += s.endGap;
    if (!(lo < hi)) throw Error(ErrorKind::DegenerateTrace, "segment interval is empty after truncation");
    std::vector<double> xs(samples);
    const double L = hi - lo, kappa = std::log1p(L);
    auto geo = [&](double t) { return std::expm1(kappa * t) / std::expm1(kappa); };
    for (int k = 0; k < samples; ++k) {
        double t = double(k) / (samples - 1);
        if (!std::isfinite(s.b))
            xs[k] = lo + L * geo(1 - t); // from +R, clustered at the corner
        else if (!std::isfinite(s.a))
            xs[k] = hi - L * geo(t);
        else
            xs[k] = hi - L * 0.5 * (1 - std::cos(M_PI * t));
    }
    xs.front() = hi;
    xs.back() = lo;
    // keep samples off lambda3 (g has a pole there even though the surface is regular)
    double guard = 1e-3 * (1 + std::abs(p.lambda3));
    for (auto& x : xs)
        if (std::abs(x - p.lambda3) < guard) x = p.lambda3 + guard;
    return xs;
}

struct SegmentTrace {
    BoundaryLabel label;
    std::vector<double> xs;
    std::vector<SpacePoint> points;
    std::vector<Vec3> normals;
};

// Phi along the segment: reach the first sample from the base point, walk the line at height
// eps, and drop vertically onto the axis at each sample (with a singular drop at branch corners).
inline SegmentTrace trace_segment(const SurfaceData& d, const BoundarySegment& s, int samples,
                                  const NumericConfig& cfg = {})
{
    SegmentTrace out{s.label, segment_samples(d, s, samples), {}, {}};
    auto excl = singular_points(d);
    const double eps = s.offsetEpsilon, keep = 0.5 * eps;
    const Complex up(0, eps);
    auto firstPath = path_from_base(d, out.xs.front() + up, cfg, false, keep);
    auto cur = integrate_phi(d, firstPath, d.branchSeed, cfg);
    for (std::size_t k = 0; k < out.xs.size(); ++k) {
        Complex top = out.xs[k] + up;
        if (k > 0) {
            auto line = make_path({out.xs[k - 1] + up, top}, excl, cfg, false, keep);
            auto r = integrate_phi(d, line, cur.end, cfg);
            cur.x += r.x;
            cur.end = r.end;
        }
        auto drop = make_path({top, Complex(out.xs[k])}, excl, cfg, true, 1e-3 * eps);
        auto r = integrate_phi(d, drop, cur.end, cfg);
        out.points.push_back(cur.x + r.x);
        if (r.endSingular) {
            bool pole = false;
            for (auto& pl : d.gSquared.poles())
                if (std::abs(pl.at - Complex(out.xs[k])) < 1e-12) pole = true;
            out.normals.push_back(pole ? gauss_map_infinity() : gauss_map(Complex(0)));
        } else {
            out.normals.push_back(gauss_map(r.end.g));
        }
    }
    return out;
}

inline std::vector<SpacePoint> segment_trace(const SurfaceData& d, const BoundarySegment& s, int samples,
                                             const NumericConfig& cfg = {})
{
    return trace_segment(d, s, samples, cfg).points;
}

struct PlaneFit {
    SpacePoint centroid = SpacePoint::Zero();
    Vec3 normal = Vec3::UnitZ();
    double diameter = 0;
    double maxDeviation = 0; // largest point-to-plane distance
};

// Total-least-squares plane.  The normal is signed so its largest component is positive.
inline PlaneFit fit_plane(const std::vector<SpacePoint>& pts)
{
    PlaneFit f;
    if (pts.empty()) throw Error(ErrorKind::DegenerateTrace, "empty trace");
    for (auto& p : pts) f.centroid += p;
    f.centroid /= double(pts.size());
    for (auto& a : pts)
        for (auto& b : pts) f.diameter = std::max(f.diameter, (a - b).norm());
    if (f.diameter < 1e-9) throw Error(ErrorKind::DegenerateTrace, "trace diameter below 1e-9");
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    for (auto& p : pts) C += (p - f.centroid) * (p - f.centroid).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(C);
    f.normal = es.eigenvectors().col(0).normalized();
    Eigen::Index i;
    f.normal.cwiseAbs().maxCoeff(&i);
    if (f.normal[i] < 0) f.normal = -f.normal;
    for (auto& p : pts) f.maxDeviation = std::max(f.maxDeviation, std::abs(f.normal.dot(p - f.centroid)));
    return f;
}

struct PlaneOffset {
    double value;
    double angle;
};

// Signed offset of plane q from plane p along their mean normal, plus diameter * angle (with the
// offset's sign) once the normals disagree by more than 1e-2 rad.
inline PlaneOffset plane_offset(const PlaneFit& p, const PlaneFit& q)
{
    Vec3 nq = p.normal.dot(q.normal) < 0 ? Vec3(-q.normal) : q.normal;
    double angle = std::atan2(p.normal.cross(nq).norm(), p.normal.dot(nq));
    Vec3 n = (p.normal + nq).normalized();
    double off = n.dot(q.centroid - p.centroid);
    if (angle > 1e-2) off += std::copysign(std::max(p.diameter, q.diameter) * angle, off);
    return {off, angle};
}

struct PeriodResidual {
    double r13 = 0, r245a = 0, r245b = 0;
    double norm = 0;
    std::array<PlaneFit, 5> planes;
    std::array<double, 3> angles{}; // normal misalignment of the three compared pairs
};

inline PeriodResidual period_residual(const SurfaceData& d, const PeriodConfig& cfg = {})
{
    auto segs = boundary_segments(d, cfg);
    PeriodResidual r;
    for (int k = 0; k < 5; ++k) r.planes[k] = fit_plane(segment_trace(d, segs[k], cfg.samples, cfg.numeric));
    auto o13 = plane_offset(r.planes[0], r.planes[2]);
    auto o24 = plane_offset(r.planes[1], r.planes[3]);
    auto o25 = plane_offset(r.planes[1], r.planes[4]);
    r.r13 = o13.value;
    r.r245a = o24.value;
    r.r245b = o25.value;
    r.angles = {o13.angle, o24.angle, o25.angle};
    r.norm = std::sqrt(r.r13 * r.r13 + r.r245a * r.r245a + r.r245b * r.r245b);
    return r;
}

inline PeriodResidual period_residual(const TrinoidParams& p, const PeriodConfig& cfg = {})
{
    return period_residual(make_trinoid_genus1(p), cfg);
}

// Points along a planar trace where the surface normal's angle inside the trace plane turns back.
// A branch point of the Gauss map on the curve shows up as such a reversal.
inline std::vector<double> normal_reversals(const SegmentTrace& t, double minStep = 1e-9)
{
    auto plane = fit_plane(t.points);
    Vec3 u = plane.normal.unitOrthogonal(), v = plane.normal.cross(u);
    std::vector<double> ang;
    for (auto& n : t.normals) {
        double a = std::atan2(n.dot(v), n.dot(u));
        if (!ang.empty()) a = ang.back() + std::remainder(a - ang.back(), 2 * M_PI);
        ang.push_back(a);
    }
    std::vector<double> out;
    int last = 0;
    for (std::size_t i = 1; i < ang.size(); ++i) {
        double step = ang[i] - ang[i - 1];
        if (std::abs(step) <= minStep) continue;
        int s = step > 0 ? 1 : -1;
        if (last && s != last) out.push_back(t.xs[i - 1]);
        last = s;
    }
    return out;
}

} // namespace msurf
