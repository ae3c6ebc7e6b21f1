#pragma once

#include <cmath>
#include <vector>

#include "ends.hpp"
#include "extend.hpp"
#include "isometry.hpp"

namespace msurf {

// D_n: rotations about the vertical axis and the n vertical mirrors.  The axis passes through the
// centroid of the images of the n rotated copies of the base point.
inline Vec3 dihedral_axis_point(const SurfaceData& d, int n, const NumericConfig& cfg = {})
{
    Vec3 c = Vec3::Zero();
    for (int k = 0; k < n; ++k) c += value_at(d, d.basePoint * std::polar(1.0, 2 * M_PI * k / n), cfg).x;
    return c / n;
}

inline std::vector<Isometry> dihedral_symmetry_group(const SurfaceData& d, int n, const NumericConfig& cfg = {})
{
    if (n < 2) throw Error(ErrorKind::InvalidOrder, "dihedral group needs n >= 2");
    Vec3 c = dihedral_axis_point(d, n, cfg);
    std::vector<Isometry> out;
    for (int k = 0; k < n; ++k) out.push_back(Isometry::rotation(c, Vec3::UnitZ(), 2 * M_PI * k / n));
    for (int k = 0; k < n; ++k) {
        double t = M_PI * k / n;
        out.push_back(Isometry::reflection(c, Vec3(-std::sin(t), std::cos(t), 0)));
    }
    return out;
}

inline std::vector<Isometry> noid_symmetry_group(const SurfaceData& d, const NumericConfig& cfg = {})
{
    if (d.noidOrder < 2) throw Error(ErrorKind::InvalidOrder, "not an n-oid");
    return dihedral_symmetry_group(d, d.noidOrder, cfg);
}

struct TrinoidFrame {
    Vec3 center;
    Vec3 axis;
    Isometry mirrorA, mirrorB; // mirrorB is perpendicular to the 3-fold axis
};

inline Vec3 mirror_normal(const Isometry& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (Eigen::Matrix3d::Identity() - m.linear));
    return es.eigenvectors().col(2);
}

inline Vec3 mirror_point(const Isometry& m) { return 0.5 * m.translation; }

// The 3-fold axis is normal to the mirror of the arcs over (0, 1) and lies in the other mirror.
// Its height is fixed by where the axis of the end at lambda2 crosses that mirror.
inline TrinoidFrame trinoid_frame(const SurfaceData& d, const std::vector<Generator>& gens, const NumericConfig& cfg = {})
{
    if (!d.trinoid || gens.size() != 2) throw Error(ErrorKind::NotTrinoid, "trinoid data and both mirrors required");
    const auto& p = *d.trinoid;
    TrinoidFrame f;
    f.mirrorA = gens[0].iso;
    f.mirrorB = gens[1].iso;
    Vec3 na = mirror_normal(f.mirrorA), nb = mirror_normal(f.mirrorB);
    Vec3 pa = mirror_point(f.mirrorA), pb = mirror_point(f.mirrorB);
    f.axis = nb;

    // centre of the end loop around lambda2, averaged with its mirror image
    const double l2 = p.lambda2;
    const double r0 = 1e-2 * std::min(p.lambda1 - l2, l2 - p.lambda3);
    auto loop_center = [&](double r) {
        const int m = 64;
        Vec3 s = Vec3::Zero();
        for (int k = 0; k < m; ++k) {
            Vec3 x = value_at(d, l2 + std::polar(r, M_PI * (k + 0.5) / m), cfg).x;
            s += 0.5 * (x + f.mirrorB(x));
        }
        return Vec3(s / m);
    };
    Vec3 q = 2 * loop_center(r0 / 2) - loop_center(r0);
    Vec3 n2 = end_normal(d, {Complex(l2), PointKind::End}, cfg);
    double denom = n2.dot(na);
    if (std::abs(denom) < 1e-8) throw Error(ErrorKind::DegenerateTrace, "end axis is parallel to the mirror");
    Vec3 hit = q + n2 * ((pa - q).dot(na) / denom);

    // project onto the line where the two mirrors meet
    Vec3 dir = na.cross(nb);
    if (dir.norm() < 1e-8) throw Error(ErrorKind::DegenerateTrace, "mirrors are parallel");
    dir.normalize();
    Eigen::Matrix3d A;
    A.row(0) = na.transpose();
    A.row(1) = nb.transpose();
    A.row(2) = dir.transpose();
    Vec3 base = A.colPivHouseholderQr().solve(Vec3(na.dot(pa), nb.dot(pb), 0));
    f.center = base + dir * dir.dot(hit - base);
    return f;
}

// The twelve elements R^k A^i B^j.
inline std::vector<Isometry> trinoid_symmetry_group(const TrinoidFrame& f)
{
    std::vector<Isometry> out;
    for (int k = 0; k < 3; ++k) {
        Isometry r = Isometry::rotation(f.center, f.axis, 2 * M_PI * k / 3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Isometry g = r;
                if (i) g = g * f.mirrorA;
                if (j) g = g * f.mirrorB;
                out.push_back(g);
            }
    }
    return out;
}

} // namespace msurf
