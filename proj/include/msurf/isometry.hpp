#pragma once

#include <cmath>

#include <Eigen/Geometry>

#include "weierstrass.hpp"

namespace msurf {

struct Isometry {
    enum class Kind { Identity, Reflection, Rotation, PointReflection, General };
    Kind kind = Kind::Identity;
    Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
    Vec3 translation = Vec3::Zero();

    static Isometry identity() { return {}; }

    static Isometry reflection(const Vec3& point, const Vec3& normal)
    {
        if (std::abs(normal.norm() - 1) > 1e-12) throw Error(ErrorKind::InvariantViolation, "reflection normal must be unit length");
        Isometry m;
        m.kind = Kind::Reflection;
        m.linear = Eigen::Matrix3d::Identity() - 2 * normal * normal.transpose();
        m.translation = point - m.linear * point;
        return m;
    }

    static Isometry rotation(const Vec3& point, const Vec3& axis, double angle)
    {
        Isometry m;
        m.kind = Kind::Rotation;
        m.linear = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
        m.translation = point - m.linear * point;
        return m;
    }

    static Isometry point_reflection(const Vec3& center)
    {
        Isometry m;
        m.kind = Kind::PointReflection;
        m.linear = -Eigen::Matrix3d::Identity();
        m.translation = 2 * center;
        return m;
    }

    Vec3 operator()(const Vec3& p) const { return linear * p + translation; }
    Vec3 apply_vector(const Vec3& v) const { return linear * v; }
    bool orientation_reversing() const { return linear.determinant() < 0; }

    // (this * o)(p) = this(o(p))
    Isometry operator*(const Isometry& o) const
    {
        Isometry m;
        m.kind = Kind::General;
        m.linear = linear * o.linear;
        m.translation = linear * o.translation + translation;
        return m;
    }

    bool approx_equal(const Isometry& o, double tol = 1e-9) const
    {
        return (linear - o.linear).norm() < tol && (translation - o.translation).norm() < tol * (1 + translation.norm());
    }

    double orthogonality_defect() const { return (linear.transpose() * linear - Eigen::Matrix3d::Identity()).norm(); }
};

} // namespace msurf
