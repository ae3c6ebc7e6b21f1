#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>
#include <vector>

#include "isometry.hpp"
#include "mesh.hpp"

namespace msurf {

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c)
{
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;
    Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
    Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    double denom = 1 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

// Uniform-grid index over triangles for nearest-surface queries.
class TriangleIndex {
public:
    explicit TriangleIndex(const Mesh& m) : m_(m)
    {
        double total = 0;
        std::size_t count = 0;
        for (auto& f : m.faces)
            for (int k = 0; k < 3; ++k) {
                total += (m.vertices[f[k]] - m.vertices[f[(k + 1) % 3]]).norm();
                ++count;
            }
        cell_ = count ? 2 * total / count : 1;
        if (!(cell_ > 0)) cell_ = 1;
        for (std::size_t t = 0; t < m.faces.size(); ++t) {
            BBox b;
            for (int i : m.faces[t]) b.add(m.vertices[i]);
            auto lo = key(b.lo), hi = key(b.hi);
            long span = (hi[0] - lo[0] + 1) * (hi[1] - lo[1] + 1) * (hi[2] - lo[2] + 1);
            if (span > 4096) {
                big_.push_back(int(t));
                continue;
            }
            for (long x = lo[0]; x <= hi[0]; ++x)
                for (long y = lo[1]; y <= hi[1]; ++y)
                    for (long z = lo[2]; z <= hi[2]; ++z) grid_[hash({x, y, z})].push_back(int(t));
        }
    }

    double distance(const Vec3& p) const
    {
        double best = std::numeric_limits<double>::infinity();
        auto test = [&](int t) {
            auto& f = m_.faces[t];
            best = std::min(best, (p - closest_point_on_triangle(p, m_.vertices[f[0]], m_.vertices[f[1]], m_.vertices[f[2]])).norm());
        };
        for (int t : big_) test(t);
        auto c = key(p);
        // stop ringing once a shell costs more than a linear scan
        for (long r = 0; (2 * r + 1) * (2 * r + 1) * 6 < long(m_.faces.size()) + 6; ++r) {
            for (long x = c[0] - r; x <= c[0] + r; ++x)
                for (long y = c[1] - r; y <= c[1] + r; ++y)
                    for (long z = c[2] - r; z <= c[2] + r; ++z) {
                        if (std::max({std::abs(x - c[0]), std::abs(y - c[1]), std::abs(z - c[2])}) != r) continue;
                        auto it = grid_.find(hash({x, y, z}));
                        if (it != grid_.end())
                            for (int t : it->second) test(t);
                    }
            if (best <= r * cell_) return best;
        }
        for (std::size_t t = 0; t < m_.faces.size(); ++t) test(int(t));
        return best;
    }

private:
    std::array<long, 3> key(const Vec3& p) const
    {
        return {long(std::floor(p.x() / cell_)), long(std::floor(p.y() / cell_)), long(std::floor(p.z() / cell_))};
    }
    static std::uint64_t hash(const std::array<long, 3>& k)
    {
        return (std::uint64_t(k[0]) * 73856093u) ^ (std::uint64_t(k[1]) * 19349663u) ^ (std::uint64_t(k[2]) * 83492791u);
    }

    const Mesh& m_;
    double cell_ = 1;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
    std::vector<int> big_;
};

// max over (selected) vertices of dist(iso(v), mesh), divided by the bounding-box diameter of the
// selected vertices.
inline double symmetry_deviation(const Mesh& m, const Isometry& iso, const std::function<bool(int)>& select = {})
{
    TriangleIndex index(m);
    BBox b;
    double worst = 0;
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        if (select && !select(int(i))) continue;
        b.add(m.vertices[i]);
        worst = std::max(worst, index.distance(iso(m.vertices[i])));
    }
    double d = b.diameter();
    return d > 0 ? worst / d : worst;
}

// Same measure restricted to vertices within radius of center (for truncated surfaces whose
// ends are not cut symmetrically).
inline double symmetry_deviation_in_ball(const Mesh& m, const Isometry& iso, const Vec3& center, double radius)
{
    return symmetry_deviation(m, iso, [&](int i) { return (m.vertices[i] - center).norm() <= radius; });
}

} // namespace msurf
