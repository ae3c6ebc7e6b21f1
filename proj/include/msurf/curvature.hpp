#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "mesh.hpp"

namespace msurf {

inline std::vector<Vec3> area_weighted_normals(const Mesh& m)
{
    std::vector<Vec3> n(m.vertices.size(), Vec3::Zero());
    for (auto& f : m.faces) {
        Vec3 fn = (m.vertices[f[1]] - m.vertices[f[0]]).cross(m.vertices[f[2]] - m.vertices[f[0]]);
        for (int i : f) n[i] += fn;
    }
    for (auto& v : n)
        if (v.norm() > 0) v.normalize();
    return n;
}

// Cotangent-Laplacian mean curvature with mixed Voronoi areas.  Sign: positive when the mean
// curvature vector points against the vertex normal (unit sphere with outward normals -> +1).
// Boundary vertices are absent.
inline std::vector<std::optional<double>> discrete_mean_curvature(const Mesh& m)
{
    check_manifold(m);
    const std::size_t nv = m.vertices.size();
    std::vector<Vec3> lap(nv, Vec3::Zero());
    std::vector<double> area(nv, 0.0);
    for (auto& f : m.faces) {
        const Vec3* p[3] = {&m.vertices[f[0]], &m.vertices[f[1]], &m.vertices[f[2]]};
        double cot[3];
        bool obtuse = false;
        int obtuseAt = -1;
        for (int k = 0; k < 3; ++k) {
            Vec3 u = *p[(k + 1) % 3] - *p[k], v = *p[(k + 2) % 3] - *p[k];
            double c = u.dot(v), s = u.cross(v).norm();
            cot[k] = c / s;
            if (c < 0) {
                obtuse = true;
                obtuseAt = k;
            }
        }
        double A = face_area(m, f);
        for (int k = 0; k < 3; ++k) {
            int i = (k + 1) % 3, j = (k + 2) % 3; // edge opposite vertex k
            Vec3 e = *p[j] - *p[i];
            lap[f[i]] += 0.5 * cot[k] * e;
            lap[f[j]] -= 0.5 * cot[k] * e;
        }
        for (int k = 0; k < 3; ++k) {
            if (!obtuse) {
                int i = (k + 1) % 3, j = (k + 2) % 3;
                area[f[k]] += 0.125 * ((*p[i] - *p[k]).squaredNorm() * cot[j] + (*p[j] - *p[k]).squaredNorm() * cot[i]);
            } else {
                area[f[k]] += k == obtuseAt ? A / 2 : A / 4;
            }
        }
    }
    auto normals = m.normals.size() == nv ? m.normals : area_weighted_normals(m);
    auto bnd = boundary_vertices(m);
    std::vector<bool> used(nv, false);
    for (auto& f : m.faces)
        for (int i : f) used[i] = true;
    std::vector<std::optional<double>> out(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (bnd[i] || !used[i] || area[i] <= 0) continue;
        Vec3 hv = lap[i] / area[i]; // = 2 H n (pointing towards the concave side)
        double h = 0.5 * hv.norm();
        out[i] = hv.dot(normals[i]) > 0 ? -h : h;
    }
    return out;
}

inline std::vector<double> mean_edge_lengths(const Mesh& m)
{
    std::vector<double> sum(m.vertices.size(), 0.0);
    std::vector<int> cnt(m.vertices.size(), 0);
    for (auto& [e, n] : edge_counts(m)) {
        double l = (m.vertices[e.first] - m.vertices[e.second]).norm();
        sum[e.first] += l;
        sum[e.second] += l;
        ++cnt[e.first];
        ++cnt[e.second];
    }
    for (std::size_t i = 0; i < sum.size(); ++i)
        if (cnt[i]) sum[i] /= cnt[i];
    return sum;
}

// max |H| * (mean incident edge length) over interior vertices accepted by the filter.
inline double scaled_mean_curvature(const Mesh& m, const std::function<bool(int)>& keep = {})
{
    auto H = discrete_mean_curvature(m);
    auto l = mean_edge_lengths(m);
    double out = 0;
    for (std::size_t i = 0; i < H.size(); ++i)
        if (H[i] && (!keep || keep(int(i)))) out = std::max(out, std::abs(*H[i]) * l[i]);
    return out;
}

// Signed number of faces whose spherical normal triangle contains dir.
inline int gauss_preimage_count(const Mesh& m, const Vec3& dir)
{
    auto normals = m.normals.size() == m.vertices.size() ? m.normals : area_weighted_normals(m);
    Vec3 v = dir.normalized();
    int count = 0;
    for (auto& f : m.faces) {
        const Vec3 &a = normals[f[0]], &b = normals[f[1]], &c = normals[f[2]];
        double o = a.dot(b.cross(c));
        if (o == 0 || v.dot(a + b + c) <= 0) continue;
        double s1 = a.dot(b.cross(v)), s2 = b.dot(c.cross(v)), s3 = c.dot(a.cross(v));
        if (o > 0 && s1 > 0 && s2 > 0 && s3 > 0) ++count;
        if (o < 0 && s1 < 0 && s2 < 0 && s3 < 0) --count;
    }
    return count;
}

} // namespace msurf
