#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "weierstrass.hpp"

namespace msurf {

using Face = std::array<int, 3>;

struct Mesh {
    std::vector<SpacePoint> vertices;
    std::vector<Face> faces;
    std::vector<Complex> uv;            // source parameter per vertex
    std::vector<Vec3> normals;          // analytic unit normals, empty if unknown
    std::vector<std::vector<int>> boundaryLoops;
};

struct BBox {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
    void add(const Vec3& p)
    {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    double diameter() const { return lo.x() <= hi.x() ? (hi - lo).norm() : 0.0; }
};

inline BBox bbox(const std::vector<SpacePoint>& pts)
{
    BBox b;
    for (auto& p : pts) b.add(p);
    return b;
}

inline double face_area(const Mesh& m, const Face& f)
{
    return 0.5 * (m.vertices[f[1]] - m.vertices[f[0]]).cross(m.vertices[f[2]] - m.vertices[f[0]]).norm();
}

inline std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Undirected edge -> number of incident faces.
inline std::map<std::pair<int, int>, int> edge_counts(const Mesh& m)
{
    std::map<std::pair<int, int>, int> out;
    for (auto& f : m.faces)
        for (int k = 0; k < 3; ++k) ++out[edge_key(f[k], f[(k + 1) % 3])];
    return out;
}

inline void check_manifold(const Mesh& m)
{
    for (auto& [e, n] : edge_counts(m))
        if (n > 2) throw Error(ErrorKind::NonManifold, "edge shared by more than two faces");
}

// Boundary loops from directed boundary edges.  Pinched vertices split into separate loops.
inline std::vector<std::vector<int>> compute_boundary_loops(const Mesh& m)
{
    auto counts = edge_counts(m);
    std::multimap<int, int> next;
    for (auto& f : m.faces)
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            if (counts[edge_key(a, b)] == 1) next.insert({a, b});
        }
    std::vector<std::vector<int>> loops;
    while (!next.empty()) {
        auto it = next.begin();
        int start = it->first;
        std::vector<int> loop{start};
        int cur = it->second;
        next.erase(it);
        while (cur != start) {
            loop.push_back(cur);
            auto jt = next.find(cur);
            if (jt == next.end()) break;
            cur = jt->second;
            next.erase(jt);
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

inline std::vector<bool> boundary_vertices(const Mesh& m)
{
    std::vector<bool> out(m.vertices.size(), false);
    for (auto& [e, n] : edge_counts(m))
        if (n == 1) out[e.first] = out[e.second] = true;
    return out;
}

inline long euler_characteristic(const Mesh& m)
{
    std::set<int> used;
    for (auto& f : m.faces) used.insert(f.begin(), f.end());
    return long(used.size()) - long(edge_counts(m).size()) + long(m.faces.size());
}

// Throws MeshDegenerate if a face is (nearly) collinear or an index is out of range.
inline void validate_mesh(const Mesh& m)
{
    for (auto& f : m.faces) {
        for (int i : f)
            if (i < 0 || i >= int(m.vertices.size())) throw Error(ErrorKind::MeshDegenerate, "face index out of range");
        double e = 0;
        for (int k = 0; k < 3; ++k) e = std::max(e, (m.vertices[f[k]] - m.vertices[f[(k + 1) % 3]]).norm());
        if (!(face_area(m, f) > 1e-12 * e * e)) {
            std::string where;
            if (m.uv.size() == m.vertices.size())
                where = " at uv (" + std::to_string(m.uv[f[0]].real()) + ", " + std::to_string(m.uv[f[0]].imag()) + ")";
            throw Error(ErrorKind::MeshDegenerate, "degenerate face" + where);
        }
    }
}

// Drops vertices no face references and renumbers.
inline Mesh compact(const Mesh& m)
{
    std::vector<int> map(m.vertices.size(), -1);
    Mesh out;
    for (auto& f : m.faces)
        for (int i : f)
            if (map[i] < 0) {
                map[i] = int(out.vertices.size());
                out.vertices.push_back(m.vertices[i]);
                if (!m.uv.empty()) out.uv.push_back(m.uv[i]);
                if (!m.normals.empty()) out.normals.push_back(m.normals[i]);
            }
    for (auto& f : m.faces) out.faces.push_back({map[f[0]], map[f[1]], map[f[2]]});
    out.boundaryLoops = compute_boundary_loops(out);
    return out;
}

// Closes every boundary loop with a fan around a new centroid vertex.
inline Mesh cap_boundaries(const Mesh& m)
{
    Mesh out = m;
    for (auto& loop : compute_boundary_loops(m)) {
        Vec3 c = Vec3::Zero();
        for (int i : loop) c += m.vertices[i];
        c /= double(loop.size());
        int ci = int(out.vertices.size());
        out.vertices.push_back(c);
        if (!out.uv.empty()) out.uv.push_back(Complex(0));
        if (!out.normals.empty()) out.normals.push_back(Vec3::UnitZ());
        for (std::size_t k = 0; k < loop.size(); ++k) {
            int a = loop[k], b = loop[(k + 1) % loop.size()];
            out.faces.push_back({b, a, ci});
        }
    }
    out.boundaryLoops.clear();
    return out;
}

} // namespace msurf
