#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "isometry.hpp"
#include "mesh.hpp"

namespace msurf {

// A generator of the extension group together with the mesh vertices it fixes (the mirror arcs
// along which copies are glued).
struct Generator {
    Isometry iso;
    std::vector<int> fixed;
};

struct Extension {
    Mesh mesh;
    std::vector<Isometry> elements; // element k produced copy k
};

// Union of g(mesh) over the group generated by the generators.  Copies g and g*s share the
// vertices fixed by s; each such identification is checked geometrically.
inline Extension reflect_extend_full(const Mesh& m, const std::vector<Generator>& gens, double weldTol,
                                     std::size_t maxElements = 256)
{
    Extension out;
    out.elements.push_back(Isometry::identity());
    auto find = [&](const Isometry& g) {
        for (std::size_t i = 0; i < out.elements.size(); ++i)
            if (out.elements[i].approx_equal(g)) return int(i);
        return -1;
    };
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        for (auto& s : gens) {
            Isometry g = out.elements[i] * s.iso;
            if (find(g) < 0) {
                if (out.elements.size() >= maxElements) throw Error(ErrorKind::WeldFailure, "generated group is not finite");
                out.elements.push_back(g);
            }
        }
    const std::size_t nv = m.vertices.size(), ne = out.elements.size();
    std::vector<int> parent(nv * ne);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < ne; ++e)
        for (auto& s : gens) {
            int partner = find(out.elements[e] * s.iso);
            for (int v : s.fixed) {
                double gap = (m.vertices[v] - s.iso(m.vertices[v])).norm();
                if (gap > weldTol)
                    throw Error(ErrorKind::WeldFailure, "mirror vertex is off its plane by " + std::to_string(gap));
                int a = root(int(e * nv + v)), b = root(int(partner * nv + v));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    Mesh& r = out.mesh;
    std::vector<int> index(nv * ne, -1);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t v = 0; v < nv; ++v) {
            int k = root(int(e * nv + v));
            if (index[k] < 0) {
                index[k] = int(r.vertices.size());
                const auto& g = out.elements[e];
                r.vertices.push_back(g(m.vertices[v]));
                if (!m.uv.empty()) r.uv.push_back(m.uv[v]);
                if (!m.normals.empty()) r.normals.push_back(g.apply_vector(m.normals[v]));
            }
            index[e * nv + v] = index[k];
        }
    for (std::size_t e = 0; e < ne; ++e) {
        bool flip = out.elements[e].orientation_reversing();
        for (auto f : m.faces) {
            Face t{index[e * nv + f[0]], index[e * nv + f[1]], index[e * nv + f[2]]};
            if (flip) std::swap(t[1], t[2]);
            r.faces.push_back(t);
        }
    }
    check_manifold(r);
    r.boundaryLoops = compute_boundary_loops(r);
    return out;
}

inline Mesh reflect_extend(const Mesh& m, const std::vector<Generator>& gens, double weldTol)
{
    return reflect_extend_full(m, gens, weldTol).mesh;
}

inline double default_weld_tolerance(const Mesh& m) { return 1e-6 * bbox(m.vertices).diameter(); }

// Mirror of the best-fit plane through the given vertices.
inline Isometry mirror_through(const Mesh& m, const std::vector<int>& ids)
{
    if (ids.size() < 3) throw Error(ErrorKind::DegenerateTrace, "too few mirror vertices");
    Vec3 c = Vec3::Zero();
    for (int i : ids) c += m.vertices[i];
    c /= double(ids.size());
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    for (int i : ids) C += (m.vertices[i] - c) * (m.vertices[i] - c).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(C);
    Vec3 n = es.eigenvectors().col(0).normalized();
    Eigen::Index k;
    n.cwiseAbs().maxCoeff(&k);
    if (n[k] < 0) n = -n;
    return Isometry::reflection(c, n);
}

// The two mirrors of the genus-1 trinoid quarter: the plane of the arcs over (1, inf) and
// (lambda1, 0), and the plane of the arcs over (0, 1), (lambda2, lambda1), (-inf, lambda2).
// Corner vertices at 1, 0, lambda1 lie on both.
inline std::vector<Generator> trinoid_quarter_generators(const Mesh& quarter, const TrinoidParams& p)
{
    std::vector<int> realG, imagG;
    for (std::size_t i = 0; i < quarter.uv.size(); ++i) {
        Complex z = quarter.uv[i];
        if (z.imag() != 0) continue;
        double x = z.real();
        bool corner = x == 1 || x == 0 || x == p.lambda1;
        if (corner || x > 1 || (p.lambda1 < x && x < 0)) realG.push_back(int(i));
        if (corner || (0 < x && x < 1) || (p.lambda2 < x && x < p.lambda1) || x < p.lambda2) imagG.push_back(int(i));
    }
    return {{mirror_through(quarter, realG), realG}, {mirror_through(quarter, imagG), imagG}};
}

} // namespace msurf
