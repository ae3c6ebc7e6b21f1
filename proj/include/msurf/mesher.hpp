#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "mesh.hpp"
#include "weierstrass.hpp"

namespace msurf {

struct MeshSampling {
    int resolution = 32;     // cells per chart direction (per interval for the trinoid)
    double rMin = 0, rMax = 0; // polar charts; 0 selects the surface default
    double endRadius = 0;    // uv radius removed around finite ends; 0 selects the default
    double boxSize = 0;      // trinoid uv box half-width and height; 0 selects the default
    int treeVariant = 0;     // 0: rows from the root column, 1: columns from the root row
    bool weldSeam = true;    // periodic charts: merge the seam when it closes up
    NumericConfig numeric;
};

namespace detail {

struct Chart {
    int nx = 0, ny = 0; // nodes per row, rows
    std::vector<Complex> nodes;
    std::vector<bool> alive;
    bool seam = false;  // column nx-1 repeats column 0
    int id(int i, int j) const { return j * nx + i; }
};

// x = x0 + a sinh(t asinh(L / a)) for t in [0, 1]: spacing grows geometrically away from x0.
inline double graded(double x0, double L, double a, double t)
{
    return x0 + a * std::sinh(t * std::asinh(L / a));
}

inline Chart polar_chart(int nth, int nr, double rMin, double rMax)
{
    Chart c;
    c.nx = nth + 1;
    c.ny = nr + 1;
    c.seam = true;
    for (int j = 0; j < c.ny; ++j) {
        double r = rMin * std::pow(rMax / rMin, double(j) / nr);
        for (int i = 0; i < c.nx; ++i) {
            double th = 2 * M_PI * (i % nth) / nth;
            c.nodes.push_back(std::polar(r, th));
        }
    }
    c.alive.assign(c.nodes.size(), true);
    return c;
}

inline Chart trinoid_chart(const TrinoidParams& p, int n, double endRadius, double box)
{
    const double l1 = p.lambda1, l2 = p.lambda2, l3 = p.lambda3;
    const double a = 0.05;
    const double ae = std::max(0.2 * endRadius, 1e-6);
    std::vector<double> xs;
    auto piece = [&](auto f) {
        for (int k = xs.empty() ? 0 : 1; k <= n; ++k) xs.push_back(f(double(k) / n));
    };
    piece([&](double t) { return t == 1 ? l2 : graded(l2, -box - l2, ae, 1 - t); });
    piece([&](double t) { return t == 0 ? l2 : t == 1 ? l1 : graded(l2, l1 - l2, ae, t); });
    piece([&](double t) { return t == 0 ? l1 : t == 1 ? 0.0 : l1 * (1 - t); });
    piece([&](double t) { return t == 1 ? 1.0 : t; });
    piece([&](double t) { return t == 0 ? 1.0 : graded(1, box - 1, a, t); });
    for (auto& x : xs)
        if (std::abs(x - l3) < 1e-9 * (1 + std::abs(l3))) x = l3 + 1e-6 * (1 + std::abs(l3));
    Chart c;
    c.nx = int(xs.size());
    c.ny = n + 1;
    for (int j = 0; j < c.ny; ++j) {
        double y = j == 0 ? 0.0 : graded(0, box, std::max(ae, 0.01), double(j) / n);
        for (double x : xs) c.nodes.push_back(Complex(x, y));
    }
    c.alive.assign(c.nodes.size(), true);
    for (std::size_t k = 0; k < c.nodes.size(); ++k)
        if (std::abs(c.nodes[k] - l2) < endRadius) c.alive[k] = false;
    return c;
}

inline bool on_point(Complex z, const std::vector<Complex>& pts)
{
    for (auto& e : pts)
        if (std::abs(z - e) <= 1e-13 * std::max(1.0, std::abs(e))) return true;
    return false;
}

} // namespace detail

// Structured-grid mesh of the fundamental domain.  Positions come from one short integral per
// spanning-tree edge; vertices sitting on branch points are leaves reached by singular-end
// integrals.
inline Mesh build_fundamental_mesh(const SurfaceData& d, const MeshSampling& s = {})
{
    if (s.resolution < 4) throw Error(ErrorKind::InvariantViolation, "mesh resolution must be at least 4");
    const int n = s.resolution;
    detail::Chart c;
    std::vector<Complex> ends;
    for (auto& m : d.markedPoints)
        if (m.kind == PointKind::End && m.at) ends.push_back(*m.at);
    if (d.trinoid) {
        const auto& p = *d.trinoid;
        double gap = std::min(p.lambda1 - p.lambda2, p.lambda2 - p.lambda3);
        double er = s.endRadius > 0 ? s.endRadius : 0.1 * gap;
        double box = s.boxSize > 0 ? s.boxSize : 100 * (1 + std::abs(p.lambda3));
        c = detail::trinoid_chart(p, n, er, box);
    } else {
        double rMin = s.rMin, rMax = s.rMax;
        if (d.name == "catenoid") {
            if (rMin <= 0) rMin = 0.25;
            if (rMax <= 0) rMax = 4;
        } else if (d.noidOrder > 0) {
            if (rMin <= 0) rMin = 0.1;
            if (rMax <= 0) rMax = 0.95;
        } else {
            if (rMin <= 0) rMin = 0.1;
            if (rMax <= 0) rMax = 2;
        }
        if (!(0 < rMin && rMin < rMax)) throw Error(ErrorKind::InvariantViolation, "polar chart needs 0 < rMin < rMax");
        // angular count a multiple of 2m so the dihedral symmetries map the grid onto itself
        int m2 = 2 * (d.noidOrder > 0 ? d.noidOrder : 4);
        int nth = (n + m2 - 1) / m2 * m2;
        c = detail::polar_chart(nth, n, rMin, rMax);
        double er = s.endRadius > 0 ? s.endRadius : 0.05;
        for (std::size_t k = 0; k < c.nodes.size(); ++k)
            for (auto& e : ends)
                if (std::abs(c.nodes[k] - e) < er) c.alive[k] = false;
    }

    // path exclusions: singular points and poles of g (where continuation would jump sheets)
    auto excl = singular_points(d);
    for (auto& pl : d.gSquared.poles())
        if (!detail::on_point(pl.at, excl)) excl.push_back(pl.at);
    auto sing = singular_points(d);
    const int N = int(c.nodes.size());
    std::vector<bool> isSing(N);
    for (int k = 0; k < N; ++k) isSing[k] = detail::on_point(c.nodes[k], sing);
    for (int k = 0; k < N; ++k)
        if (c.alive[k] && !isSing[k] && detail::on_point(c.nodes[k], excl)) c.alive[k] = false;

    // root: the live regular node nearest the base point
    int root = -1;
    for (int k = 0; k < N; ++k)
        if (c.alive[k] && !isSing[k] && (root < 0 || std::abs(c.nodes[k] - d.basePoint) < std::abs(c.nodes[root] - d.basePoint)))
            root = k;
    if (root < 0) throw Error(ErrorKind::MeshDegenerate, "no live vertices");

    std::vector<SpacePoint> pos(N, SpacePoint::Zero());
    std::vector<BranchState> br(N);
    std::vector<bool> done(N, false), singEnd(N, false);
    {
        auto path = path_from_base(d, c.nodes[root], s.numeric, false);
        auto r = integrate_phi(d, path, d.branchSeed, s.numeric);
        pos[root] = r.x;
        br[root] = r.end;
        done[root] = true;
    }
    auto tryEdge = [&](int from, int to) {
        if (to < 0 || done[to] || !c.alive[to] || isSing[from]) return false;
        Complex a = c.nodes[from], b = c.nodes[to];
        if (a == b) return false;
        try {
            auto path = make_path({a, b}, excl, s.numeric, true, 0.1 * std::abs(b - a));
            if (path.singularStart) return false;
            auto r = integrate_phi(d, path, br[from], s.numeric);
            pos[to] = pos[from] + r.x;
            br[to] = r.end;
            singEnd[to] = r.endSingular;
            done[to] = true;
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    auto nb = [&](int k, int di, int dj) {
        int i = k % c.nx + di, j = k / c.nx + dj;
        if (i < 0 || i >= c.nx || j < 0 || j >= c.ny) return -1;
        return c.id(i, j);
    };
    // comb: a spine through the root, then teeth perpendicular to it
    const bool rowsFirst = s.treeVariant == 0;
    const int sdi = rowsFirst ? 0 : 1, sdj = rowsFirst ? 1 : 0;
    std::vector<int> spine{root};
    for (int dir : {1, -1})
        for (int k = root;;) {
            int m = nb(k, sdi * dir, sdj * dir);
            if (m < 0 || !tryEdge(k, m)) break;
            spine.push_back(m);
            k = m;
        }
    std::deque<int> queue;
    for (int sp : spine) {
        queue.push_back(sp);
        for (int dir : {1, -1})
            for (int k = sp;;) {
                int m = nb(k, sdj * dir, sdi * dir);
                if (m < 0 || !tryEdge(k, m)) break;
                queue.push_back(m);
                k = m;
            }
    }
    for (int k = 0; k < N; ++k)
        if (done[k] && k != root) queue.push_back(k);
    while (!queue.empty()) {
        int k = queue.front();
        queue.pop_front();
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            int m = nb(k, di, dj);
            if (tryEdge(k, m)) queue.push_back(m);
        }
    }

    Mesh mesh;
    std::vector<int> index(N, -1);
    for (int k = 0; k < N; ++k)
        if (done[k]) {
            index[k] = int(mesh.vertices.size());
            mesh.vertices.push_back(pos[k]);
            mesh.uv.push_back(c.nodes[k]);
            Vec3 nrm;
            if (singEnd[k] || isSing[k]) {
                bool pole = false;
                for (auto& pl : d.gSquared.poles())
                    if (std::abs(pl.at - c.nodes[k]) < 1e-12) pole = true;
                nrm = pole ? gauss_map_infinity() : gauss_map(Complex(0));
            } else {
                nrm = gauss_map(br[k].g);
            }
            mesh.normals.push_back(nrm);
        }
    // seam: merge the repeated column if it closes up
    if (c.seam && s.weldSeam) {
        double tol = 1e-6 * std::max(1.0, bbox(mesh.vertices).diameter());
        bool closes = true;
        for (int j = 0; j < c.ny && closes; ++j) {
            int a = index[c.id(0, j)], b = index[c.id(c.nx - 1, j)];
            if ((a < 0) != (b < 0)) closes = false;
            else if (a >= 0 && (mesh.vertices[a] - mesh.vertices[b]).norm() > tol) closes = false;
        }
        if (closes)
            for (int j = 0; j < c.ny; ++j) index[c.id(c.nx - 1, j)] = index[c.id(0, j)];
    }
    for (int j = 0; j + 1 < c.ny; ++j)
        for (int i = 0; i + 1 < c.nx; ++i) {
            int v00 = c.id(i, j), v10 = c.id(i + 1, j), v11 = c.id(i + 1, j + 1), v01 = c.id(i, j + 1);
            for (auto tri : {std::array<int, 3>{v00, v10, v11}, std::array<int, 3>{v00, v11, v01}}) {
                if (index[tri[0]] < 0 || index[tri[1]] < 0 || index[tri[2]] < 0) continue;
                Complex e1 = c.nodes[tri[1]] - c.nodes[tri[0]], e2 = c.nodes[tri[2]] - c.nodes[tri[0]];
                double area = (std::conj(e1) * e2).imag();
                if (area < 0) std::swap(tri[1], tri[2]);
                mesh.faces.push_back({index[tri[0]], index[tri[1]], index[tri[2]]});
            }
        }
    mesh = compact(mesh);
    validate_mesh(mesh);
    return mesh;
}

// Intrinsic length of each undirected mesh edge, measured along the image of the uv segment by
// Richardson-extrapolated chord sums.
inline std::vector<double> edge_arc_lengths(const SurfaceData& d, const Mesh& m,
                                            const std::vector<std::pair<int, int>>& edges, int pieces = 8,
                                            const NumericConfig& cfg = {})
{
    auto sing = singular_points(d);
    auto excl = sing; // chords do not depend on the route, so poles of g are simply avoided
    for (auto& pl : d.gSquared.poles())
        if (!detail::on_point(pl.at, excl)) excl.push_back(pl.at);
    std::vector<double> out;
    for (auto [a, b] : edges) {
        Complex za = m.uv[a], zb = m.uv[b];
        if (detail::on_point(za, sing)) std::swap(za, zb); // start from the regular end
        if (detail::on_point(za, sing)) throw Error(ErrorKind::InvalidPath, "edge joins two singular points");
        const bool singularEnd = detail::on_point(zb, sing);
        // g at the start of the edge, continued from the base point
        auto route = path_from_base(d, za, cfg);
        BranchState start = continue_sqrt(d.gSquared, route, d.branchSeed, cfg).back();
        auto polyline = [&](int k) {
            double len = 0;
            BranchState st = start;
            Complex prev = za;
            for (int i = 1; i <= k; ++i) {
                double t = double(i) / k;
                if (singularEnd) t = 1 - (1 - t) * (1 - t); // speed ~ |z - z0|^(-1/2) at a branch point
                Complex z = za + (zb - za) * t;
                PathPolyline path;
                try {
                    path = make_path({prev, z}, excl, cfg, i == k, 0.01 * std::abs(z - prev));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::InvalidPath) throw;
                    Complex bend = 0.5 * (prev + z) + Complex(0, 0.5) * (z - prev);
                    path = make_path({prev, bend, z}, excl, cfg, i == k, 0.01 * std::abs(z - prev));
                }
                auto r = integrate_phi(d, path, st, cfg);
                len += r.x.norm();
                st = r.end;
                prev = z;
            }
            return len;
        };
        double l1 = polyline(pieces), l2 = polyline(2 * pieces);
        out.push_back((4 * l2 - l1) / 3);
    }
    return out;
}

} // namespace msurf
