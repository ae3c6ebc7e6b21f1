#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "ends.hpp"
#include "extend.hpp"
#include "groups.hpp"
#include "io.hpp"
#include "mesher.hpp"
#include "periods.hpp"
#include "symmetry.hpp"
#include "total_curvature.hpp"

namespace msurf {

// ---------------------------------------------------------------- building blocks

struct TrinoidSurface {
    Mesh quarter;
    std::vector<Generator> generators;
    Extension full;
};

inline double trinoid_gap(const TrinoidParams& p)
{
    return std::min({-p.lambda1, p.lambda1 - p.lambda2, p.lambda2 - p.lambda3, 1.0});
}

inline TrinoidSurface build_trinoid_surface(const SurfaceData& d, const MeshSampling& s)
{
    if (!d.trinoid) throw Error(ErrorKind::NotTrinoid, "trinoid data required");
    TrinoidSurface t;
    t.quarter = build_fundamental_mesh(d, s);
    t.generators = trinoid_quarter_generators(t.quarter, *d.trinoid);
    t.full = reflect_extend_full(t.quarter, t.generators, default_weld_tolerance(t.quarter));
    return t;
}

// The mesh a surface is verified on: the reflected closed-up surface for the trinoid, the
// fundamental chart otherwise.
inline Mesh build_surface_mesh(const SurfaceData& d, const MeshSampling& s)
{
    if (d.trinoid) return build_trinoid_surface(d, s).full.mesh;
    return build_fundamental_mesh(d, s);
}

// Vertices whose curvature estimate is trusted: away from the chart's singular points, where the
// structured grid is badly shaped.
inline std::function<bool(int)> minimality_region(const SurfaceData& d, const Mesh& m)
{
    if (d.trinoid) {
        const auto& p = *d.trinoid;
        double gap = trinoid_gap(p);
        std::vector<Complex> marks{p.lambda2, p.lambda1, 0, 1};
        return [&m, marks, gap](int i) {
            for (auto e : marks)
                if (std::abs(m.uv[i] - e) < 0.25 * gap) return false;
            return std::abs(m.uv[i]) < 5;
        };
    }
    if (d.noidOrder > 0)
        return [&m](int i) {
            double r = std::abs(m.uv[i]);
            return r >= 0.15 && r <= 0.7;
        };
    return {};
}

inline std::vector<int> minimality_resolutions(const SurfaceData& d)
{
    if (d.noidOrder > 0) return {12, 24, 48, 96};
    return {8, 16, 32, 64};
}

struct MinimalityStudy {
    std::vector<int> resolutions;
    std::vector<double> scaledH; // max |H| * edge scale
    std::vector<double> ratios;
    bool pass = false;
};

inline MinimalityStudy minimality_study(const SurfaceData& d, const std::vector<int>& res, const NumericConfig& cfg = {},
                                        double minRatio = 3)
{
    MinimalityStudy out;
    out.resolutions = res;
    for (int n : res) {
        MeshSampling s;
        s.resolution = n;
        s.numeric = cfg;
        Mesh m = build_fundamental_mesh(d, s);
        out.scaledH.push_back(scaled_mean_curvature(m, minimality_region(d, m)));
    }
    out.pass = res.size() >= 2;
    for (std::size_t i = 1; i < out.scaledH.size(); ++i) {
        out.ratios.push_back(out.scaledH[i - 1] / out.scaledH[i]);
        out.pass = out.pass && out.ratios.back() >= minRatio;
    }
    return out;
}

// Per-vertex mean of the normals around each boundary loop.
inline std::vector<Vec3> loop_normals(const Mesh& m)
{
    std::vector<Vec3> out;
    for (auto& loop : m.boundaryLoops) {
        Vec3 a = Vec3::Zero();
        for (int v : loop) a += m.normals[v];
        out.push_back(a.normalized());
    }
    return out;
}

inline std::vector<double> pairwise_angles(const std::vector<Vec3>& ns)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i + 1; j < ns.size(); ++j) out.push_back(angle_between(ns[i], ns[j]));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- named checks

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string message;
    Json values = Json::object();
};

inline Json to_json(const CheckResult& c)
{
    return Json{{"check", c.name}, {"pass", c.pass}, {"skipped", c.skipped}, {"message", c.message}, {"values", c.values}};
}

struct VerifyOptions {
    RunConfig run;
    int isometryResolution = 16;
    int isometrySamples = 200;
};

inline const std::vector<std::string>& known_checks()
{
    static const std::vector<std::string> names{"mean-curvature", "conjugation-isometry", "total-curvature", "symmetry",
                                                "end-angles"};
    return names;
}

inline CheckResult check_mean_curvature(const SurfaceData& d, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "mean-curvature";
    auto st = minimality_study(d, minimality_resolutions(d), o.run.numeric());
    r.pass = st.pass;
    r.values = {{"resolutions", st.resolutions}, {"scaledH", st.scaledH}, {"ratios", st.ratios}, {"minRatio", 3}};
    r.message = st.pass ? "max |H| * h falls by >= 3 per doubling" : "O(h^2) decay of |H| * h not observed";
    return r;
}

// Both meshes share the chart, so edge (a, b) exists in each; lengths are the intrinsic lengths
// of the edge's image curve.
inline CheckResult check_conjugation_isometry(const SurfaceData& d, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "conjugation-isometry";
    auto cfg = o.run.numeric();
    MeshSampling s;
    s.resolution = o.isometryResolution;
    s.numeric = cfg;
    s.weldSeam = false; // a closed seam on one side may be a translation period on the other
    SurfaceData dc = conjugate(d);
    Mesh m = build_fundamental_mesh(d, s), mc = build_fundamental_mesh(dc, s);
    if (m.uv != mc.uv || m.faces != mc.faces) {
        r.message = "conjugate mesh has a different vertex layout";
        return r;
    }
    std::vector<std::pair<int, int>> edges;
    for (auto& [e, n] : edge_counts(m)) edges.push_back(e);
    auto l = edge_arc_lengths(d, m, edges, 16, cfg), lc = edge_arc_lengths(dc, mc, edges, 16, cfg);
    double worst = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) worst = std::max(worst, std::abs(l[i] - lc[i]) / l[i]);

    // metric factor bit-equality over the associate family
    bool bitEqual = true;
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, m.vertices.size() - 1);
    std::uniform_real_distribution<double> phase(0, 2 * M_PI);
    auto excl = singular_points(d);
    int tested = 0;
    for (int k = 0; k < o.isometrySamples; ++k) {
        Complex z = m.uv[pick(rng)];
        if (detail::on_point(z, excl)) continue;
        Complex g = value_at(d, z, cfg).end.g;
        SurfaceData dt = associate(d, phase(rng));
        bitEqual = bitEqual && metric_factor(d, z, g, cfg) == metric_factor(dt, z, g, cfg);
        ++tested;
    }
    r.pass = worst < 1e-6 && bitEqual;
    r.values = {{"edges", edges.size()}, {"maxRelativeEdgeDifference", worst}, {"metricSamples", tested},
                {"metricBitEqual", bitEqual}};
    r.message = r.pass ? "conjugate surface is isometric" : "edge lengths or metric differ";
    return r;
}

inline CheckResult check_total_curvature(const SurfaceData& d, const VerifyOptions&)
{
    CheckResult r;
    r.name = "total-curvature";
    double v = total_curvature(d, 1e-4), e = expected_total_curvature(d);
    r.pass = std::abs(v - e) <= 1e-4;
    r.values = {{"totalCurvature", v}, {"expected", e}, {"domain", d.domain == Domain::UpperHalfPlane ? "upper-half-plane" : "plane"}};
    if (d.trinoid) {
        r.values["boundTwoPi"] = 2 * M_PI;
        r.values["withinTwoPi"] = v <= 2 * M_PI + 1e-2;
    }
    r.message = r.pass ? "Gauss image area matches 2 pi deg(g^2) over the domain" : "Gauss image area off";
    return r;
}

struct SymmetryReport {
    std::vector<double> deviations;
    double negativeControl = NAN;
    std::string group;
};

inline SymmetryReport symmetry_report(const SurfaceData& d, const MeshSampling& s, const NumericConfig& cfg = {})
{
    SymmetryReport out;
    if (d.trinoid) {
        auto t = build_trinoid_surface(d, s);
        auto frame = trinoid_frame(d, t.generators, cfg);
        const Mesh& full = t.full.mesh;
        double R = std::numeric_limits<double>::infinity();
        for (auto& loop : full.boundaryLoops)
            for (int v : loop) R = std::min(R, (full.vertices[v] - frame.center).norm());
        for (auto& g : trinoid_symmetry_group(frame))
            out.deviations.push_back(symmetry_deviation_in_ball(full, g, frame.center, 0.9 * R));
        out.group = "D3xZ2";
        return out;
    }
    int n = d.noidOrder > 0 ? d.noidOrder : d.name == "catenoid" ? 4 : 0;
    if (n == 0) return out;
    Mesh m = build_fundamental_mesh(d, s);
    auto G = dihedral_symmetry_group(d, n, cfg);
    if (d.associatePhase != 0) {
        // mirrors only hold for the undeformed data; of the rotations only the half turn maps the
        // cut piece onto itself
        std::vector<Isometry> keep{G[0]};
        if (n % 2 == 0) keep.push_back(G[n / 2]);
        G = keep;
    }
    for (auto& g : G) out.deviations.push_back(symmetry_deviation(m, g));
    Vec3 c = dihedral_axis_point(d, n, cfg);
    out.negativeControl = symmetry_deviation(m, Isometry::rotation(c, Vec3::UnitZ(), M_PI / n));
    out.group = "D" + std::to_string(n);
    return out;
}

inline CheckResult check_symmetry(const SurfaceData& d, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "symmetry";
    MeshSampling s;
    s.resolution = o.run.meshResolution;
    s.numeric = o.run.numeric();
    auto rep = symmetry_report(d, s, s.numeric);
    if (rep.deviations.empty()) {
        r.skipped = true;
        r.pass = true;
        r.message = "no known symmetry group for this surface";
        return r;
    }
    double worst = *std::max_element(rep.deviations.begin(), rep.deviations.end());
    r.pass = worst < 1e-4;
    r.values = {{"group", rep.group}, {"deviations", rep.deviations}, {"maxDeviation", worst}};
    if (!std::isnan(rep.negativeControl)) r.values["halfStepRotation"] = rep.negativeControl;
    r.message = r.pass ? "all group elements map the mesh onto itself" : "some group elements move the mesh";
    return r;
}

inline CheckResult check_end_angles(const SurfaceData& d, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "end-angles";
    auto cfg = o.run.numeric();
    auto normals = end_normals(d, cfg);
    if (normals.size() < 2) {
        r.skipped = true;
        r.pass = true;
        r.message = "fewer than two ends";
        return r;
    }
    auto angles = end_normal_angles(normals);
    const double target = 2 * M_PI / double(normals.size());
    bool symmetric = !d.trinoid || d.trinoid->symmetricC;
    double worst = 0;
    for (double a : angles) worst = std::max(worst, std::abs(a - target));
    r.values = {{"angles", angles}, {"target", target}};
    r.pass = !symmetric || worst <= 1e-2;
    if (d.trinoid) {
        auto res = period_residual(d, o.run.period());
        r.values["periodResidual"] = res.norm;
        if (res.norm > 1e-6) {
            r.pass = false;
            r.message = "period problem not solved: the reflected copies do not close up";
            return r;
        }
        MeshSampling s;
        s.resolution = o.run.meshResolution;
        s.numeric = cfg;
        s.endRadius = 1e-3 * std::min(d.trinoid->lambda1 - d.trinoid->lambda2, d.trinoid->lambda2 - d.trinoid->lambda3);
        try {
            auto t = build_trinoid_surface(d, s);
            auto meshAngles = pairwise_angles(loop_normals(t.full.mesh));
            auto analytic = pairwise_angles(normals);
            r.values["meshAngles"] = meshAngles;
            double meshWorst = meshAngles.size() == analytic.size() ? 0 : INFINITY;
            for (std::size_t i = 0; i < meshAngles.size() && i < analytic.size(); ++i)
                meshWorst = std::max(meshWorst, std::abs(meshAngles[i] - analytic[i]));
            r.values["meshDeviation"] = meshWorst;
            r.pass = r.pass && meshWorst <= 1e-3;
        } catch (const Error& e) {
            r.pass = false;
            r.message = e.what();
            return r;
        }
    }
    r.message = r.pass ? "end normals are balanced" : "end normals deviate from the expected angles";
    return r;
}

inline CheckResult run_check(const std::string& name, const SurfaceData& d, const VerifyOptions& o)
{
    try {
        if (name == "mean-curvature") return check_mean_curvature(d, o);
        if (name == "conjugation-isometry") return check_conjugation_isometry(d, o);
        if (name == "total-curvature") return check_total_curvature(d, o);
        if (name == "symmetry") return check_symmetry(d, o);
        if (name == "end-angles") return check_end_angles(d, o);
    } catch (const Error& e) {
        CheckResult r;
        r.name = name;
        r.message = e.what();
        return r;
    }
    throw Error(ErrorKind::UnknownCheck, "unknown check: " + name);
}

} // namespace msurf
