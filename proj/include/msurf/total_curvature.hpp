#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "weierstrass.hpp"

namespace msurf {

struct DiskRegion {
    Complex center = 0;
    double radius = 1;
};
struct RectRegion {
    double x0, x1, y0, y1;
};
struct UpperHalfPlaneRegion {};
struct WholePlaneRegion {};
using DomainRegion = std::variant<DiskRegion, RectRegion, UpperHalfPlaneRegion, WholePlaneRegion>;

// Gauss-image area density 4|g'|^2 / (1 + |g|^2)^2, written through f = g^2 so no branch is
// needed: |g'|^2 = |f'|^2 / (4 |f|).
inline double gauss_area_density(const RationalFn& f, Complex z)
{
    Complex v = f(z), dv = f.derivative(z);
    double a = std::abs(v);
    if (a == 0) return 0;
    if (!std::isfinite(a)) return 0;
    return std::norm(dv) / (a * (1 + a) * (1 + a));
}

namespace detail {

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth = 0)
{
    const auto& r = gk15();
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double k = 0, g = 0;
    for (int i = 0; i < 15; ++i) {
        double v = f(mid + half * r.x[i]);
        k += r.wk[i] * v;
        g += r.wg[i] * v;
    }
    k *= half;
    g *= half;
    if (std::abs(k - g) <= tol || depth >= 30 || std::abs(k - g) <= 1e-14 * std::abs(k)) return k;
    return adaptive_gk(f, a, mid, tol / 2, depth + 1) + adaptive_gk(f, mid, b, tol / 2, depth + 1);
}

template <class F>
double integrate_split(const F& f, std::vector<double> cuts, double tol)
{
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double s = 0, total = cuts.back() - cuts.front();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        s += adaptive_gk(f, cuts[i], cuts[i + 1], tol * (cuts[i + 1] - cuts[i]) / total);
    return s;
}

} // namespace detail

// Spherical area of the Gauss image of the region, with multiplicity (adaptive nested
// Gauss-Kronrod; the upper half-plane is mapped to the unit disk by a Cayley transform).
inline double total_curvature(const SurfaceData& d, const DomainRegion& region, double tol = 1e-6)
{
    const RationalFn& f = d.gSquared;
    std::vector<Complex> marks;
    for (auto& r : f.zeros()) marks.push_back(r.at);
    for (auto& r : f.poles()) marks.push_back(r.at);
    if (auto disk = std::get_if<DiskRegion>(&region)) {
        const Complex c = disk->center;
        const double R = disk->radius;
        std::vector<double> cuts{0, 2 * M_PI};
        std::vector<double> rcuts{0, 1};
        for (auto m : marks)
            if (std::abs(m - c) > 0 && std::abs(m - c) < R) {
                cuts.push_back(wrap_phase(std::arg(m - c)));
                rcuts.push_back(std::abs(m - c) / R);
            }
        auto outer = [&](double psi) {
            Complex e = std::polar(1.0, psi);
            auto inner = [&](double rho) { return gauss_area_density(f, c + R * rho * e) * rho * R * R; };
            return detail::integrate_split(inner, rcuts, tol / (4 * M_PI));
        };
        return detail::integrate_split(outer, cuts, tol / 2);
    }
    if (std::holds_alternative<WholePlaneRegion>(region)) {
        // unit disk plus its outside through z = 1/w, |dz/dw|^2 = 1/|w|^4
        double inside = total_curvature(d, DiskRegion{0, 1}, tol / 2);
        std::vector<double> cuts{0, 2 * M_PI}, rcuts{0, 1};
        for (auto m : marks)
            if (std::abs(m) > 1) {
                Complex w = 1.0 / m;
                cuts.push_back(wrap_phase(std::arg(w)));
                rcuts.push_back(std::abs(w));
            }
        auto outer = [&](double psi) {
            Complex e = std::polar(1.0, psi);
            auto inner = [&](double rho) {
                if (rho == 0) return 0.0;
                return gauss_area_density(f, 1.0 / (rho * e)) / std::pow(rho, 3);
            };
            return detail::integrate_split(inner, rcuts, tol / (8 * M_PI));
        };
        return inside + detail::integrate_split(outer, cuts, tol / 4);
    }
    if (auto rect = std::get_if<RectRegion>(&region)) {
        std::vector<double> xc{rect->x0, rect->x1}, yc{rect->y0, rect->y1};
        for (auto m : marks) {
            if (m.real() > rect->x0 && m.real() < rect->x1) xc.push_back(m.real());
            if (m.imag() > rect->y0 && m.imag() < rect->y1) yc.push_back(m.imag());
        }
        auto outer = [&](double x) {
            auto inner = [&](double y) { return gauss_area_density(f, Complex(x, y)); };
            return detail::integrate_split(inner, yc, tol / (2 * (rect->x1 - rect->x0)));
        };
        return detail::integrate_split(outer, xc, tol / 2);
    }
    // z = i (1 + w) / (1 - w), |dz/dw|^2 = 4 / |1 - w|^4
    std::vector<double> cuts{0, 2 * M_PI};
    for (auto m : marks)
        if (std::abs(m.imag()) < 1e-14) {
            Complex w = (m - Complex(0, 1)) / (m + Complex(0, 1));
            cuts.push_back(wrap_phase(std::arg(w)));
        }
    auto outer = [&](double psi) {
        Complex e = std::polar(1.0, psi);
        auto inner = [&](double rho) {
            Complex w = rho * e;
            Complex z = Complex(0, 1) * (1.0 + w) / (1.0 - w);
            return gauss_area_density(f, z) * 4 / std::pow(std::abs(1.0 - w), 4) * rho;
        };
        return detail::adaptive_gk(inner, 0, 1, tol / (4 * M_PI));
    };
    return detail::integrate_split(outer, cuts, tol / 2);
}

// Gauss-image area of the whole parameter domain: 2 pi deg(g^2) over the plane, half that over
// the upper half-plane for data with real coefficients.
inline double expected_total_curvature(const SurfaceData& d)
{
    double D = std::max(d.gSquared.numerator().degree(), d.gSquared.denominator().degree());
    return d.domain == Domain::UpperHalfPlane ? M_PI * D : 2 * M_PI * D;
}

inline double total_curvature(const SurfaceData& d, double tol = 1e-6)
{
    return d.domain == Domain::UpperHalfPlane ? total_curvature(d, UpperHalfPlaneRegion{}, tol)
                                              : total_curvature(d, WholePlaneRegion{}, tol);
}

} // namespace msurf
