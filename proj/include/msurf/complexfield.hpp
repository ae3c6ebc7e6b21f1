#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "config.hpp"
#include "error.hpp"

namespace msurf {

using Complex = std::complex<double>;
using CVec3 = Eigen::Matrix<Complex, 3, 1>;

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Dense polynomial, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() : c_{Complex(0)} {}
    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty()) c_.push_back(0);
        trim();
    }
    static Polynomial constant(Complex a) { return Polynomial({a}); }
    static Polynomial from_roots(Complex lead, const std::vector<std::pair<Complex, int>>& roots)
    {
        Polynomial p({lead});
        for (auto& [r, m] : roots)
            for (int k = 0; k < m; ++k) p = p * Polynomial({-r, Complex(1)});
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == Complex(0); }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex leading() const { return c_.back(); }

    Complex operator()(Complex z) const
    {
        Complex acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Polynomial derivative() const
    {
        if (c_.size() == 1) return Polynomial();
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Complex> r(a.c_.size() + b.c_.size() - 1, Complex(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    // Aberth-Ehrlich iteration; nearby roots are merged into one root with multiplicity.
    std::vector<std::pair<Complex, int>> roots() const
    {
        const int n = degree();
        if (n <= 0) return {};
        std::vector<Complex> a(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) a[k] = c_[k] / c_.back();
        Polynomial monic(a);
        Polynomial dmonic = monic.derivative();
        double bound = 0;
        for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k]));
        bound = 1 + bound;
        std::vector<Complex> z(n);
        for (int k = 0; k < n; ++k)
            z[k] = std::polar(0.5 * bound, 2 * M_PI * k / n + 0.4);
        for (int it = 0; it < 800; ++it) {
            double worst = 0;
            for (int k = 0; k < n; ++k) {
                Complex p = monic(z[k]);
                if (p == Complex(0)) continue;
                Complex ratio = p / dmonic(z[k]);
                Complex s = 0;
                for (int j = 0; j < n; ++j)
                    if (j != k) s += 1.0 / (z[k] - z[j]);
                Complex w = ratio / (1.0 - ratio * s);
                if (!finite(w)) continue;
                z[k] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[k])));
            }
            if (worst < 1e-16) break;
        }
        std::sort(z.begin(), z.end(), [](Complex x, Complex y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        std::vector<std::pair<Complex, int>> out;
        std::vector<bool> used(n, false);
        for (int k = 0; k < n; ++k) {
            if (used[k]) continue;
            Complex sum = z[k];
            int m = 1;
            used[k] = true;
            for (int j = k + 1; j < n; ++j) {
                if (!used[j] && std::abs(z[j] - z[k]) < 1e-5 * std::max(1.0, std::abs(z[k]))) {
                    used[j] = true;
                    sum += z[j];
                    ++m;
                }
            }
            Complex r = sum / double(m);
            if (m > 1) {
                // a root of multiplicity m is a simple root of the (m-1)th derivative
                Polynomial q = monic;
                for (int k = 1; k < m; ++k) q = q.derivative();
                Polynomial dq = q.derivative();
                for (int it = 0; it < 8; ++it) {
                    Complex d = dq(r);
                    if (d == Complex(0)) break;
                    Complex step = q(r) / d;
                    if (!finite(step) || std::abs(step) > 1e-3 * std::max(1.0, std::abs(r))) break;
                    r -= step;
                    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
                }
            }
            out.emplace_back(r, m);
        }
        return out;
    }

private:
    void trim()
    {
        double scale = 0;
        for (auto& x : c_) scale = std::max(scale, std::abs(x));
        while (c_.size() > 1 && std::abs(c_.back()) <= 1e-15 * scale) c_.pop_back();
    }

    std::vector<Complex> c_;
};

struct Root {
    Complex at;
    int multiplicity;
};

// numerator/denominator in reduced form; zeros and poles are cached at construction.
class RationalFn {
public:
    RationalFn() : num_(Polynomial::constant(1)), den_(Polynomial::constant(1)) {}

    RationalFn(Polynomial num, Polynomial den)
    {
        if (den.is_zero()) throw Error(ErrorKind::InvariantViolation, "denominator is identically zero");
        if (num.is_zero()) {
            num_ = Polynomial();
            den_ = Polynomial::constant(1);
            return;
        }
        scale_ = num.leading() / den.leading();
        auto snap = [](Complex r) {
            double tiny = 1e-13 * std::max(1.0, std::abs(r));
            return Complex(std::abs(r.real()) < tiny ? 0.0 : r.real(), std::abs(r.imag()) < tiny ? 0.0 : r.imag());
        };
        for (auto& [r, m] : num.roots()) zeros_.push_back({snap(r), m});
        for (auto& [r, m] : den.roots()) poles_.push_back({snap(r), m});
        if (!reduce()) {
            Complex lead = den.leading();
            std::vector<Complex> n = num.coeffs(), d = den.coeffs();
            for (auto& x : n) x /= lead;
            for (auto& x : d) x /= lead;
            num_ = Polynomial(n);
            den_ = Polynomial(d);
        }
    }

    static RationalFn from_factors(Complex scale, std::vector<Root> zeros, std::vector<Root> poles)
    {
        RationalFn f;
        f.scale_ = scale;
        f.zeros_ = std::move(zeros);
        f.poles_ = std::move(poles);
        f.reduce();
        return f;
    }

    static RationalFn constant(Complex a) { return from_factors(a, {}, {}); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    const std::vector<Root>& zeros() const { return zeros_; }
    const std::vector<Root>& poles() const { return poles_; }
    Complex scale() const { return scale_; }

    // degree(num) - degree(den): positive means a pole at infinity
    int degree_at_infinity() const { return num_.degree() - den_.degree(); }

    // Product form over the cached roots: keeps full relative accuracy next to a root.
    Complex operator()(Complex z, double poleRelTol = 1e-12) const
    {
        check_pole(z, poleRelTol);
        if (num_.is_zero()) return 0;
        Complex v = scale_;
        for (auto& r : zeros_)
            for (int k = 0; k < r.multiplicity; ++k) v *= (z - r.at);
        for (auto& r : poles_)
            for (int k = 0; k < r.multiplicity; ++k) v /= (z - r.at);
        return v;
    }

    Complex horner(Complex z) const { return num_(z) / den_(z); }

    // f(anchor + w) with every factor formed as (anchor - root) + w, exact when anchor is a root
    Complex eval_offset(Complex anchor, Complex w, double poleRelTol = 1e-12) const
    {
        if (num_.is_zero()) return 0;
        Complex v = scale_;
        for (auto& r : zeros_)
            for (int k = 0; k < r.multiplicity; ++k) v *= (anchor - r.at) + w;
        for (auto& r : poles_) {
            Complex d = (anchor - r.at) + w;
            if (std::abs(d) <= poleRelTol * std::max(1.0, std::abs(r.at)))
                throw Error(ErrorKind::PoleProximity, "evaluation at a pole");
            for (int k = 0; k < r.multiplicity; ++k) v /= d;
        }
        return v;
    }

    Complex derivative(Complex z, double poleRelTol = 1e-12) const
    {
        check_pole(z, poleRelTol);
        Complex d = den_(z);
        return (num_.derivative()(z) * d - num_(z) * den_.derivative()(z)) / (d * d);
    }

    void check_pole(Complex z, double poleRelTol) const
    {
        for (auto& p : poles_)
            if (std::abs(z - p.at) <= poleRelTol * std::max(1.0, std::abs(p.at)))
                throw Error(ErrorKind::PoleProximity, "evaluation at a pole");
    }

    // odd-order zeros and poles: where a square root of this function branches
    std::vector<Complex> odd_points() const
    {
        std::vector<Complex> out;
        for (auto& r : zeros_)
            if (r.multiplicity % 2) out.push_back(r.at);
        for (auto& r : poles_)
            if (r.multiplicity % 2) out.push_back(r.at);
        return out;
    }

    friend RationalFn operator*(const RationalFn& a, const RationalFn& b)
    {
        if (a.num_.is_zero() || b.num_.is_zero()) return RationalFn(Polynomial(), Polynomial::constant(1));
        std::vector<Root> z = a.zeros_, p = a.poles_;
        z.insert(z.end(), b.zeros_.begin(), b.zeros_.end());
        p.insert(p.end(), b.poles_.begin(), b.poles_.end());
        return from_factors(a.scale_ * b.scale_, std::move(z), std::move(p));
    }

private:
    static void merge(std::vector<Root>& v)
    {
        std::vector<Root> out;
        for (auto& r : v) {
            auto it = std::find_if(out.begin(), out.end(), [&](const Root& q) {
                return std::abs(q.at - r.at) <= 1e-12 * std::max(1.0, std::abs(q.at));
            });
            if (it == out.end())
                out.push_back(r);
            else
                it->multiplicity += r.multiplicity;
        }
        v = std::move(out);
    }

    // cancels common roots and rebuilds the polynomials; returns whether anything cancelled
    bool reduce()
    {
        merge(zeros_);
        merge(poles_);
        bool cancelled = false;
        for (auto& zr : zeros_) {
            for (auto& pr : poles_) {
                if (zr.multiplicity == 0 || pr.multiplicity == 0) continue;
                if (std::abs(zr.at - pr.at) <= 1e-9 * std::max(1.0, std::abs(zr.at))) {
                    int k = std::min(zr.multiplicity, pr.multiplicity);
                    zr.multiplicity -= k;
                    pr.multiplicity -= k;
                    cancelled = true;
                }
            }
        }
        auto drop = [](std::vector<Root>& v) {
            v.erase(std::remove_if(v.begin(), v.end(), [](const Root& r) { return r.multiplicity == 0; }), v.end());
        };
        drop(zeros_);
        drop(poles_);
        std::vector<std::pair<Complex, int>> zz, pp;
        for (auto& r : zeros_) zz.emplace_back(r.at, r.multiplicity);
        for (auto& r : poles_) pp.emplace_back(r.at, r.multiplicity);
        num_ = Polynomial::from_roots(scale_, zz);
        den_ = Polynomial::from_roots(1, pp);
        return cancelled;
    }

    Polynomial num_, den_;
    Complex scale_ = 1;
    std::vector<Root> zeros_, poles_;
};

struct BranchState {
    Complex at;
    Complex g;
};

struct PathPolyline {
    std::vector<Complex> waypoints;
    double keepAwayRadius = 0;
    std::vector<Complex> exclusions;
    // an endpoint sitting exactly on an exclusion: integrable algebraic singularity
    bool singularStart = false;
    bool singularEnd = false;

    std::size_t segments() const { return waypoints.empty() ? 0 : waypoints.size() - 1; }
};

inline double point_segment_distance(Complex p, Complex a, Complex b)
{
    Complex d = b - a;
    double len2 = std::norm(d);
    double t = len2 > 0 ? std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + t * d));
}

// Builds a path with the default keep-away radius and validates it.  With allowSingularEnds,
// an endpoint coinciding with an exclusion is flagged instead of rejected.
inline PathPolyline make_path(std::vector<Complex> waypoints, std::vector<Complex> exclusions,
                              const NumericConfig& cfg, bool allowSingularEnds = false, double keepAway = -1)
{
    if (waypoints.empty()) throw Error(ErrorKind::InvalidPath, "path needs at least one waypoint");
    PathPolyline p;
    double diam = 0;
    for (auto& a : waypoints)
        for (auto& b : waypoints) diam = std::max(diam, std::abs(a - b));
    p.keepAwayRadius = keepAway > 0 ? keepAway : std::max(cfg.keepAwayFactor * diam, 1e-300);
    auto on = [&](Complex a, Complex e) { return std::abs(a - e) <= 1e-13 * std::max(1.0, std::abs(e)); };
    for (auto& e : exclusions) {
        if (allowSingularEnds && on(waypoints.front(), e)) p.singularStart = true;
        if (allowSingularEnds && on(waypoints.back(), e)) p.singularEnd = true;
    }
    p.waypoints = std::move(waypoints);
    p.exclusions = std::move(exclusions);
    for (std::size_t k = 0; k + 1 < p.waypoints.size(); ++k) {
        Complex a = p.waypoints[k], b = p.waypoints[k + 1];
        if (a == b) throw Error(ErrorKind::InvalidPath, "consecutive waypoints coincide");
        for (auto& e : p.exclusions) {
            bool exempt = (k == 0 && p.singularStart && on(a, e)) ||
                          (k + 2 == p.waypoints.size() && p.singularEnd && on(b, e));
            if (exempt) continue;
            if (point_segment_distance(e, a, b) < p.keepAwayRadius)
                throw Error(ErrorKind::InvalidPath, "segment passes within keep-away radius of a singular point");
        }
    }
    return p;
}

namespace detail {

inline double magnitude(Complex z) { return std::abs(z); }
inline double magnitude(const CVec3& v) { return v.norm(); }

template <class T>
T zero_value()
{
    if constexpr (std::is_same_v<T, Complex>)
        return Complex(0);
    else
        return T::Zero();
}

// picks the square root of f closer to prev; nullopt when the continuity certificate fails
// (the step turns g by more than the allowed angle, whose cosine is minCos)
inline std::optional<Complex> next_root(Complex f, Complex prev, double minCos)
{
    Complex r = std::sqrt(f);
    if (std::abs(r - prev) > std::abs(r + prev)) r = -r;
    double c = (r * std::conj(prev)).real();
    if (!(c > minCos * std::abs(r) * std::abs(prev))) return std::nullopt;
    return r;
}

// Gauss-Kronrod 7/15 on [-1, 1], nodes in ascending order
struct GK15 {
    std::array<double, 15> x{}, wk{}, wg{};
    GK15()
    {
        const double xg[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                              0.207784955007898467600689403773245, 0.0};
        const double k[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        const double g[8] = {0, 0.129484966168869693270611432679082, 0, 0.279705391489276667901467771423780,
                             0, 0.381830050505118944950369775488975, 0, 0.417959183673469387755102040816327};
        for (int i = 0; i < 8; ++i) {
            x[i] = -xg[i];
            wk[i] = k[i];
            wg[i] = g[i];
            x[14 - i] = xg[i];
            wk[14 - i] = k[i];
            wg[14 - i] = g[i];
        }
    }
};

inline const GK15& gk15()
{
    static const GK15 rule;
    return rule;
}

} // namespace detail

// Analytic continuation of sqrt(gSquared) along the path, bisecting until every step
// satisfies the continuity certificate.
inline std::vector<BranchState> continue_sqrt(const RationalFn& gSquared, const PathPolyline& path,
                                              const BranchState& seed, const NumericConfig& cfg)
{
    if (path.waypoints.empty() || std::abs(path.waypoints.front() - seed.at) > 1e-12 * std::max(1.0, std::abs(seed.at)))
        throw Error(ErrorKind::InvalidPath, "seed is not at the first waypoint");
    std::vector<BranchState> out{seed};
    Complex g = seed.g;
    for (std::size_t s = 0; s < path.segments(); ++s) {
        Complex a = path.waypoints[s], b = path.waypoints[s + 1];
        struct Item {
            double t0, t1;
            int depth;
        };
        std::vector<Item> stack;
        const int n = std::max(1, cfg.branchSamples);
        for (int k = n; k-- > 0;) stack.push_back({double(k) / n, double(k + 1) / n, 0});
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            Complex z = a + (b - a) * it.t1;
            auto r = detail::next_root(gSquared(z, cfg.poleRelTol), g, std::cos(cfg.branchMaxTurn));
            if (r) {
                g = *r;
                out.push_back({z, g});
                continue;
            }
            if (it.depth >= cfg.branchMaxDepth)
                throw Error(ErrorKind::BranchAmbiguity, "continuity certificate fails near a branch point");
            double tm = 0.5 * (it.t0 + it.t1);
            stack.push_back({tm, it.t1, it.depth + 1});
            stack.push_back({it.t0, tm, it.depth + 1});
        }
    }
    return out;
}

template <class T>
struct Integral {
    T value;
    BranchState end;
    bool endSingular = false;
    double errorEstimate = 0;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod integration of form(z, g) dz along the path, threading the branch of
// g = sqrt(gSquared) from the seed.  Segments ending on a flagged singular endpoint are
// reparametrized by a smoothstep so square-root singularities become smooth.
template <class Form>
auto integrate_form(const Form& form, const RationalFn& gSquared, const PathPolyline& path,
                    const BranchState& seed, const NumericConfig& cfg)
{
    using T = std::decay_t<decltype(form(Complex{}, Complex{}))>;
    if (!(cfg.quadTol > 0)) throw Error(ErrorKind::InvariantViolation, "tolerance must be positive");
    Integral<T> res{detail::zero_value<T>(), seed, false, 0, 0};
    const std::size_t nseg = path.segments();
    if (nseg == 0) return res;
    const auto& rule = detail::gk15();
    Complex g = seed.g;
    const double ratio = std::cos(cfg.branchMaxTurn);

    for (std::size_t s = 0; s < nseg; ++s) {
        const Complex a = path.waypoints[s], b = path.waypoints[s + 1];
        const bool sing = (s == 0 && path.singularStart) || (s + 1 == nseg && path.singularEnd);
        const bool singEnd = s + 1 == nseg && path.singularEnd;
        // smoothstep on singular segments; g^2 is always evaluated from the offset to the nearer
        // endpoint so the square root keeps full relative accuracy next to a branch point
        struct Node {
            Complex z, dz, f;
        };
        auto zmap = [&](double t) -> Node {
            if (!sing) {
                if (t < 0.5) {
                    Complex w = (b - a) * t;
                    return {a + w, b - a, gSquared.eval_offset(a, w, cfg.poleRelTol)};
                }
                Complex w = (a - b) * (1 - t);
                return {b + w, b - a, gSquared.eval_offset(b, w, cfg.poleRelTol)};
            }
            Complex dz = (b - a) * (6 * t * (1 - t));
            if (t < 0.5) {
                Complex w = (b - a) * (t * t * (3 - 2 * t));
                return {a + w, dz, gSquared.eval_offset(a, w, cfg.poleRelTol)};
            }
            double u = 1 - t;
            Complex w = (a - b) * (u * u * (1 + 2 * t));
            return {b + w, dz, gSquared.eval_offset(b, w, cfg.poleRelTol)};
        };
        struct Item {
            double t0, t1;
            int depth;
        };
        std::vector<Item> stack{{0.0, 1.0, 0}};
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            const double half = 0.5 * (it.t1 - it.t0), mid = 0.5 * (it.t1 + it.t0);
            bool ok = true;
            std::array<Complex, 15> gs;
            std::array<T, 15> vals;
            Complex prev = g;
            for (int k = 0; k < 15 && ok; ++k) {
                Node nd = zmap(mid + half * rule.x[k]);
                auto r = detail::next_root(nd.f, prev, ratio);
                if (!r) {
                    ok = false;
                    break;
                }
                prev = gs[k] = *r;
                vals[k] = form(nd.z, gs[k]) * nd.dz;
            }
            Complex gEnd = prev;
            bool endIsSingular = false;
            if (ok) {
                if (singEnd && it.t1 == 1.0) {
                    bool pole = false;
                    for (auto& p : gSquared.poles())
                        if (std::abs(p.at - b) <= 1e-12 * std::max(1.0, std::abs(b))) pole = true;
                    gEnd = pole ? prev : Complex(0);
                    endIsSingular = true;
                } else {
                    auto r = detail::next_root(zmap(it.t1).f, prev, ratio);
                    if (!r)
                        ok = false;
                    else
                        gEnd = *r;
                }
            }
            T kr = detail::zero_value<T>(), ga = detail::zero_value<T>();
            double err = 0, absK = 0;
            if (ok) {
                for (int k = 0; k < 15; ++k) {
                    kr += vals[k] * rule.wk[k];
                    absK += detail::magnitude(vals[k]) * rule.wk[k];
                    if (rule.wg[k] != 0) ga += vals[k] * rule.wg[k];
                }
                kr *= half;
                ga *= half;
                absK *= std::abs(half);
                err = detail::magnitude(T(kr - ga));
                res.evaluations += 15;
            }
            const double localTol = cfg.quadTol * (it.t1 - it.t0) / double(nseg);
            // roundoff floor: the rule cannot resolve below a few ulps of the integrand's size
            if (ok && (err <= localTol || err <= 1e-14 * absK)) {
                res.value += kr;
                res.errorEstimate += err;
                g = gEnd;
                res.endSingular = endIsSingular;
                continue;
            }
            if (it.depth >= cfg.quadMaxDepth) {
                if (!ok) throw Error(ErrorKind::BranchAmbiguity, "branch continuation failed during quadrature");
                throw Error(ErrorKind::NoConvergence, "quadrature refinement depth exceeded");
            }
            stack.push_back({mid, it.t1, it.depth + 1});
            stack.push_back({it.t0, mid, it.depth + 1});
        }
    }
    res.end = {path.waypoints.back(), g};
    return res;
}

// Integration with no branch dependence (form ignores g).
template <class Form>
auto integrate_plain(const Form& form, const PathPolyline& path, const NumericConfig& cfg)
{
    auto wrapped = [&](Complex z, Complex) { return form(z); };
    return integrate_form(wrapped, RationalFn::constant(1), path, {path.waypoints.front(), 1}, cfg);
}

} // namespace msurf
