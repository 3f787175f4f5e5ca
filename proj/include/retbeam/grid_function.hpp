#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace retbeam {

/// Node range selector for norms: the [0,1] part only, or all of [-r,1].
enum class NormRange { main_only, history_and_main };

// =============================================================================
// GridFunction: a sampled C^2 function on [-r,1]
// =============================================================================

/// Uniform-grid representation of a C^2 function on [-r,1] with separate
/// value, first- and second-derivative tracks. The grid always carries a node
/// exactly at t = 0 (history/main seam) and uses the same spacing h = 1/n on
/// both sides; the history horizon is rounded up to a whole number of steps.
///
/// The three tracks are filled independently (from analytic data or from
/// analytically differentiated kernels), never by differencing each other.
class GridFunction {
public:
    /// Zero function on [-r,1]. `r_requested` is rounded up to a multiple of
    /// h = 1/n; `rounded()` reports whether that changed the horizon.
    GridFunction(double r_requested, int n) : n_(n) {
        if (n < 16) throw std::invalid_argument("GridFunction: n must be >= 16");
        if (!(r_requested > 0.0)) throw std::invalid_argument("GridFunction: r must be > 0");
        h_ = 1.0 / static_cast<double>(n);
        const double steps = r_requested * static_cast<double>(n);
        m_ = static_cast<int>(std::ceil(steps - 1e-9));
        if (m_ < 1) m_ = 1;
        rounded_ = std::abs(steps - static_cast<double>(m_)) > 1e-9;
        const std::size_t len = static_cast<std::size_t>(m_ + n_ + 1);
        vals.assign(len, 0.0);
        d1.assign(len, 0.0);
        d2.assign(len, 0.0);
    }

    /// Sample an analytic function f(t,d), d in {0,1,2}, into all three tracks.
    static GridFunction sample(double r, int n, const std::function<double(double, int)>& f) {
        GridFunction g(r, n);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double t = g.node(i);
            g.vals[i] = f(t, 0);
            g.d1[i] = f(t, 1);
            g.d2[i] = f(t, 2);
        }
        return g;
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] double r() const noexcept { return static_cast<double>(m_) * h_; }
    [[nodiscard]] bool rounded() const noexcept { return rounded_; }
    [[nodiscard]] std::size_t size() const noexcept { return vals.size(); }

    /// Node coordinate; index m() is t = 0, index m()+n() is t = 1.
    [[nodiscard]] double node(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(m_)) * h_;
    }
    [[nodiscard]] std::size_t index_of_zero() const noexcept {
        return static_cast<std::size_t>(m_);
    }

    [[nodiscard]] const std::vector<double>& track(int d) const {
        switch (d) {
            case 0: return vals;
            case 1: return d1;
            case 2: return d2;
            default: throw std::invalid_argument("GridFunction::track: d must be in {0,1,2}");
        }
    }
    [[nodiscard]] std::vector<double>& track(int d) {
        return const_cast<std::vector<double>&>(std::as_const(*this).track(d));
    }

    /// Grids share layout (same r, n) — required for arithmetic.
    [[nodiscard]] bool same_layout(const GridFunction& o) const noexcept {
        return n_ == o.n_ && m_ == o.m_;
    }

    std::vector<double> vals;
    std::vector<double> d1;
    std::vector<double> d2;

private:
    int n_ = 0;
    int m_ = 0;
    double h_ = 0.0;
    bool rounded_ = false;
};

// =============================================================================
// Arithmetic on matching grids
// =============================================================================

inline GridFunction gf_add(const GridFunction& a, const GridFunction& b) {
    if (!a.same_layout(b)) throw std::invalid_argument("gf_add: grid layouts differ");
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.vals[i] += b.vals[i];
        out.d1[i] += b.d1[i];
        out.d2[i] += b.d2[i];
    }
    return out;
}

inline GridFunction gf_sub(const GridFunction& a, const GridFunction& b) {
    if (!a.same_layout(b)) throw std::invalid_argument("gf_sub: grid layouts differ");
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.vals[i] -= b.vals[i];
        out.d1[i] -= b.d1[i];
        out.d2[i] -= b.d2[i];
    }
    return out;
}

inline GridFunction gf_scale(const GridFunction& a, double c) {
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.vals[i] *= c;
        out.d1[i] *= c;
        out.d2[i] *= c;
    }
    return out;
}

/// a + c*b, the mixing step of damped iterations.
inline GridFunction gf_axpy(const GridFunction& a, double c, const GridFunction& b) {
    if (!a.same_layout(b)) throw std::invalid_argument("gf_axpy: grid layouts differ");
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.vals[i] += c * b.vals[i];
        out.d1[i] += c * b.d1[i];
        out.d2[i] += c * b.d2[i];
    }
    return out;
}

// =============================================================================
// C^2 norm and evaluation
// =============================================================================

/// max over the selected node range of |u|, |u'|, |u''| — the C^2 norm of the
/// sampled representation.
[[nodiscard]] inline double c2_norm(const GridFunction& g, NormRange range) {
    const std::size_t lo = (range == NormRange::main_only) ? g.index_of_zero() : 0;
    double best = 0.0;
    for (std::size_t i = lo; i < g.size(); ++i) {
        best = std::max(best, std::abs(g.vals[i]));
        best = std::max(best, std::abs(g.d1[i]));
        best = std::max(best, std::abs(g.d2[i]));
    }
    return best;
}

namespace detail {

/// Cubic Hermite on [x0,x0+h] from endpoint values and endpoint derivatives.
inline double hermite(double x, double h, double v0, double v1, double m0, double m1) {
    const double u = x / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * v0 + (u3 - 2.0 * u2 + u) * h * m0 +
           (-2.0 * u3 + 3.0 * u2) * v1 + (u3 - u2) * h * m1;
}

} // namespace detail

/// Evaluate track d at an arbitrary point of [-r,1]. Nodes are exact array
/// lookups; between nodes the d=0 and d=1 tracks use cubic Hermite built from
/// the (d, d+1) arrays, and the d=2 track uses a cubic Lagrange fit through
/// the four nearest nodes (no third-derivative array exists).
[[nodiscard]] inline double gf_eval(const GridFunction& g, double t, int d) {
    if (d < 0 || d > 2) throw std::invalid_argument("gf_eval: d must be in {0,1,2}");
    const double lo = -g.r();
    const double hi = 1.0;
    const double fuzz = 1e-12;
    if (t < lo - fuzz || t > hi + fuzz) {
        throw std::domain_error("gf_eval: point outside [-r,1]");
    }
    t = std::clamp(t, lo, hi);
    const double h = g.h();
    const double pos = (t - lo) / h;
    const auto last = static_cast<double>(g.size() - 1);
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9 && nearest >= 0.0 && nearest <= last) {
        return g.track(d)[static_cast<std::size_t>(nearest)];
    }
    auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= g.size() - 1) k = g.size() - 2;
    const double x = t - g.node(k);

    if (d < 2) {
        const auto& v = g.track(d);
        const auto& m = g.track(d + 1);
        return detail::hermite(x, h, v[k], v[k + 1], m[k], m[k + 1]);
    }

    // 4-point Lagrange on the d2 track
    std::size_t j0 = (k == 0) ? 0 : k - 1;
    j0 = std::min(j0, g.size() - 4);
    double acc = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        double basis = 1.0;
        const double ta = g.node(j0 + a);
        for (std::size_t b = 0; b < 4; ++b) {
            if (b == a) continue;
            basis *= (t - g.node(j0 + b)) / (ta - g.node(j0 + b));
        }
        acc += basis * g.d2[j0 + a];
    }
    return acc;
}

// =============================================================================
// Cone diagnostics
// =============================================================================

/// Node-wise cone diagnostics for a shifted iterate w = u - psihat.
struct ConeReport {
    double min_value = 0.0;         ///< inf of w over all of [-r,1]
    double history_flatness = 0.0;  ///< max of |w|,|w'|,|w''| over [-r,0]
    bool member = false;            ///< min_value >= -tol and flatness <= tol
};

[[nodiscard]] inline ConeReport cone_check(const GridFunction& w, double tol) {
    ConeReport rep;
    rep.min_value = w.vals.empty() ? 0.0 : w.vals[0];
    for (const double v : w.vals) rep.min_value = std::min(rep.min_value, v);
    for (std::size_t i = 0; i <= w.index_of_zero(); ++i) {
        rep.history_flatness = std::max({rep.history_flatness, std::abs(w.vals[i]),
                                         std::abs(w.d1[i]), std::abs(w.d2[i])});
    }
    rep.member = rep.min_value >= -tol && rep.history_flatness <= tol;
    return rep;
}

} // namespace retbeam
