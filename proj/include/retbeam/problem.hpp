#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "retbeam/bc.hpp"
#include "retbeam/grid_function.hpp"
#include "retbeam/history.hpp"
#include "retbeam/quadrature.hpp"

namespace retbeam {

/// Raised when a runtime contract of the problem data fails (negative or
/// non-finite right-hand side or boundary functional value).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// =============================================================================
// Right-hand side F
// =============================================================================

/// The six-argument reduction with fixed lags: F(t, phi) =
/// f(t, phi(0), phi'(0), phi''(0), phi(-r0), phi'(-r1), phi''(-r2)).
struct DdeForm {
    std::function<double(double, double, double, double, double, double, double)> f;
    double r0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Right-hand side of u'''' + lambda F(t, u_t) = 0. Either a generic
/// functional of the state window or the DDE reduction above. `breakpoints`
/// lists s-locations in (0,1) where a delayed argument crosses the
/// history/main seam (the integrand loses smoothness there); `delta_lower` is
/// an optional declared bound delta_rho(t) <= F(t, phi) on the cone ball.
struct RightHandSide {
    std::function<double(double, const HistoryView&)> F;
    std::optional<DdeForm> dde;
    std::vector<double> breakpoints;
    std::function<double(double, double)> delta_lower; // (rho, t) -> bound

    [[nodiscard]] static RightHandSide generic(
        std::function<double(double, const HistoryView&)> fn,
        std::vector<double> breaks = {}) {
        RightHandSide rhs;
        rhs.F = std::move(fn);
        rhs.breakpoints = std::move(breaks);
        return rhs;
    }

    [[nodiscard]] static RightHandSide from_dde(DdeForm form) {
        if (!(form.r0 > 0.0) || !(form.r1 > 0.0) || !(form.r2 > 0.0)) {
            throw std::invalid_argument("RightHandSide: delays must be positive");
        }
        RightHandSide rhs;
        rhs.breakpoints = {form.r0, form.r1, form.r2};
        auto f = form.f;
        const double r0 = form.r0, r1 = form.r1, r2 = form.r2;
        rhs.F = [f, r0, r1, r2](double t, const HistoryView& phi) {
            return f(t, phi(0.0, 0), phi(0.0, 1), phi(0.0, 2),
                     phi(-r0, 0), phi(-r1, 1), phi(-r2, 2));
        };
        rhs.dde = std::move(form);
        return rhs;
    }
};

// =============================================================================
// Boundary functional B
// =============================================================================

/// Functional B[u] of the whole solution (and, through the grid's history
/// tracks, of the datum psi). `eta_lower` optionally declares the bound
/// eta_rho <= B[u] on the boundary sphere of radius rho.
struct BoundaryFunctional {
    std::function<double(const GridFunction&, const HistoryDatum&)> B;
    std::function<double(double)> eta_lower; // rho -> bound
};

// =============================================================================
// Problem specification
// =============================================================================

/// A full functional boundary value problem: BC kind, history datum, right-
/// hand side and boundary functional.
struct ProblemSpec {
    BcKind bc{3};
    HistoryDatum psi;
    RightHandSide rhs;
    BoundaryFunctional b;
    std::string label;

    void validate() const {
        psi.validate();
        if (!rhs.F) throw std::invalid_argument("ProblemSpec: right-hand side missing");
        if (!b.B) throw std::invalid_argument("ProblemSpec: boundary functional missing");
        if (rhs.dde) {
            const double max_delay = std::max({rhs.dde->r0, rhs.dde->r1, rhs.dde->r2});
            if (max_delay > psi.r + 1e-12) {
                throw std::invalid_argument("ProblemSpec: history horizon r smaller than a delay");
            }
        }
        for (const double bp : rhs.breakpoints) {
            if (bp > psi.r + 1e-12) {
                throw std::invalid_argument("ProblemSpec: breakpoint beyond history horizon");
            }
        }
    }
};

// =============================================================================
// Evaluation
// =============================================================================

/// F(t, u_t). Negative or non-finite values violate the standing sign
/// hypothesis and raise InvariantViolation naming t.
[[nodiscard]] inline double eval_rhs(const ProblemSpec& spec, const GridFunction& u, double t) {
    const HistoryView view = state_view(u, spec.psi, t);
    const double value = spec.rhs.F(t, view);
    if (!(value >= 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "right-hand side returned " << value << " at t = " << t
            << "; F must map into [0,inf)";
        throw InvariantViolation(msg.str());
    }
    return value;
}

/// B[u]. Negative or non-finite values raise InvariantViolation.
[[nodiscard]] inline double eval_boundary_functional(const ProblemSpec& spec,
                                                     const GridFunction& u) {
    const double value = spec.b.B(u, spec.psi);
    if (!(value >= 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "boundary functional returned " << value << "; B must map into [0,inf)";
        throw InvariantViolation(msg.str());
    }
    return value;
}

// =============================================================================
// Preset registry
// =============================================================================

namespace detail {

/// Simpson integral of t^3 * (u''(t))^2 over [-1/2,1], split at the seam
/// t = 0. The lower limit is the first grid node at or above -1/2 (the grid
/// may extend further left under an enlarged horizon).
inline double weighted_curvature_integral(const GridFunction& u) {
    const std::size_t z = u.index_of_zero();
    std::size_t lo = 0;
    while (lo < z && u.node(lo) < -0.5 - 1e-12) ++lo;
    std::vector<double> hist(z - lo + 1), main(u.size() - z);
    for (std::size_t i = lo; i <= z; ++i) {
        const double t = u.node(i);
        hist[i - lo] = t * t * t * u.d2[i] * u.d2[i];
    }
    for (std::size_t i = z; i < u.size(); ++i) {
        const double t = u.node(i);
        main[i - z] = t * t * t * u.d2[i] * u.d2[i];
    }
    return simpson(hist, u.h()) + simpson(main, u.h());
}

inline double param(const nlohmann::json& params, const std::string& key, double fallback) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_number()) {
        throw std::invalid_argument("preset parameter '" + key + "' must be a number");
    }
    return params[key].get<double>();
}

} // namespace detail

/// Names accepted by make_preset.
[[nodiscard]] inline std::vector<std::string> preset_names() {
    return {"constant", "polyforce", "example41"};
}

/// Build a named preset problem.
///
///  - "constant":  F = c_F, B = c_B, psi = 0 — the closed-form test problem.
///      params: c_F (1), c_B (1), j (3), r (0.5)
///  - "polyforce": F(t, .) = p(t) independent of the state, B = c_B, psi = 0.
///      params: coeffs (array, default [1]), c_B (1), j (3), r (0.5)
///  - "example41": the three-lag problem with F(t,phi) =
///      t exp(phi(0) + phi''(-1/3)^2) (1 + phi'(0)^2 + phi(-1/2)^2 + phi''(-1/4)^2),
///      psi(t) = 1 - cos t on [-1/2,0] and
///      B[u] = 1/(1 + u(1/2)^2) + integral of t^3 u''(t)^2 over [-1/2,1].
///      params: j (3)
[[nodiscard]] inline ProblemSpec make_preset(const std::string& name,
                                             const nlohmann::json& params = nlohmann::json::object()) {
    ProblemSpec spec;
    spec.label = name;

    if (name == "constant") {
        const double c_f = detail::param(params, "c_F", 1.0);
        const double c_b = detail::param(params, "c_B", 1.0);
        const double r = detail::param(params, "r", 0.5);
        const int j = static_cast<int>(detail::param(params, "j", 3.0));
        if (c_f < 0.0 || c_b < 0.0) {
            throw std::invalid_argument("constant preset: c_F and c_B must be nonnegative");
        }
        spec.bc = BcKind(j);
        spec.psi = HistoryDatum{r, [](double, int) { return 0.0; }};
        spec.rhs = RightHandSide::generic([c_f](double, const HistoryView&) { return c_f; });
        spec.rhs.delta_lower = [c_f](double, double) { return c_f; };
        spec.b.B = [c_b](const GridFunction&, const HistoryDatum&) { return c_b; };
        spec.b.eta_lower = [c_b](double) { return c_b; };
        spec.validate();
        return spec;
    }

    if (name == "polyforce") {
        std::vector<double> coeffs{1.0};
        if (params.contains("coeffs")) {
            if (!params["coeffs"].is_array()) {
                throw std::invalid_argument("polyforce preset: coeffs must be an array");
            }
            coeffs = params["coeffs"].get<std::vector<double>>();
            if (coeffs.empty()) coeffs = {0.0};
        }
        const double c_b = detail::param(params, "c_B", 1.0);
        const double r = detail::param(params, "r", 0.5);
        const int j = static_cast<int>(detail::param(params, "j", 3.0));
        if (c_b < 0.0) throw std::invalid_argument("polyforce preset: c_B must be nonnegative");
        auto poly = [coeffs](double t) {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
            return acc;
        };
        for (int i = 0; i <= 1000; ++i) {
            if (poly(i / 1000.0) < 0.0) {
                throw std::invalid_argument("polyforce preset: p(t) must be nonnegative on [0,1]");
            }
        }
        spec.bc = BcKind(j);
        spec.psi = HistoryDatum{r, [](double, int) { return 0.0; }};
        spec.rhs = RightHandSide::generic([poly](double t, const HistoryView&) { return poly(t); });
        spec.rhs.delta_lower = [poly](double, double t) { return poly(t); };
        spec.b.B = [c_b](const GridFunction&, const HistoryDatum&) { return c_b; };
        spec.b.eta_lower = [c_b](double) { return c_b; };
        spec.validate();
        return spec;
    }

    if (name == "example41") {
        const int j = static_cast<int>(detail::param(params, "j", 3.0));
        spec.bc = BcKind(j);
        spec.psi = HistoryDatum{0.5, [](double t, int d) {
            switch (d) {
                case 0: return 1.0 - std::cos(t);
                case 1: return std::sin(t);
                default: return std::cos(t);
            }
        }};
        // F(t,phi) = t e^{phi(0) + phi''(-1/3)^2} (1 + phi'(0)^2 + phi(-1/2)^2 + phi''(-1/4)^2).
        // The second derivative enters at two distinct lags, so the generic
        // functional form is used rather than the six-argument reduction.
        spec.rhs = RightHandSide::generic(
            [](double t, const HistoryView& phi) {
                const double u0 = phi(0.0, 0);
                const double du0 = phi(0.0, 1);
                const double dd_third = phi(-1.0 / 3.0, 2);
                const double u_half = phi(-0.5, 0);
                const double dd_quarter = phi(-0.25, 2);
                return t * std::exp(u0 + dd_third * dd_third) *
                       (1.0 + du0 * du0 + u_half * u_half + dd_quarter * dd_quarter);
            },
            {0.25, 1.0 / 3.0, 0.5});
        spec.rhs.delta_lower = [](double, double t) { return t; };
        spec.b.B = [](const GridFunction& u, const HistoryDatum&) {
            const double mid = gf_eval(u, 0.5, 0);
            return 1.0 / (1.0 + mid * mid) + detail::weighted_curvature_integral(u);
        };
        spec.b.eta_lower = [](double rho) { return 1.0 / (1.0 + rho * rho); };
        spec.validate();
        return spec;
    }

    std::ostringstream msg;
    msg << "unknown preset '" << name << "'; available:";
    for (const auto& p : preset_names()) msg << ' ' << p;
    throw std::invalid_argument(msg.str());
}

} // namespace retbeam
