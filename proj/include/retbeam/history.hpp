#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "retbeam/grid_function.hpp"

namespace retbeam {

// =============================================================================
// History datum psi and state views u_t
// =============================================================================

/// Analytic history datum on [-r,0]: psi(t,d) returns the d-th derivative,
/// d in {0,1,2}. Kept analytic (not sampled) because delayed arguments land at
/// arbitrary off-grid points of [-r,0].
struct HistoryDatum {
    double r = 0.5;
    std::function<double(double, int)> psi;

    /// psi >= 0 on [-r,0] (sampled check) and psi'(0), psi''(0) >= 0.
    void validate() const {
        if (!(r > 0.0)) throw std::invalid_argument("HistoryDatum: r must be > 0");
        if (!psi) throw std::invalid_argument("HistoryDatum: psi callable missing");
        constexpr int samples = 256;
        for (int i = 0; i <= samples; ++i) {
            const double t = -r + r * static_cast<double>(i) / samples;
            if (psi(t, 0) < -1e-12) {
                throw std::invalid_argument("HistoryDatum: psi must be nonnegative on [-r,0]");
            }
        }
        if (psi(0.0, 1) < -1e-12 || psi(0.0, 2) < -1e-12) {
            throw std::invalid_argument("HistoryDatum: psi'(0) and psi''(0) must be nonnegative");
        }
    }
};

/// Read-only window u_t: theta in [-r,0] maps to u(t+theta) and derivatives,
/// delegating to psi when t+theta <= 0 and to grid interpolation otherwise.
class HistoryView {
public:
    HistoryView(const GridFunction& g, const HistoryDatum& psi, double t)
        : g_(&g), psi_(&psi), t_(t) {}

    [[nodiscard]] double operator()(double theta, int d = 0) const {
        if (theta < -psi_->r - 1e-12 || theta > 1e-12) {
            throw std::domain_error("HistoryView: theta outside [-r,0]");
        }
        const double tau = t_ + theta;
        if (tau <= 0.0) return psi_->psi(tau, d);
        return gf_eval(*g_, tau, d);
    }

    [[nodiscard]] double base_time() const noexcept { return t_; }
    [[nodiscard]] double horizon() const noexcept { return psi_->r; }

private:
    const GridFunction* g_;
    const HistoryDatum* psi_;
    double t_;
};

/// The state u_t at base time t in [0,1].
[[nodiscard]] inline HistoryView state_view(const GridFunction& g, const HistoryDatum& psi,
                                            double t) {
    if (t < -1e-12 || t > 1.0 + 1e-12) {
        throw std::invalid_argument("state_view: base time must lie in [0,1]");
    }
    return HistoryView(g, psi, t);
}

} // namespace retbeam
