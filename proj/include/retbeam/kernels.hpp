#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "retbeam/bc.hpp"
#include "retbeam/quadrature.hpp"

namespace retbeam {

// =============================================================================
// Closed-form Green's kernels for -u'''' = y with clamped left end
// u(0)=u'(0)=u''(0)=0 and right-end condition u^(j)(1)=0, j in {0,1,2,3}.
//
// Every kernel has the form
//     k(t,s) = A_j(s) * t^3 - [s <= t] * (t-s)^3 / 6,
// with
//     A_0(s) = (1-s)^3/6,  A_1(s) = (1-s)^2/6,  A_2(s) = (1-s)/6,  A_3 = 1/6.
// k, dk/dt and d2k/dt2 are continuous across t = s; d3k/dt3 jumps by -1 there.
// =============================================================================

/// Which side of the diagonal t = s to evaluate. Lower means s <= t.
enum class KernelBranch { lower, upper, automatic };

/// One boundary-condition variant's Green's kernel and gamma basis cubics,
/// with analytic t-derivatives. All evaluations are exact piecewise
/// polynomials; no finite differencing happens here.
class KernelSet {
public:
    explicit KernelSet(BcKind bc) : bc_(bc) {
        // gamma_i solves u''''=0 with u^(p)(0) = [p==i] for p<3 and
        // u^(j)(1) = [i==3]; coefficients are in the monomial basis 1,t,t^2,t^3.
        // The j=1 gamma_3 cubic is t^3/3 (u'(1)=1 forces the leading 1/3) and
        // the j=2 upper kernel branch below is t^3(1-s)/6 (continuity at t=s
        // forces the linear factor); both follow from the defining problems.
        static constexpr double g[4][4][4] = {
            // j = 0
            {{1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 0.5, -0.5}, {0, 0, 0, 1}},
            // j = 1
            {{1, 0, 0, 0}, {0, 1, 0, -1.0 / 3.0}, {0, 0, 0.5, -1.0 / 3.0}, {0, 0, 0, 1.0 / 3.0}},
            // j = 2
            {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0.5, -1.0 / 6.0}, {0, 0, 0, 1.0 / 6.0}},
            // j = 3
            {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0.5, 0}, {0, 0, 0, 1.0 / 6.0}},
        };
        for (int i = 0; i < 4; ++i) {
            for (int c = 0; c < 4; ++c) {
                gamma_coef_[i][c] = g[bc.j()][i][c];
            }
        }
    }

    [[nodiscard]] BcKind bc() const noexcept { return bc_; }

    /// Kernel value or t-derivative of order d in {0,1,2,3}. Points exactly on
    /// the diagonal use the lower (s <= t) branch; both branches agree there
    /// for d <= 2, and a fixed tie-break keeps results reproducible.
    [[nodiscard]] double k(double t, double s, int d,
                           KernelBranch branch = KernelBranch::automatic) const {
        if (d < 0 || d > 3) {
            throw std::invalid_argument("KernelSet::k: derivative order must be in {0,1,2,3}");
        }
        const bool lower = (branch == KernelBranch::automatic) ? (s <= t)
                                                               : (branch == KernelBranch::lower);
        double v = coef_a(s) * t3_deriv(t, d);
        if (lower) {
            const double u = t - s;
            switch (d) {
                case 0: v -= u * u * u / 6.0; break;
                case 1: v -= 0.5 * u * u; break;
                case 2: v -= u; break;
                default: v -= 1.0; break;
            }
        }
        return v;
    }

    /// Gamma basis cubic i in {0,1,2,3}, t-derivative order d in {0,1,2,3}.
    [[nodiscard]] double gamma(int i, double t, int d) const {
        if (i < 0 || i > 3) {
            throw std::invalid_argument("KernelSet::gamma: index must be in {0,1,2,3}");
        }
        if (d < 0 || d > 3) {
            throw std::invalid_argument("KernelSet::gamma: derivative order must be in {0,1,2,3}");
        }
        const auto& c = gamma_coef_[i];
        switch (d) {
            case 0: return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
            case 1: return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
            case 2: return 2.0 * c[2] + 6.0 * c[3] * t;
            default: return 6.0 * c[3];
        }
    }

    /// Leading t^3 coefficient A_j(s) of the upper branch.
    [[nodiscard]] double coef_a(double s) const noexcept {
        const double w = 1.0 - s;
        switch (bc_.j()) {
            case 0: return w * w * w / 6.0;
            case 1: return w * w / 6.0;
            case 2: return w / 6.0;
            default: return 1.0 / 6.0;
        }
    }

private:
    static double t3_deriv(double t, int d) noexcept {
        switch (d) {
            case 0: return t * t * t;
            case 1: return 3.0 * t * t;
            case 2: return 6.0 * t;
            default: return 6.0;
        }
    }

    BcKind bc_;
    std::array<std::array<double, 4>, 4> gamma_coef_{};
};

[[nodiscard]] inline KernelSet make_kernel_set(BcKind bc) { return KernelSet(bc); }

// =============================================================================
// Kernel row integrals
// =============================================================================

/// Quadrature layout for one kernel row: [0,1] split at the diagonal seam t,
/// each side covered by composite Gauss-Legendre panels proportional to its
/// length (at least one per nonempty side).
inline QuadRule kernel_row_rule(double t, const QuadratureSpec& quad) {
    quad.validate();
    if (t < 0.0 || t > 1.0) {
        throw std::invalid_argument("kernel_row_rule: t must lie in [0,1]");
    }
    const QuadRule ref = gauss_legendre_reference(quad.nodes_per_panel);
    QuadRule rule;
    append_composite_gauss(0.0, t, quad, ref, rule.nodes, rule.weights);
    append_composite_gauss(t, 1.0, quad, ref, rule.nodes, rule.weights);
    return rule;
}

/// Integral over s of k(t,s,d) * forcing(s), the Hammerstein row at height t.
/// The forcing callable is sampled exactly at the rule's nodes.
[[nodiscard]] inline double kernel_row_integral(const KernelSet& ks, double t, int d,
                                                const std::function<double(double)>& forcing,
                                                const QuadratureSpec& quad) {
    if (d < 0 || d > 2) {
        throw std::invalid_argument("kernel_row_integral: d must be in {0,1,2}");
    }
    const QuadRule rule = kernel_row_rule(t, quad);
    double total = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = rule.nodes[q];
        total += rule.weights[q] * ks.k(t, s, d) * forcing(s);
    }
    return total;
}

} // namespace retbeam
