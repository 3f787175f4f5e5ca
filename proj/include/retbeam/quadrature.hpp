#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace retbeam {

// =============================================================================
// Gauss-Legendre rules
// =============================================================================

/// Nodes and weights of a quadrature rule on some interval.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// q-point Gauss-Legendre rule on [-1,1]. Nodes are found by Newton iteration
/// on the Legendre polynomial from the Chebyshev initial guess; the process is
/// deterministic, so repeated calls are bit-identical.
inline QuadRule gauss_legendre_reference(int q) {
    if (q < 1 || q > 64) {
        throw std::invalid_argument("gauss_legendre_reference: order out of range");
    }
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(q) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < q; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(q) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing step, then stop
                p0 = 1.0;
                p1 = x;
                for (int k = 1; k < q; ++k) {
                    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                dp = static_cast<double>(q) * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        rule.nodes[static_cast<std::size_t>(q - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(q - 1 - i)] =
            2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

/// Append the q-point Gauss-Legendre rule mapped onto [a,b].
inline void append_gauss_panel(double a, double b, const QuadRule& ref,
                               std::vector<double>& nodes,
                               std::vector<double>& weights) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        nodes.push_back(mid + half * ref.nodes[i]);
        weights.push_back(half * ref.weights[i]);
    }
}

// =============================================================================
// Composite Simpson on uniform node data
// =============================================================================

/// Composite Simpson over uniformly spaced samples (spacing h). Handles an odd
/// interval count with one closing Newton 3/8 panel.
inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]); // single interval: trapezoid
    std::size_t intervals = n - 1;
    double total = 0.0;
    std::size_t last = intervals;
    if (intervals % 2 != 0) {
        // close with 3/8 on the final three intervals
        last = intervals - 3;
        const std::size_t k = last;
        total += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    }
    for (std::size_t i = 0; i + 2 <= last; i += 2) {
        total += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
    return total;
}

/// Cumulative Simpson antiderivative on uniform samples: out[i] approximates
/// the integral from the first node to node i. Odd-index nodes use the
/// third-order (5,8,-1)/12 half-panel rule so every node gets a value.
inline std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 0) {
            out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else if (i + 1 < n) {
            out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        } else {
            // final node of an even-length sample set (odd interval count)
            out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
        }
    }
    return out;
}

// =============================================================================
// Quadrature configuration for the integral operator
// =============================================================================

/// Composite Gauss-Legendre layout parameters. `panels` counts panels per unit
/// length of smooth piece (a full-length piece gets `panels` of them, a piece
/// of length L gets ceil(panels*L), never fewer than one); `nodes_per_panel`
/// is the Gauss order inside each panel.
struct QuadratureSpec {
    int panels = 256;
    int nodes_per_panel = 8;

    void validate() const {
        if (panels < 8) {
            throw std::invalid_argument("QuadratureSpec: panels must be >= 8");
        }
        if (nodes_per_panel < 4 || nodes_per_panel > 16) {
            throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be in [4,16]");
        }
    }
};

/// Composite Gauss-Legendre rule on [a,b] subdivided into max(1,ceil(panels*(b-a)))
/// uniform panels.
inline void append_composite_gauss(double a, double b, const QuadratureSpec& quad,
                                   const QuadRule& ref, std::vector<double>& nodes,
                                   std::vector<double>& weights) {
    if (b <= a) return;
    const double len = b - a;
    int p = static_cast<int>(std::ceil(static_cast<double>(quad.panels) * len - 1e-12));
    if (p < 1) p = 1;
    for (int i = 0; i < p; ++i) {
        const double lo = a + len * static_cast<double>(i) / static_cast<double>(p);
        const double hi = a + len * static_cast<double>(i + 1) / static_cast<double>(p);
        append_gauss_panel(lo, hi, ref, nodes, weights);
    }
}

} // namespace retbeam
