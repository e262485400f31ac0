#pragma once

#include <cmath>
#include <cstddef>

namespace w123::analytic {

// Support of X_v and the threshold between the two weighting regimes.
struct DomainConstants {
    static constexpr double beta_lo = 1.1;
    static constexpr double beta_hi = 2.9;
    static constexpr double beta_mid = 1.9;
};

// ln(2.9 / 1.1)
double log_ratio();

// 0 < a1 < a2 < 1.9
struct RBreakpoints {
    double a1;
    double a2;
};

struct DBar {
    double value;
};

// Density of X_v on [1.1, 2.9]: g(x) = 1 / (ln(2.9/1.1) x).
double density_g(double x);

// CDF of X_v: ln(x / 1.1) / ln(2.9 / 1.1), clamped to [0, 1] outside the support.
double cdf_x(double x);

// Inverse CDF: 1.1 * (2.9/1.1)^t for t in [0, 1].
double x_from_uniform(double t);

template <class URBG>
double sample_x(URBG& rng) {
    constexpr double scale = 0x1.0p-53;
    const double t = static_cast<double>(rng() >> 11) * scale;
    return x_from_uniform(t);
}

RBreakpoints breakpoints();

// Three-branch function on [1.1, 1.9]; the branch is picked against a1, a2.
double r_value(double x);

// X_u threshold when max(X_u, X_v) = x_hi >= 1.9: 2.9 / (2.9/1.1)^((x_hi-1)/2).
double high_threshold(double x_hi);

DBar dbar_closed_form();
long double dbar_closed_form_extended();
RBreakpoints breakpoints_extended_check();  // long double evaluation rounded to double

// Composite Simpson for the integral of r*g over [1.1, 1.9], split at a1 and a2.
double dbar_quadrature(std::size_t subintervals);

// Same rule restricted to [lo, hi] (a sub-range of [1.1, 1.9]), split at
// any breakpoint that falls inside.
double integrate_rg(double lo, double hi, std::size_t subintervals);

// Weight of an inner edge given the X values of its ends and its own X_e.
// The ends are ordered internally so that the larger X plays the role of X_v.
int inner_edge_weight(double x_a, double x_b, double x_edge);

// Pr(weight 3 | X_v = alpha), assembled from the four regimes of alpha
// (>= 1.9, (a2, 1.9), [a1, a2], [1.1, a1)). The part that depends on the
// edge variable integrates r*g numerically, so the identity
// (alpha - 1) / 2 is a genuine cross-check of the closed form of d-bar.
double weight3_probability(double alpha);

}  // namespace w123::analytic
