#include "w123/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "w123/errors.hpp"

namespace w123::analytic {

namespace {

constexpr double kLo = DomainConstants::beta_lo;
constexpr double kHi = DomainConstants::beta_hi;
constexpr double kMid = DomainConstants::beta_mid;

void require_in(double x, double lo, double hi, const char* what) {
    if (!(x >= lo && x <= hi)) {
        throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

// r without the domain check, for use inside quadrature.
double r_unchecked(double x, const RBreakpoints& bp) {
    const double L = log_ratio();
    const double base = (x - 1.0) / 2.0;
    if (x < bp.a1) return base;
    if (x <= bp.a2) return base - std::log(kHi / (1.0 + 2.0 * std::log(kHi / x) / L)) / L;
    return base - std::log(kHi / kMid) / L;
}

double simpson(double lo, double hi, std::size_t panels, const RBreakpoints& bp) {
    if (hi <= lo) return 0.0;
    panels = std::max<std::size_t>(panels, 1);
    const double h = (hi - lo) / static_cast<double>(panels);
    const double L = log_ratio();
    auto f = [&](double x) { return r_unchecked(x, bp) / (L * x); };
    double acc = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = lo + h * static_cast<double>(i);
        const double b = (i + 1 == panels) ? hi : a + h;
        acc += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc;
}

}  // namespace

double log_ratio() {
    static const double value = std::log(kHi / kLo);
    return value;
}

double density_g(double x) {
    require_in(x, kLo, kHi, "density_g");
    return 1.0 / (log_ratio() * x);
}

double cdf_x(double x) {
    if (x <= kLo) return 0.0;
    if (x >= kHi) return 1.0;
    return std::log(x / kLo) / log_ratio();
}

double x_from_uniform(double t) {
    require_in(t, 0.0, 1.0, "x_from_uniform");
    if (t == 1.0) return kHi;
    return std::min(kHi, kLo * std::pow(kHi / kLo, t));
}

RBreakpoints breakpoints() {
    const double ratio = kHi / kLo;
    return {kHi / std::pow(ratio, 0.95), kHi / std::pow(ratio, 0.45)};
}

RBreakpoints breakpoints_extended_check() {
    const long double ratio = 2.9L / 1.1L;
    return {static_cast<double>(2.9L / std::pow(ratio, 0.95L)),
            static_cast<double>(2.9L / std::pow(ratio, 0.45L))};
}

double r_value(double x) {
    require_in(x, kLo, kMid, "r_value");
    return r_unchecked(x, breakpoints());
}

double high_threshold(double x_hi) {
    return kHi / std::pow(kHi / kLo, (x_hi - 1.0) / 2.0);
}

DBar dbar_closed_form() {
    const double L = log_ratio();
    const double q = std::log(kHi / kMid) / L;
    return {(q + 0.5) * (q + 0.5) - 0.1 / L - 0.75};
}

long double dbar_closed_form_extended() {
    const long double L = std::log(2.9L / 1.1L);
    const long double q = std::log(2.9L / 1.9L) / L;
    return (q + 0.5L) * (q + 0.5L) - 0.1L / L - 0.75L;
}

double integrate_rg(double lo, double hi, std::size_t subintervals) {
    require_in(lo, kLo, kMid, "integrate_rg");
    require_in(hi, kLo, kMid, "integrate_rg");
    const RBreakpoints bp = breakpoints();
    double cuts[4] = {lo, std::clamp(bp.a1, lo, hi), std::clamp(bp.a2, lo, hi), hi};
    const double total = hi - lo;
    if (total <= 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) continue;
        const auto panels = static_cast<std::size_t>(
            std::max(1.0, std::round(static_cast<double>(subintervals) * len / total)));
        acc += simpson(cuts[i], cuts[i + 1], panels, bp);
    }
    return acc;
}

double dbar_quadrature(std::size_t subintervals) {
    if (subintervals < 1) throw InvalidArgument("dbar_quadrature: need at least one subinterval");
    return integrate_rg(kLo, kMid, subintervals);
}

int inner_edge_weight(double x_a, double x_b, double x_edge) {
    const double lo = std::min(x_a, x_b);
    const double hi = std::max(x_a, x_b);
    if (hi >= kMid) return lo >= high_threshold(hi) ? 3 : 1;
    static const double dbar = dbar_closed_form().value;
    const RBreakpoints bp = breakpoints();
    return x_edge <= r_unchecked(lo, bp) * r_unchecked(hi, bp) / dbar ? 3 : 1;
}

double weight3_probability(double alpha) {
    require_in(alpha, kLo, kHi, "weight3_probability");
    const double L = log_ratio();
    // Pr(X_u >= t) for the density g.
    auto tail = [L](double t) { return t >= kHi ? 0.0 : std::log(kHi / std::max(t, kLo)) / L; };

    if (alpha >= kMid) return tail(high_threshold(alpha));

    // X_u < 1.9: both ends below 1.9, weight 3 with probability r(X_u) r(alpha) / d-bar.
    static const double rg_integral = dbar_quadrature(20000);
    const double low_part = r_value(alpha) * rg_integral / dbar_closed_form().value;

    // X_u >= 1.9: weight 3 iff alpha >= threshold(X_u), i.e. X_u >= y(alpha).
    const RBreakpoints bp = breakpoints();
    double high_part = 0.0;
    if (alpha > bp.a2) {
        high_part = tail(kMid);
    } else if (alpha >= bp.a1) {
        high_part = tail(1.0 + 2.0 * std::log(kHi / alpha) / L);
    }
    return high_part + low_part;
}

}  // namespace w123::analytic
