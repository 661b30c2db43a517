#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <algorithm>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "d2dmotif/errors.hpp"

namespace d2dmotif {

enum class SemiInfiniteMap {
    rational,     // t = a + c u / (1 - u)
    exponential,  // t = a - c log(1 - u)
};

/// Tolerances and budgets shared by every numerical integral.
struct QuadratureSpec {
    double relative_tolerance = 1e-6;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 200;
    SemiInfiniteMap semi_infinite_map = SemiInfiniteMap::rational;
    // Outer sample count and seed for the correlated chain outage estimator.
    long mc_samples = 100000;
    std::uint64_t mc_seed = 0x5eed;

    void validate() const {
        if (!(relative_tolerance > 0) || !(absolute_tolerance > 0))
            throw DomainError("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < 50) throw DomainError("QuadratureSpec: max_subdivisions must be at least 50");
        if (mc_samples < 1) throw DomainError("QuadratureSpec: mc_samples must be positive");
    }
};

/// Fixed n-point rule: sum_i weights[i] f(nodes[i]).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [lo, hi].
GaussRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/// Gauss-Hermite rule for the standard normal: sum_i w_i f(x_i) ~ E f(Z).
GaussRule gauss_hermite_normal(int n);

/// Composite Gauss-Legendre: `panels` equal panels of an n-point rule.
GaussRule composite_gauss_legendre(int n, int panels, double lo, double hi);

struct QuadResult {
    double value = 0;
    double error = 0;
    int subdivisions = 0;
};

namespace detail {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Kronrod rule with its embedded 10-point Gauss rule on [a, b].
template <class F>
Panel gk21(F& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double kronrod = f(c) * wk[0];
    double gauss = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double pair = f(c + h * x[i]) + f(c - h * x[i]);
        kronrod += pair * wk[i];
        if (i % 2 == 1) gauss += pair * wg[i / 2];
    }
    kronrod *= h;
    gauss *= h;
    const double err = std::max(std::abs(kronrod - gauss), 50 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
    return {a, b, kronrod, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod on [a, b]: the panel with the largest error
/// estimate is bisected until the summed error meets
/// max(absolute_tolerance, relative_tolerance * |value|).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: infinite bound, use integrate_to_infinity");
    if (a == b) return {};
    if (b < a) {
        QuadResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }

    std::vector<detail::Panel> panels{detail::gk21(f, a, b)};
    double value = panels.front().value;
    double error = panels.front().error;
    if (!std::isfinite(value)) throw IntegrationError("integrate: non-finite integrand", value, error);
    int splits = 0;

    while (error > std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(value))) {
        if (splits >= spec.max_subdivisions)
            throw IntegrationError("integrate: subdivision budget exhausted on [" + std::to_string(a) + ", " +
                                       std::to_string(b) + "]",
                                   value, error);
        std::pop_heap(panels.begin(), panels.end());
        const detail::Panel worst = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw IntegrationError("integrate: panel width reached roundoff", value, error);
        panels.push_back(detail::gk21(f, worst.a, mid));
        std::push_heap(panels.begin(), panels.end());
        panels.push_back(detail::gk21(f, mid, worst.b));
        std::push_heap(panels.begin(), panels.end());
        ++splits;

        // Re-sum rather than update incrementally so cancellation in the
        // running totals cannot hide a converged state.
        value = 0;
        error = 0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
        }
        if (!std::isfinite(value)) throw IntegrationError("integrate: non-finite integrand", value, error);
    }
    return {value, error, splits};
}

/// Integral over [a, inf) after mapping onto [0, 1). `scale` sets the length
/// scale c of the map and should be near where the integrand's mass lies.
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, double scale, const QuadratureSpec& spec) {
    if (!(scale > 0)) throw DomainError("integrate_to_infinity: scale must be positive");
    if (spec.semi_infinite_map == SemiInfiniteMap::rational) {
        auto g = [&](double u) {
            const double v = 1.0 - u;
            return f(a + scale * u / v) * scale / (v * v);
        };
        return integrate(g, 0.0, 1.0, spec);
    }
    auto g = [&](double u) {
        const double v = 1.0 - u;
        return f(a - scale * std::log(v)) * scale / v;
    };
    return integrate(g, 0.0, 1.0, spec);
}

/// Integral over [a, inf) by successive panels of geometrically growing width.
/// Stops once three consecutive panels each contribute at most
/// stop_fraction times the running total; the end point is returned in `end`.
template <class F>
QuadResult integrate_panels(F&& f, double a, double first_width, const QuadratureSpec& spec, double stop_fraction,
                            double* end = nullptr, double growth = 1.5, int max_panels = 400) {
    if (!(first_width > 0)) throw DomainError("integrate_panels: panel width must be positive");
    QuadResult total;
    double lo = a;
    double width = first_width;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        const QuadResult panel = integrate(f, lo, lo + width, spec);
        total.value += panel.value;
        total.error += panel.error;
        total.subdivisions += panel.subdivisions;
        quiet = std::abs(panel.value) <= stop_fraction * std::abs(total.value) ? quiet + 1 : 0;
        lo += width;
        width *= growth;
        if (quiet >= 3) {
            if (end) *end = lo;
            return total;
        }
    }
    throw IntegrationError("integrate_panels: integrand does not decay", total.value, total.error);
}

}  // namespace d2dmotif
