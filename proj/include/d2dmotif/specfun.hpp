#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "d2dmotif/errors.hpp"

namespace d2dmotif {

/// Truncation control for infinite series.
struct SeriesControl {
    double relative_tolerance = 1e-12;
    int max_terms = 200;

    void validate() const {
        if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-3))
            throw DomainError("SeriesControl: relative_tolerance must lie in (0, 1e-3]");
        if (max_terms < 10)
            throw DomainError("SeriesControl: max_terms must be at least 10");
    }
};

namespace detail {

template <class Scalar>
void require_finite(Scalar x, const char* fn) {
    if (!std::isfinite(x))
        throw DomainError(std::string(fn) + ": non-finite argument");
}

// Crossover between the power series and the large-argument expansion.
inline constexpr double kBesselCrossover = 15.0;

// sum_k (x^2/4)^k / (k!)^2, all terms positive.
template <class Scalar>
Scalar bessel_i0_series(Scalar x) {
    const Scalar q = x * x / Scalar(4);
    Scalar term = 1;
    Scalar sum = 1;
    for (int k = 1; k < 500; ++k) {
        term *= q / (Scalar(k) * Scalar(k));
        sum += term;
        if (term <= sum * std::numeric_limits<Scalar>::epsilon()) break;
    }
    return sum;
}

// e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k), summed up to
// the smallest term of the asymptotic series.
template <class Scalar>
Scalar bessel_i0_scaled_asymptotic(Scalar x) {
    Scalar term = 1;
    Scalar sum = 1;
    for (int k = 1; k < 200; ++k) {
        const Scalar odd = Scalar(2 * k - 1);
        const Scalar next = term * odd * odd / (Scalar(8) * x * Scalar(k));
        if (next >= term) break;
        term = next;
        sum += term;
        if (term <= sum * std::numeric_limits<Scalar>::epsilon()) break;
    }
    return sum / std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar> * x);
}

}  // namespace detail

/// Modified Bessel function of the first kind, order zero, scaled by e^{-x}.
/// Finite for every finite x >= 0.
template <class Scalar>
Scalar bessel_i0_scaled(Scalar x) {
    detail::require_finite(x, "bessel_i0_scaled");
    if (x < 0) throw DomainError("bessel_i0_scaled: negative argument");
    if (x < Scalar(detail::kBesselCrossover)) return std::exp(-x) * detail::bessel_i0_series(x);
    return detail::bessel_i0_scaled_asymptotic(x);
}

/// Modified Bessel function of the first kind, order zero.
template <class Scalar>
Scalar bessel_i0(Scalar x) {
    detail::require_finite(x, "bessel_i0");
    if (x < 0) throw DomainError("bessel_i0: negative argument");
    if (x < Scalar(detail::kBesselCrossover)) return detail::bessel_i0_series(x);
    // e^{x/2} twice keeps the intermediate finite up to the double overflow point of I0.
    const Scalar half = std::exp(x / Scalar(2));
    return detail::bessel_i0_scaled_asymptotic(x) * half * half;
}

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
///
/// Series expansion below x = a + 1, Lentz continued fraction for the upper
/// function above it.
template <class Scalar>
Scalar regularized_lower_gamma(Scalar a, Scalar x, const SeriesControl& control = {1e-15, 500}) {
    detail::require_finite(a, "regularized_lower_gamma");
    detail::require_finite(x, "regularized_lower_gamma");
    if (!(a > 0)) throw DomainError("regularized_lower_gamma: a must be positive");
    if (x < 0) throw DomainError("regularized_lower_gamma: x must be nonnegative");
    if (x == 0) return Scalar(0);

    const Scalar tol = std::max(Scalar(control.relative_tolerance), std::numeric_limits<Scalar>::epsilon());
    const Scalar log_prefactor = -x + a * std::log(x) - std::lgamma(a);

    if (x < a + 1) {
        Scalar ap = a;
        Scalar del = Scalar(1) / a;
        Scalar sum = del;
        for (int n = 0; n < control.max_terms; ++n) {
            ap += 1;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * tol) return std::min(Scalar(1), sum * std::exp(log_prefactor));
        }
        throw ConvergenceError("regularized_lower_gamma: series did not converge", double(del), control.max_terms);
    }

    const Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
    Scalar b = x + 1 - a;
    Scalar c = Scalar(1) / tiny;
    Scalar d = Scalar(1) / b;
    Scalar h = d;
    for (int i = 1; i <= control.max_terms; ++i) {
        const Scalar an = -Scalar(i) * (Scalar(i) - a);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = Scalar(1) / d;
        const Scalar delta = d * c;
        h *= delta;
        if (std::abs(delta - 1) < tol) return Scalar(1) - std::exp(log_prefactor) * h;
    }
    throw ConvergenceError("regularized_lower_gamma: continued fraction did not converge", double(h), control.max_terms);
}

/// Lower incomplete gamma function gamma(a, x) = int_0^x c^{a-1} e^{-c} dc.
template <class Scalar>
Scalar lower_inc_gamma(Scalar a, Scalar x, const SeriesControl& control = {1e-15, 500}) {
    const Scalar p = regularized_lower_gamma(a, x, control);
    if (p == 0) return Scalar(0);
    return p * std::tgamma(a);
}

}  // namespace d2dmotif
