#pragma once

// Closed-form limits: classical (l = 0 only) regime, ideal-metal wall at any
// temperature, the zero-temperature Casimir-Polder series, and the bound on
// the first Matsubara term.

#include <cmath>
#include <cstdint>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/kernel.hpp"
#include "casimir/numerics.hpp"
#include "casimir/quantities.hpp"

namespace casimir {

struct ClassicalLimitResult {
    double free_energy = 0.0;               // J
    double force = 0.0;                     // N
    double perturbative_free_energy = 0.0;  // J
    double perturbative_force = 0.0;        // N
};

/// Zero-frequency term only: F0 = (k_B T / 2) ln[1 - alpha0/(2a^3)] and
/// Force0 = -dF0/da = -(3 k_B T alpha0 / 4a^4) / (1 - alpha0/(2a^3)), with their
/// first-order counterparts.
inline ClassicalLimitResult classical_limit(PolarizabilityValue alpha0, Separation a, Temperature T) {
    if (T.is_zero()) throw DomainError("classical limit needs T > 0");
    const double am = a.meters();
    const double a3 = am * am * am;
    const double ratio = alpha0.m3() / (2.0 * a3);
    if (!(ratio < 1.0))
        throw BreakdownError("classical limit: alpha(0)/(2a^3) >= 1, logarithm undefined",
                             critical_separation(alpha0.m3()));
    const double kT = T.thermal_energy();
    ClassicalLimitResult r;
    r.free_energy = 0.5 * kT * std::log1p(-ratio);
    r.force = -(3.0 * kT * alpha0.m3() / (4.0 * a3 * am)) / (1.0 - ratio);
    r.perturbative_free_energy = -kT * alpha0.m3() / (4.0 * a3);
    r.perturbative_force = -3.0 * kT * alpha0.m3() / (4.0 * a3 * am);
    return r;
}

struct SeriesTerm {
    int order = 0;
    double value = 0.0;  // J
};

struct IdealMetalSeries {
    std::vector<SeriesTerm> terms;  // -k_B T (1/n) sum'_l x_l^n
    int truncation_order = 0;
    double series_sum = 0.0;        // J, sum of terms
    double closed_form = 0.0;       // J, k_B T sum'_l ln(1 - x_l)
    std::int64_t matsubara_terms = 0;
};

/// Ideal-metal free energy, x_l = alpha_l (zeta_l^2 + 2 zeta_l + 2) e^-zeta_l / (4a^3).
/// Both the logarithmic closed form and its power series in x are returned.
inline IdealMetalSeries ideal_metal_free_energy(const PolarizabilityModel& atom, Separation a,
                                                Temperature T, int max_order = 12) {
    if (T.is_zero()) throw DomainError("ideal-metal free energy needs T > 0");
    if (max_order < 1) throw DomainError("max_order must be >= 1");
    const double am = a.meters();
    const double a3 = am * am * am;
    const double kT = T.thermal_energy();
    const double alpha0 = static_polarizability(atom);
    if (!(alpha0 / (2.0 * a3) < 1.0))
        throw BreakdownError("ideal metal: 1 - alpha(0)/(2a^3) <= 0, logarithm undefined",
                             critical_separation(alpha0));

    IdealMetalSeries out;
    if (alpha0 == 0.0) return out;

    // Collect x_l until the remaining tail is below double precision.
    const double dzeta = dimensionless_matsubara(a, T, 1);
    std::vector<double> x, w;
    CompensatedSum log_sum;
    for (std::int64_t l = 0;; ++l) {
        const double zeta = l * dzeta;
        const double alpha = alpha_imag_axis(atom, matsubara_frequency(T, l)).m3();
        const double xl = alpha * ideal_metal_integral(zeta) / (8.0 * a3);
        const double wl = l == 0 ? 0.5 : 1.0;
        x.push_back(xl);
        w.push_back(wl);
        log_sum += wl * std::log1p(-xl);
        const double tail = alpha / (4.0 * a3) * ((zeta + 4.0) * zeta + 6.0) * std::exp(-zeta) /
                            dzeta / (1.0 - x.front());
        if (l > 0 && tail <= 1e-17 * std::abs(log_sum.value())) break;
        if (l >= 10'000'000) throw NumericalError("ideal-metal sum did not converge");
    }
    out.matsubara_terms = static_cast<std::int64_t>(x.size());
    out.closed_form = kT * log_sum.value();

    CompensatedSum series;
    std::vector<double> power(x.size(), 1.0);
    for (int n = 1; n <= max_order; ++n) {
        CompensatedSum inner;
        for (std::size_t i = 0; i < x.size(); ++i) {
            power[i] *= x[i];
            inner += w[i] * power[i];
        }
        const double term = -kT * inner.value() / n;
        out.terms.push_back({n, term});
        series += term;
        out.truncation_order = n;
        if (std::abs(term) <= 1e-17 * std::abs(series.value())) break;
    }
    out.series_sum = series.value();
    return out;
}

/// Exact value of int_0^inf (zeta^2 + 2 zeta + 2)^m e^{-m zeta} dzeta via
/// binomial expansion and int zeta^n e^{-m zeta} = n! / m^{n+1}.
inline double casimir_polder_integral(int m) {
    if (m < 1) throw DomainError("power must be >= 1");
    std::vector<double> poly{1.0};
    for (int i = 0; i < m; ++i) {
        std::vector<double> next(poly.size() + 2, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += 2.0 * poly[k];
            next[k + 1] += 2.0 * poly[k];
            next[k + 2] += poly[k];
        }
        poly = std::move(next);
    }
    CompensatedSum sum;
    double factorial = 1.0;
    const double md = m;
    double mpow = md;  // m^{n+1}
    for (std::size_t n = 0; n < poly.size(); ++n) {
        if (n > 0) {
            factorial *= static_cast<double>(n);
            mpow *= md;
        }
        sum += poly[n] * factorial / mpow;
    }
    return sum.value();
}

struct ZeroTemperatureSeries {
    double energy = 0.0;            // J
    double casimir_polder = 0.0;    // J, leading -3 hbar c alpha0 / (8 pi a^4)
    std::vector<SeriesTerm> terms;  // correction k = 1, 2, ... (order = k)
    std::vector<double> coefficients;  // int (zeta^2+2zeta+2)^{k+1} e^{-(k+1) zeta}, k = 0..
    int truncation_order = 0;
};

/// Ideal metal, static polarizability, T = 0:
/// E = -3 hbar c alpha0/(8 pi a^4)
///     - (hbar c alpha0 / 16 pi a^4) sum_k (1/(k+1)) (alpha0/4a^3)^k C_{k+1}.
inline ZeroTemperatureSeries zero_t_ideal_metal_energy(PolarizabilityValue alpha0, Separation a,
                                                       int max_order = 12) {
    if (max_order < 0) throw DomainError("max_order must be >= 0");
    const double am = a.meters();
    const double a3 = am * am * am;
    const double x = alpha0.m3() / (4.0 * a3);
    if (!(x < 0.5))
        throw DomainError("Casimir-Polder series needs alpha(0)/(4a^3) < 1/2");
    const double pre = constants::hbar * constants::c * alpha0.m3() /
                       (16.0 * constants::pi * a3 * am);
    ZeroTemperatureSeries out;
    out.coefficients.push_back(casimir_polder_integral(1));
    out.casimir_polder = -pre * out.coefficients.front();
    CompensatedSum total;
    total += out.casimir_polder;
    double xk = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        xk *= x;
        const double c = casimir_polder_integral(k + 1);
        out.coefficients.push_back(c);
        const double term = -pre * xk * c / (k + 1);
        out.terms.push_back({k, term});
        total += term;
        out.truncation_order = k;
        if (std::abs(term) <= 1e-17 * std::abs(total.value())) break;
    }
    out.energy = total.value();
    return out;
}

/// Upper bound on |F_1|: k_B T (alpha0/4a^3) r_TM(0) (zeta_1^2 + 2 zeta_1 + 2) e^{-zeta_1},
/// zeta_1 = 4 pi a k_B T / (hbar c).
inline double first_term_bound(const Scenario& s) {
    const double zeta1 = dimensionless_matsubara(s.separation(), s.temperature(), 1);
    const double am = s.separation().meters();
    const double alpha0 = static_polarizability(s.atom());
    return s.temperature().thermal_energy() * alpha0 / (4.0 * am * am * am) *
           static_tm_reflection_factor(s.wall()) * 0.5 * ideal_metal_integral(zeta1);
}

}  // namespace casimir
