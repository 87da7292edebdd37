#pragma once

// Nonperturbative and perturbative (Lifshitz) atom-wall free energy and force
// in the Matsubara representation, and the zero-temperature integral form.
//
// Dimensionless variables: y = 2 a q, zeta = 2 a xi / c. For each Matsubara
// frequency the wall enters through
//
//   I(zeta) = int_zeta^inf dy e^-y [(2y^2 - zeta^2) r_TM - zeta^2 r_TE]
//   J(zeta) = int_zeta^inf dy y e^-y [ ... same bracket ... ]
//
// and the atom through x = alpha(i xi) I / (8 a^3). Then
//
//   L = 1 - x,  F = k_B T sum' ln L,  Force = -(k_B T / a) sum' (alpha/8a^3) J / L
//
// with the perturbative versions obtained by ln L -> -x and 1/L -> 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/quantities.hpp"

namespace casimir {

struct KernelOptions {
    double quad_rel_tol = 1e-10;      // per-term y integrals
    double sum_rel_tol = 1e-9;        // Matsubara tail bound vs accumulated sum
    std::int64_t max_terms = 1'000'000;
    double zero_t_rel_tol = 1e-9;     // outer zeta integral at T = 0
    double y_cutoff = 60.0;           // integrate t = y - zeta on [0, y_cutoff]
    double zeta_cutoff = 60.0;        // outer T = 0 integral on [0, zeta_cutoff]
};

/// Atom-wall configuration.
class Scenario {
public:
    static constexpr double default_min_separation = 0.8e-9;

    Scenario(Separation a, Temperature T, PermittivityModel wall, PolarizabilityModel atom,
             double min_separation = default_min_separation)
        : a_(a), T_(T), wall_(std::move(wall)), atom_(std::move(atom)),
          min_separation_(min_separation) {
        // Small tolerance so that a grid endpoint printed in nm maps back onto the floor.
        if (a.meters() < min_separation * (1.0 - 1e-12)) {
            std::ostringstream msg;
            msg << "separation " << a.nanometers() << " nm is below the validity floor "
                << min_separation * 1e9 << " nm of the continuum description";
            throw DomainError(msg.str());
        }
    }

    Separation separation() const noexcept { return a_; }
    Temperature temperature() const noexcept { return T_; }
    const PermittivityModel& wall() const noexcept { return wall_; }
    const PolarizabilityModel& atom() const noexcept { return atom_; }
    double min_separation() const noexcept { return min_separation_; }

    Scenario with_separation(Separation a) const {
        return Scenario(a, T_, wall_, atom_, min_separation_);
    }
    Scenario with_temperature(Temperature T) const {
        return Scenario(a_, T, wall_, atom_, min_separation_);
    }

private:
    Separation a_;
    Temperature T_;
    PermittivityModel wall_;
    PolarizabilityModel atom_;
    double min_separation_;
};

/// Wall response at one dimensionless frequency. Any field may be +inf:
/// chi = inf is a metal at zero frequency or an ideal metal, q2 = inf an ideal metal.
struct SurfaceResponse {
    double chi;    // eps - 1
    double zeta2;  // zeta^2
    double q2;     // zeta^2 (eps - 1); finite at zeta = 0 for plasma-type metals

    static SurfaceResponse ideal_metal(double zeta) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, zeta * zeta, inf};
    }
    static SurfaceResponse finite(double chi, double zeta) {
        return {chi, zeta * zeta, zeta == 0.0 ? 0.0 : zeta * zeta * chi};
    }
};

/// r_TM written as chi ((eps+1) y^2 - zeta^2) / (eps y + s)^2, exact
/// rearrangement of (eps y - s)/(eps y + s) without cancellation.
inline double refl_tm(const SurfaceResponse& r, double y) {
    if (std::isinf(r.chi)) return 1.0;
    if (r.chi == 0.0) return 0.0;
    const double eps = 1.0 + r.chi;
    const double s = std::sqrt(y * y + r.q2);
    const double den = eps * y + s;
    return r.chi * ((eps + 1.0) * y * y - r.zeta2) / (den * den);
}

/// r_TE = (y - s)/(y + s) = -q2 / (y + s)^2.
inline double refl_te(const SurfaceResponse& r, double y) {
    if (std::isinf(r.q2)) return -1.0;
    if (r.q2 == 0.0) return 0.0;
    const double s = std::sqrt(y * y + r.q2);
    const double den = y + s;
    return -r.q2 / (den * den);
}

namespace detail {
inline void check_reflection_args(double eps_minus_one, double zeta, double y) {
    if (!(y > 0.0)) throw DomainError("reflection coefficients need y > 0");
    if (!(zeta >= 0.0)) throw DomainError("reflection coefficients need zeta >= 0");
    if (!(y >= zeta * (1.0 - 1e-15))) throw DomainError("reflection coefficients need y >= zeta");
    if (!(eps_minus_one >= 0.0)) throw DomainError("reflection coefficients need eps >= 1");
}
}  // namespace detail

inline double refl_tm(PermittivityValue eps, double zeta, double y) {
    detail::check_reflection_args(eps.minus_one(), zeta, y);
    return refl_tm(SurfaceResponse::finite(eps.minus_one(), zeta), y);
}

inline double refl_te(PermittivityValue eps, double zeta, double y) {
    detail::check_reflection_args(eps.minus_one(), zeta, y);
    return refl_te(SurfaceResponse::finite(eps.minus_one(), zeta), y);
}

/// Response of the wall at zeta, including the analytic zeta -> 0 limits.
/// Drops to the model's own xi for zeta > 0.
inline SurfaceResponse surface_response(const PermittivityModel& wall, Separation a, double zeta) {
    if (std::holds_alternative<IdealMetal>(wall)) return SurfaceResponse::ideal_metal(zeta);
    if (zeta > 0.0) {
        const double xi = zeta * a.characteristic_frequency();
        return SurfaceResponse::finite(susceptibility_imag_axis(wall, xi), zeta);
    }
    if (const auto* d = std::get_if<DielectricOscillator>(&wall))
        return SurfaceResponse::finite(d->eps0 - 1.0, 0.0);
    // Metal at zero frequency: eps -> inf, zeta^2 (eps - 1) -> (2 a omega_p / c)^2
    // for lossless free electrons, -> 0 with dissipation.
    const double k = 2.0 * a.meters() * lossless_plasma_frequency(wall) / constants::c;
    return {std::numeric_limits<double>::infinity(), 0.0, k * k};
}

struct TermIntegrals {
    double I = 0.0;
    double J = 0.0;
    double I_error = 0.0;
    double J_error = 0.0;
    int evaluations = 0;
};

/// I and J for a given wall response. The shift y = zeta + t factors out
/// e^-zeta; the range t > y_cutoff is bounded by the ideal-metal majorant
/// and folded into the error estimates.
inline TermIntegrals term_integrals(const SurfaceResponse& r, double zeta,
                                    const KernelOptions& opt = {}) {
    TermIntegrals out;
    if (r.chi == 0.0 && !std::isinf(r.q2)) return out;  // vacuum: no interface
    const double z2 = zeta * zeta;
    auto integrand = [&](double t) {
        const double y = zeta + t;
        const double bracket = (2.0 * y * y - z2) * refl_tm(r, y) - z2 * refl_te(r, y);
        const double w = std::exp(-t);
        return std::array<double, 2>{w * bracket, w * y * bracket};
    };
    static constexpr std::array<double, 6> cuts = {0.0, 0.5, 2.0, 6.0, 15.0, 30.0};
    std::vector<double> points;
    for (double c : cuts)
        if (c < opt.y_cutoff) points.push_back(c);
    points.push_back(opt.y_cutoff);
    QuadratureOptions q;
    q.rel_tol = opt.quad_rel_tol;
    q.abs_tol = 1e-300;
    auto res = integrate_adaptive<2>(integrand, std::span<const double>(points), q);

    const double scale = std::exp(-zeta);
    const double Y = zeta + opt.y_cutoff;
    const double tail_weight = std::exp(-opt.y_cutoff);
    const double tail_I = 2.0 * (Y * Y + 2.0 * Y + 2.0) * tail_weight;
    const double tail_J = 2.0 * (Y * Y * Y + 3.0 * Y * Y + 6.0 * Y + 6.0) * tail_weight;
    out.I = scale * res.value[0];
    out.J = scale * res.value[1];
    out.I_error = scale * (res.error[0] + tail_I);
    out.J_error = scale * (res.error[1] + tail_J);
    out.evaluations = res.evaluations;
    return out;
}

/// I_l for the wall at separation a and dimensionless frequency zeta.
inline TermIntegrals matsubara_integral(const PermittivityModel& wall, Separation a, double zeta,
                                        const KernelOptions& opt = {}) {
    if (!(zeta >= 0.0)) throw DomainError("zeta must be non-negative");
    return term_integrals(surface_response(wall, a, zeta), zeta, opt);
}

/// 2 (zeta^2 + 2 zeta + 2) e^-zeta: I for an ideal metal, majorant otherwise.
inline double ideal_metal_integral(double zeta) {
    return 2.0 * (zeta * zeta + 2.0 * zeta + 2.0) * std::exp(-zeta);
}

/// 2 (zeta^3 + 3 zeta^2 + 6 zeta + 6) e^-zeta: J for an ideal metal.
inline double ideal_metal_force_integral(double zeta) {
    return 2.0 * (((zeta + 3.0) * zeta + 6.0) * zeta + 6.0) * std::exp(-zeta);
}

/// Per-frequency diagnostics of one Matsubara term.
struct MatsubaraTerm {
    std::int64_t l = 0;
    double xi = 0.0;     // rad/s
    double zeta = 0.0;
    double alpha = 0.0;  // m^3
    double I = 0.0;
    double J = 0.0;
    double x = 0.0;      // alpha I / (8 a^3)
    double L = 1.0;      // 1 - x
    double weight = 1.0; // 1/2 for l = 0
    double I_error = 0.0;
    double J_error = 0.0;
};

inline double critical_separation(double alpha0) { return std::cbrt(alpha0 / 2.0); }

/// Wall and atom response at the Matsubara frequencies of one temperature.
/// Neither depends on the separation, so a sweep builds this once; it is
/// read-only afterwards and may be shared between threads.
class SpectralCache {
public:
    SpectralCache(const PermittivityModel& wall, const PolarizabilityModel& atom, Temperature T,
                  std::int64_t count)
        : T_(T) {
        if (T.is_zero()) throw DomainError("spectral cache needs T > 0");
        const bool ideal = std::holds_alternative<IdealMetal>(wall);
        chi_.reserve(static_cast<std::size_t>(count));
        alpha_.reserve(static_cast<std::size_t>(count));
        for (std::int64_t l = 0; l < count; ++l) {
            const double xi = matsubara_frequency(T, l);
            chi_.push_back(ideal || l == 0 ? std::numeric_limits<double>::quiet_NaN()
                                           : susceptibility_imag_axis(wall, xi));
            alpha_.push_back(alpha_imag_axis(atom, xi).m3());
        }
    }

    Temperature temperature() const noexcept { return T_; }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(alpha_.size()); }
    double chi(std::int64_t l) const { return chi_[static_cast<std::size_t>(l)]; }
    double alpha(std::int64_t l) const { return alpha_[static_cast<std::size_t>(l)]; }

private:
    Temperature T_;
    std::vector<double> chi_;
    std::vector<double> alpha_;
};

namespace detail {

inline MatsubaraTerm evaluate_term(const Scenario& s, std::int64_t l, const KernelOptions& opt,
                                   const SpectralCache* cache) {
    const Separation a = s.separation();
    MatsubaraTerm term;
    term.l = l;
    term.weight = l == 0 ? 0.5 : 1.0;
    term.xi = matsubara_frequency(s.temperature(), l);
    term.zeta = a.dimensionless(term.xi);
    const bool cached = cache && l < cache->size() && cache->temperature() == s.temperature();

    SurfaceResponse r;
    if (l == 0 || std::holds_alternative<IdealMetal>(s.wall()))
        r = surface_response(s.wall(), a, term.zeta);
    else
        r = SurfaceResponse::finite(
            cached ? cache->chi(l) : susceptibility_imag_axis(s.wall(), term.xi), term.zeta);
    term.alpha = cached ? cache->alpha(l) : alpha_imag_axis(s.atom(), term.xi).m3();

    const TermIntegrals ti = term_integrals(r, term.zeta, opt);
    term.I = ti.I;
    term.J = ti.J;
    term.I_error = ti.I_error;
    term.J_error = ti.J_error;
    const double a3 = a.meters() * a.meters() * a.meters();
    term.x = term.alpha * term.I / (8.0 * a3);
    term.L = 1.0 - term.x;
    return term;
}

[[noreturn]] inline void throw_breakdown(const Scenario& s, std::int64_t l, double L) {
    const double alpha0 = static_polarizability(s.atom());
    const double crit = critical_separation(alpha0);
    std::ostringstream msg;
    msg << "nonperturbative breakdown: separation too small for this polarizability "
        << "(L = " << L << " <= 0 at " << (l >= 0 ? "l = " + std::to_string(l) : "T = 0")
        << ", a = " << s.separation().nanometers()
        << " nm; critical separation (alpha(0)/2)^(1/3) = " << crit * 1e9 << " nm)";
    throw BreakdownError(msg.str(), crit);
}

}  // namespace detail

/// L_l and its ingredients. Throws BreakdownError when L_l <= 0.
inline MatsubaraTerm l_function(const Scenario& s, std::int64_t l, const KernelOptions& opt = {},
                                const SpectralCache* cache = nullptr) {
    if (l < 0) throw DomainError("Matsubara index must be non-negative");
    MatsubaraTerm term = detail::evaluate_term(s, l, opt, cache);
    if (!(term.L > 0.0)) detail::throw_breakdown(s, l, term.L);
    return term;
}

enum class SummationMode { matsubara_sum, zero_t_integral };

struct InteractionResult {
    double free_energy = 0.0;           // J
    double force = 0.0;                 // N, negative = attraction
    std::int64_t terms_used = 0;        // Matsubara terms, or outer quadrature nodes at T = 0
    double free_energy_error = 0.0;     // truncation + quadrature estimate, J
    double force_error = 0.0;           // N
    SummationMode mode = SummationMode::matsubara_sum;
    bool reached_term_cap = false;
};

/// Exact and perturbative results from one pass over the Matsubara terms.
struct InteractionComparison {
    InteractionResult exact;
    InteractionResult perturbative;
};

namespace detail {

inline InteractionComparison matsubara_sums(const Scenario& s, const KernelOptions& opt,
                                            const SpectralCache* cache) {
    const Separation a = s.separation();
    const double am = a.meters();
    const double a3 = am * am * am;
    const double kT = s.temperature().thermal_energy();
    const double dzeta = dimensionless_matsubara(a, s.temperature(), 1);

    CompensatedSum f_exact, f_pert, force_exact, force_pert;
    double quad_err_energy = 0.0, quad_err_force = 0.0;
    double tail_energy = 0.0, tail_force = 0.0;
    double max_x = 0.0;
    std::int64_t l = 0;
    bool capped = false;
    for (;; ++l) {
        if (l >= opt.max_terms) {
            capped = true;
            break;
        }
        const MatsubaraTerm t = l_function(s, l, opt, cache);
        max_x = std::max(max_x, t.x);
        const double w = t.weight;
        const double c = t.alpha / (8.0 * a3);
        f_exact += w * std::log1p(-t.x);
        f_pert += -w * t.x;
        force_exact += w * c * t.J / t.L;
        force_pert += w * c * t.J;
        quad_err_energy += w * c * t.I_error / t.L;
        quad_err_force += w * c * t.J_error / t.L;

        if (l == 0) continue;
        // alpha(0) = 0 or eps(0) = 1 with non-increasing responses: every term vanishes.
        if (f_pert.value() == 0.0 && force_pert.value() == 0.0) break;
        // Remaining terms: alpha is non-increasing and r_TM <= 1, -r_TE <= 1, so
        // each is dominated by the ideal-metal integrand with the current alpha;
        // the majorant decreases in zeta, so the tail sum is bounded by its
        // integral from zeta_l divided by the spacing dzeta.
        const double z = t.zeta;
        const double e = std::exp(-z);
        const double cap = t.alpha / (8.0 * a3);
        const double x_bound = cap * ideal_metal_integral(z);
        const double inv_L = x_bound < 1.0 ? 1.0 / (1.0 - x_bound) : 1.0 / (1.0 - max_x);
        tail_energy = cap * 2.0 * ((z + 4.0) * z + 6.0) * e / dzeta * inv_L;
        tail_force = cap * 2.0 * (((z + 6.0) * z + 18.0) * z + 24.0) * e / dzeta * inv_L;
        if (tail_energy <= opt.sum_rel_tol * std::abs(f_pert.value()) &&
            tail_force <= opt.sum_rel_tol * std::abs(force_pert.value()))
            break;
    }

    InteractionComparison out;
    out.exact.free_energy = kT * f_exact.value();
    out.perturbative.free_energy = kT * f_pert.value();
    out.exact.force = -(kT / am) * force_exact.value();
    out.perturbative.force = -(kT / am) * force_pert.value();
    for (InteractionResult* r : {&out.exact, &out.perturbative}) {
        r->terms_used = capped ? l : l + 1;
        r->free_energy_error = kT * (tail_energy + quad_err_energy);
        r->force_error = (kT / am) * (tail_force + quad_err_force);
        r->mode = SummationMode::matsubara_sum;
        r->reached_term_cap = capped;
    }
    return out;
}

inline InteractionComparison zero_temperature_integrals(const Scenario& s, const KernelOptions& opt) {
    const Separation a = s.separation();
    const double am = a.meters();
    const double a3 = am * am * am;
    auto integrand = [&](double zeta) {
        const SurfaceResponse r = surface_response(s.wall(), a, zeta);
        const double alpha =
            alpha_imag_axis(s.atom(), zeta * a.characteristic_frequency()).m3();
        const TermIntegrals ti = term_integrals(r, zeta, opt);
        const double c = alpha / (8.0 * a3);
        const double x = c * ti.I;
        const double L = 1.0 - x;
        if (!(L > 0.0)) throw_breakdown(s, -1, L);
        return std::array<double, 4>{std::log1p(-x), -x, c * ti.J / L, c * ti.J};
    };
    static constexpr std::array<double, 7> cuts = {0.0, 0.25, 1.0, 3.0, 8.0, 18.0, 35.0};
    std::vector<double> points;
    for (double c : cuts)
        if (c < opt.zeta_cutoff) points.push_back(c);
    points.push_back(opt.zeta_cutoff);
    QuadratureOptions q;
    q.rel_tol = opt.zero_t_rel_tol;
    q.abs_tol = 1e-300;
    const auto res = integrate_adaptive<4>(integrand, std::span<const double>(points), q);

    // Beyond zeta_cutoff: |ln L| <= x/(1-x) with x below the ideal-metal majorant.
    const double alpha0 = static_polarizability(s.atom());
    const double zc = opt.zeta_cutoff;
    const double cap = alpha0 / (8.0 * a3);
    const double tail_energy = cap * 2.0 * ((zc + 4.0) * zc + 6.0) * std::exp(-zc);
    const double tail_force = cap * 2.0 * (((zc + 6.0) * zc + 18.0) * zc + 24.0) * std::exp(-zc);

    const double pre = constants::hbar * constants::c / (4.0 * constants::pi * am);
    InteractionComparison out;
    out.exact.free_energy = pre * res.value[0];
    out.perturbative.free_energy = pre * res.value[1];
    out.exact.force = -(pre / am) * res.value[2];
    out.perturbative.force = -(pre / am) * res.value[3];
    const int nodes = res.evaluations;
    out.exact.free_energy_error = pre * (res.error[0] + tail_energy);
    out.perturbative.free_energy_error = pre * (res.error[1] + tail_energy);
    out.exact.force_error = (pre / am) * (res.error[2] + tail_force);
    out.perturbative.force_error = (pre / am) * (res.error[3] + tail_force);
    for (InteractionResult* r : {&out.exact, &out.perturbative}) {
        r->terms_used = nodes;
        r->mode = SummationMode::zero_t_integral;
    }
    return out;
}

}  // namespace detail

/// Exact and perturbative free energy and force. T > 0 sums over Matsubara
/// frequencies; T = 0 integrates over continuous zeta.
inline InteractionComparison evaluate(const Scenario& s, const KernelOptions& opt = {},
                                      const SpectralCache* cache = nullptr) {
    if (s.temperature().is_zero()) return detail::zero_temperature_integrals(s, opt);
    return detail::matsubara_sums(s, opt, cache);
}

inline InteractionResult free_energy_exact(const Scenario& s, const KernelOptions& opt = {}) {
    if (s.temperature().is_zero())
        throw DomainError("free_energy_exact needs T > 0; use energy_zero_temperature");
    return evaluate(s, opt).exact;
}

inline InteractionResult force_exact(const Scenario& s, const KernelOptions& opt = {}) {
    if (s.temperature().is_zero())
        throw DomainError("force_exact needs T > 0; use energy_zero_temperature");
    return evaluate(s, opt).exact;
}

inline InteractionResult free_energy_perturbative(const Scenario& s, const KernelOptions& opt = {}) {
    if (s.temperature().is_zero())
        throw DomainError("free_energy_perturbative needs T > 0; use energy_zero_temperature");
    return evaluate(s, opt).perturbative;
}

inline InteractionResult force_perturbative(const Scenario& s, const KernelOptions& opt = {}) {
    return free_energy_perturbative(s, opt);
}

/// E(a) = (hbar c / 4 pi a) int_0^inf dzeta ln L(zeta). The result also carries
/// the zero-temperature force.
inline InteractionResult energy_zero_temperature(const Scenario& s, const KernelOptions& opt = {}) {
    if (!s.temperature().is_zero()) throw DomainError("energy_zero_temperature needs T = 0");
    return detail::zero_temperature_integrals(s, opt).exact;
}

struct RelativeDeviation {
    double free_energy = 0.0;
    double force = 0.0;
};

/// (exact - perturbative) / perturbative for free energy and force.
inline RelativeDeviation relative_deviation(const InteractionComparison& c) {
    if (c.perturbative.free_energy == 0.0 || c.perturbative.force == 0.0)
        throw DomainError("relative deviation undefined: perturbative result is zero");
    return {(c.exact.free_energy - c.perturbative.free_energy) / c.perturbative.free_energy,
            (c.exact.force - c.perturbative.force) / c.perturbative.force};
}

inline RelativeDeviation relative_deviation(const Scenario& s, const KernelOptions& opt = {}) {
    return relative_deviation(evaluate(s, opt));
}

}  // namespace casimir
