#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

// CODATA 2018. hbar, k_B, e and c are exact in the 2019 SI.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double c = 299792458.0;                  // m/s
inline constexpr double k_B = 1.380649e-23;               // J/K
inline constexpr double bohr_radius = 5.29177210903e-11;  // m
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double hartree = 4.3597447222071e-18;    // J
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// Atom-wall distance a. Also carries omega_c = c/(2a).
class Separation {
public:
    explicit Separation(double meters) : meters_(meters) {
        if (!(meters > 0.0) || !std::isfinite(meters))
            throw DomainError("separation must be positive and finite");
    }

    static Separation from_nm(double nm) { return Separation(nm / 1e9); }

    double meters() const noexcept { return meters_; }
    double nanometers() const noexcept { return meters_ * 1e9; }

    /// Characteristic frequency omega_c = c/(2a), rad/s.
    double characteristic_frequency() const noexcept { return constants::c / (2.0 * meters_); }

    /// zeta = xi / omega_c.
    double dimensionless(double xi) const noexcept { return xi / characteristic_frequency(); }

    friend bool operator==(const Separation&, const Separation&) = default;

private:
    double meters_;
};

/// Temperature in kelvin. Zero selects the zero-temperature integral mode.
class Temperature {
public:
    explicit Temperature(double kelvin) : kelvin_(kelvin) {
        if (!(kelvin >= 0.0) || !std::isfinite(kelvin))
            throw DomainError("temperature must be non-negative and finite");
    }

    double kelvin() const noexcept { return kelvin_; }
    bool is_zero() const noexcept { return kelvin_ == 0.0; }
    double thermal_energy() const noexcept { return constants::k_B * kelvin_; }

    friend bool operator==(const Temperature&, const Temperature&) = default;

private:
    double kelvin_;
};

/// Gaussian-convention polarizability volume, m^3.
class PolarizabilityValue {
public:
    explicit PolarizabilityValue(double m3) : m3_(m3) {
        if (!(m3 >= 0.0)) throw DomainError("polarizability must be non-negative");
    }
    double m3() const noexcept { return m3_; }

private:
    double m3_;
};

/// Permittivity on the imaginary axis. Stores eps - 1 so that weakly
/// responding media near the vacuum limit keep their significant digits.
class PermittivityValue {
public:
    static PermittivityValue from_susceptibility(double eps_minus_one) {
        if (!(eps_minus_one >= 0.0))
            throw DomainError("permittivity on the imaginary axis must be >= 1");
        return PermittivityValue(eps_minus_one);
    }
    static PermittivityValue from_eps(double eps) { return from_susceptibility(eps - 1.0); }

    double eps() const noexcept { return 1.0 + chi_; }
    double minus_one() const noexcept { return chi_; }

private:
    explicit PermittivityValue(double chi) : chi_(chi) {}
    double chi_;
};

inline double ev_to_angular_frequency(double energy_ev) {
    if (!(energy_ev >= 0.0)) throw DomainError("photon energy must be non-negative");
    return energy_ev * constants::electron_volt / constants::hbar;
}

inline double angular_frequency_to_ev(double omega) {
    if (!(omega >= 0.0)) throw DomainError("angular frequency must be non-negative");
    return omega * constants::hbar / constants::electron_volt;
}

/// Atomic unit of angular frequency E_h/hbar to rad/s.
inline double au_to_angular_frequency(double xi_au) {
    if (!(xi_au >= 0.0)) throw DomainError("frequency must be non-negative");
    return xi_au * constants::hartree / constants::hbar;
}

inline double angular_frequency_to_au(double xi) {
    if (!(xi >= 0.0)) throw DomainError("frequency must be non-negative");
    return xi * constants::hbar / constants::hartree;
}

inline PolarizabilityValue au_to_si_polarizability(double alpha_au) {
    if (!(alpha_au >= 0.0)) throw DomainError("polarizability must be non-negative");
    constexpr double a0 = constants::bohr_radius;
    return PolarizabilityValue(alpha_au * a0 * a0 * a0);
}

inline double si_to_au_polarizability(PolarizabilityValue alpha) {
    constexpr double a0 = constants::bohr_radius;
    return alpha.m3() / (a0 * a0 * a0);
}

/// xi_l = 2 pi k_B T l / hbar.
inline double matsubara_frequency(Temperature T, std::int64_t l) {
    if (T.is_zero())
        throw DomainError("Matsubara frequencies need T > 0; use the zero-temperature integral");
    if (l < 0) throw DomainError("Matsubara index must be non-negative");
    return 2.0 * constants::pi * T.thermal_energy() * static_cast<double>(l) / constants::hbar;
}

/// zeta_l = 2 a xi_l / c.
inline double dimensionless_matsubara(Separation a, Temperature T, std::int64_t l) {
    return a.dimensionless(matsubara_frequency(T, l));
}

inline double joule_to_ev(double joule) { return joule / constants::electron_volt; }

}  // namespace casimir
