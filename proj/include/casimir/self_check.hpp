#pragma once

// Cross-oracle checks between the quadrature kernel and the closed-form
// limits. Run by `casimir-polder self-check`.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/kernel.hpp"
#include "casimir/limits.hpp"

namespace casimir {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {
inline double rel_diff(double x, double ref) {
    return ref == 0.0 ? std::abs(x) : std::abs(x - ref) / std::abs(ref);
}

inline CheckResult make_check(std::string name, double measured, double limit) {
    std::ostringstream d;
    d.precision(3);
    d << "rel. diff " << measured << " (limit " << limit << ")";
    return {std::move(name), measured < limit, d.str()};
}
}  // namespace detail

inline std::vector<CheckResult> run_self_check(const KernelOptions& opt = {}) {
    using detail::make_check;
    using detail::rel_diff;
    std::vector<CheckResult> out;
    const double alpha0 = au_to_si_polarizability(315.63).m3();  // He(2 3S)
    const Temperature room(300.0);
    const PolarizabilityModel stat = StaticPolarizability(alpha0);
    const PolarizabilityModel osc = SingleOscillator(alpha0, ev_to_angular_frequency(1.18));
    const PermittivityModel plasma = PlasmaModel(ev_to_angular_frequency(9.0));

    {
        double worst = 0.0;
        const Separation a = Separation::from_nm(1.0);
        for (int l = 0; l <= 50; ++l) {
            const double z = dimensionless_matsubara(a, room, l);
            worst = std::max(worst, rel_diff(matsubara_integral(IdealMetal{}, a, z, opt).I,
                                             ideal_metal_integral(z)));
        }
        out.push_back(make_check("ideal-metal I_l quadrature vs closed form", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (double nm : {1.0, 10.0}) {
            const Scenario s(Separation::from_nm(nm), room, IdealMetal{}, osc);
            const auto series = ideal_metal_free_energy(osc, s.separation(), room);
            worst = std::max(worst, rel_diff(evaluate(s, opt).exact.free_energy, series.closed_form));
            worst = std::max(worst, rel_diff(series.series_sum, series.closed_form));
        }
        out.push_back(make_check("ideal-metal free energy: kernel vs log form vs power series",
                                 worst, 1e-8));
    }
    {
        const Scenario s(Separation::from_nm(30'000.0), room, plasma, osc);
        const auto c = evaluate(s, opt);
        const auto cl = classical_limit(PolarizabilityValue(alpha0), s.separation(), room);
        const double worst = std::max({rel_diff(c.exact.free_energy, cl.free_energy),
                                       rel_diff(c.exact.force, cl.force),
                                       rel_diff(c.perturbative.free_energy, cl.perturbative_free_energy),
                                       rel_diff(c.perturbative.force, cl.perturbative_force)});
        out.push_back(make_check("classical limit (zeta_1 > 25) vs full Matsubara sum", worst, 1e-8));
    }
    {
        const Separation a = Separation::from_nm(5.0);
        const Scenario s(a, Temperature(0.0), IdealMetal{}, stat);
        const double kernel = energy_zero_temperature(s, opt).free_energy;
        const double series = zero_t_ideal_metal_energy(PolarizabilityValue(alpha0), a, 40).energy;
        out.push_back(make_check("T = 0 ideal metal: integral vs Casimir-Polder series",
                                 rel_diff(kernel, series), 1e-8));
    }
    {
        const Separation a = Separation::from_nm(3.0);
        const Scenario s(a, room, IdealMetal{}, osc);
        const auto series = ideal_metal_free_energy(osc, a, room);
        out.push_back(make_check("first order of ideal-metal series equals perturbative sum",
                                 rel_diff(series.terms.front().value,
                                          evaluate(s, opt).perturbative.free_energy),
                                 1e-8));
    }
    {
        const Scenario s(Separation::from_nm(2.0), room, plasma, osc);
        const double h = 1e-4 * s.separation().meters();
        const double up = evaluate(s.with_separation(Separation(s.separation().meters() + h)), opt)
                              .exact.free_energy;
        const double dn = evaluate(s.with_separation(Separation(s.separation().meters() - h)), opt)
                              .exact.free_energy;
        const double fd = -(up - dn) / (2.0 * h);
        out.push_back(make_check("force equals -dF/da (central difference)",
                                 rel_diff(evaluate(s, opt).exact.force, fd), 1e-6));
    }
    {
        bool ok = true;
        std::ostringstream d;
        for (double nm : {1.0, 10.0, 100.0}) {
            const Scenario s(Separation::from_nm(nm), room, plasma, osc);
            const auto c = evaluate(s, opt);
            const auto dev = relative_deviation(c);
            const bool here = c.exact.free_energy <= c.perturbative.free_energy &&
                              c.perturbative.free_energy <= 0.0 &&
                              std::abs(c.exact.force) >= std::abs(c.perturbative.force) &&
                              dev.free_energy >= 0.0 && dev.force >= 0.0;
            if (!here) d << "violated at a = " << nm << " nm; ";
            ok = ok && here;
        }
        out.push_back({"sign ordering F_exact <= F_pert <= 0, |Force_exact| >= |Force_pert|", ok,
                       ok ? "a = 1, 10, 100 nm" : d.str()});
    }
    {
        const Scenario s(Separation::from_nm(100.0), room, plasma, osc);
        const double f1 = s.temperature().thermal_energy() * std::log1p(-l_function(s, 1, opt).x);
        const double bound = first_term_bound(s);
        std::ostringstream d;
        d << "|F_1| = " << std::abs(f1) << " J, bound " << bound << " J";
        out.push_back({"first Matsubara term below exponential bound", std::abs(f1) < bound, d.str()});
    }
    return out;
}

}  // namespace casimir
