#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "casimir/kernel.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {
const double wp = ev_to_angular_frequency(9.0);
const double gam = ev_to_angular_frequency(0.035);
const double alpha_he = au_to_si_polarizability(315.63).m3();
const Temperature room(300.0);

std::shared_ptr<const PolarizabilityTable> he_table() {
    std::ifstream in(CASIMIR_DATA_DIR "/he_star_sos.dat");
    return std::make_shared<const PolarizabilityTable>(parse_polarizability_table(in, PolarizabilityUnits::atomic));
}
std::shared_ptr<const OpticalTable> gold() {
    std::ifstream in(CASIMIR_DATA_DIR "/au_nk_lorentz_drude.dat");
    return std::make_shared<const OpticalTable>(parse_optical_table(in));
}
double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }
}  // namespace

TEST(Reflection, Vacuum) {
    const auto eps1 = PermittivityValue::from_eps(1.0);
    for (double z : {0.0, 0.3, 5.0})
        for (double y : {z + 0.1, z + 3.0}) {
            EXPECT_EQ(refl_tm(eps1, z, y), 0.0);
            EXPECT_EQ(refl_te(eps1, z, y), 0.0);
        }
}

TEST(Reflection, ZeroFrequencyFiniteEps) {
    const auto eps2 = PermittivityValue::from_eps(2.0);
    for (double y : {1e-3, 1.0, 50.0}) {
        EXPECT_DOUBLE_EQ(refl_tm(eps2, 0.0, y), 1.0 / 3.0);
        EXPECT_EQ(refl_te(eps2, 0.0, y), 0.0);
    }
}

TEST(Reflection, IdealMetal) {
    const auto r = SurfaceResponse::ideal_metal(0.7);
    EXPECT_EQ(refl_tm(r, 1.0), 1.0);
    EXPECT_EQ(refl_te(r, 1.0), -1.0);
}

TEST(Reflection, MatchesTextbookFormAndRange) {
    for (double eps : {1.5, 4.0, 100.0, 1e6})
        for (double z : {0.01, 1.0, 10.0})
            for (double dy : {0.0, 0.5, 5.0}) {
                const double y = z + dy;
                const auto e = PermittivityValue::from_eps(eps);
                const double tm = refl_tm(e, z, y), te = refl_te(e, z, y);
                EXPECT_NEAR(tm, oracle::r_tm(eps, z, y), 1e-12);
                EXPECT_NEAR(te, oracle::r_te(eps, z, y), 1e-12);
                EXPECT_GE(tm, 0.0);
                EXPECT_LT(tm, 1.0);
                EXPECT_GT(te, -1.0);
                EXPECT_LE(te, 0.0);
            }
}

TEST(Reflection, RejectsOutsideDomain) {
    const auto e = PermittivityValue::from_eps(2.0);
    EXPECT_THROW(refl_tm(e, 0.0, 0.0), DomainError);
    EXPECT_THROW(refl_te(e, 1.0, 0.5), DomainError);
    EXPECT_THROW(refl_tm(e, -1.0, 1.0), DomainError);
}

TEST(MatsubaraIntegral, IdealMetalValues) {
    const Separation a = Separation::from_nm(10.0);
    EXPECT_NEAR(matsubara_integral(IdealMetal{}, a, 0.0).I, 4.0, 1e-12);
    EXPECT_NEAR(matsubara_integral(IdealMetal{}, a, 1.0).I, 10.0 / M_E, 1e-12);
    EXPECT_NEAR(ideal_metal_integral(1.0), 3.67879441171, 1e-10);
}

TEST(MatsubaraIntegral, ConstantEpsAtZeroFrequency) {
    const Separation a = Separation::from_nm(10.0);
    const DielectricOscillator eps4(4.0, INFINITY);
    const double oracle_I = oracle::simpson([](double y) { return 2 * y * y * std::exp(-y) * 0.6; }, 0.0, 80.0);
    EXPECT_NEAR(oracle_I, 2.4, 1e-12);
    EXPECT_NEAR(matsubara_integral(eps4, a, 0.0).I, oracle_I, 1e-10);
}

TEST(MatsubaraIntegral, ConstantEpsBruteForce) {
    const Separation a = Separation::from_nm(10.0);
    for (double eps : {1.5, 4.0, 80.0})
        for (double z : {0.05, 0.8, 4.0}) {
            const DielectricOscillator m(eps, INFINITY);
            EXPECT_NEAR(rel(matsubara_integral(m, a, z).I, oracle::I_const_eps(eps, z)), 0.0, 1e-10)
                << "eps=" << eps << " zeta=" << z;
        }
}

TEST(MatsubaraIntegral, Majorant) {
    const Separation a = Separation::from_nm(5.0);
    const std::vector<PermittivityModel> walls{PlasmaModel(wp), DrudeModel(wp, gam),
                                               TabulatedKK{gold(), PlasmaModel(wp)}};
    for (const auto& w : walls)
        for (double z : {0.0, 1e-3, 0.1, 1.0, 10.0, 40.0}) {
            const double I = matsubara_integral(w, a, z).I;
            EXPECT_GE(I, 0.0);
            EXPECT_LE(I, ideal_metal_integral(z) * (1 + 1e-12));
        }
}

TEST(MatsubaraIntegral, PlasmaZeroFrequencyIsLimit) {
    // l = 0 uses the zeta -> 0 limit of zeta^2 (eps - 1); compare with a tiny zeta.
    const Separation a = Separation::from_nm(2.0);
    const double z = 1e-7;
    const double I0 = matsubara_integral(PlasmaModel(wp), a, 0.0).I;
    const double Ieps = matsubara_integral(PlasmaModel(wp), a, z).I;
    EXPECT_NEAR(rel(Ieps, I0), 0.0, 1e-6);
    // Drude: no TE/plasma term survives; TM reflection is 1, giving the ideal-metal 4.
    EXPECT_NEAR(matsubara_integral(DrudeModel(wp, gam), a, 0.0).I, 4.0, 1e-12);
}

TEST(LFunction, ZeroPolarizability) {
    const Scenario s(Separation::from_nm(1.0), room, PlasmaModel(wp), StaticPolarizability(0.0));
    for (int l : {0, 1, 50}) EXPECT_EQ(l_function(s, l).L, 1.0);
}

TEST(LFunction, IdealMetalZeroTerm) {
    const Separation a = Separation::from_nm(1.0);
    const Scenario s(a, room, IdealMetal{}, StaticPolarizability(alpha_he));
    const auto t = l_function(s, 0);
    EXPECT_NEAR(t.L, 1.0 - alpha_he / (2.0 * std::pow(a.meters(), 3)), 1e-14);
    EXPECT_EQ(t.weight, 0.5);
    EXPECT_EQ(l_function(s, 1).weight, 1.0);
}

TEST(LFunction, BreakdownBelowCriticalSeparation) {
    // Oracle: bisection root of 1 - alpha0/(2a^3).
    double lo = 0.1e-9, hi = 1e-9;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (1.0 - alpha_he / (2 * mid * mid * mid) > 0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(critical_separation(alpha_he), hi, 1e-22);
    EXPECT_NEAR(hi * 1e9, 0.286, 0.005);
    const Scenario below(Separation(0.99 * hi), room, IdealMetal{}, StaticPolarizability(alpha_he), 0.1e-9);
    try {
        l_function(below, 0);
        FAIL();
    } catch (const BreakdownError& e) {
        EXPECT_NEAR(e.critical_separation(), hi, 1e-20);
        EXPECT_NE(std::string(e.what()).find("nonperturbative breakdown"), std::string::npos);
    }
    EXPECT_THROW(evaluate(below), BreakdownError);
    const Scenario above(Separation(1.01 * hi), room, IdealMetal{}, StaticPolarizability(alpha_he), 0.1e-9);
    EXPECT_NO_THROW(l_function(above, 0));
}

TEST(Scenario, SeparationFloor) {
    EXPECT_THROW(Scenario(Separation::from_nm(0.5), room, IdealMetal{}, StaticPolarizability(alpha_he)), DomainError);
    EXPECT_NO_THROW(Scenario(Separation::from_nm(0.8), room, IdealMetal{}, StaticPolarizability(alpha_he)));
}

TEST(Interaction, ZeroPolarizabilityIsZero) {
    for (double T : {0.0, 300.0}) {
        const Scenario s(Separation::from_nm(3.0), Temperature(T), PlasmaModel(wp), StaticPolarizability(0.0));
        const auto c = evaluate(s);
        EXPECT_EQ(c.exact.free_energy, 0.0);
        EXPECT_EQ(c.exact.force, 0.0);
        EXPECT_EQ(c.perturbative.free_energy, 0.0);
        EXPECT_EQ(c.perturbative.force, 0.0);
        EXPECT_THROW(relative_deviation(c), DomainError);
    }
}

TEST(Interaction, ClassicalRegimeIdealMetal) {
    // a*T large: only l = 0 survives. alpha0 = a^3 gives alpha0/(2a^3) = 1/2.
    const Separation a = Separation::from_nm(50'000.0);
    const double a3 = std::pow(a.meters(), 3);
    const Scenario s(a, room, IdealMetal{}, StaticPolarizability(a3));
    const auto c = evaluate(s);
    const double kT = room.thermal_energy();
    EXPECT_NEAR(rel(c.exact.free_energy, 0.5 * kT * std::log(0.5)), 0.0, 1e-12);
    // l = 0 of the force sum: -(kT/2a) (alpha0/8a^3) 12 / (1 - alpha0/(2a^3)).
    EXPECT_NEAR(rel(c.exact.force, -(3 * kT / (4 * a.meters())) / (1 - 0.5)), 0.0, 1e-12);
    EXPECT_NEAR(rel(c.perturbative.free_energy, -kT / 4), 0.0, 1e-12);
    EXPECT_NEAR(rel(c.perturbative.force, -3 * kT / (4 * a.meters())), 0.0, 1e-12);
}

TEST(Interaction, ExactVsPerturbativeBoundTermByTerm) {
    const Separation a = Separation::from_nm(1.0);
    const Scenario s(a, room, PlasmaModel(wp), SingleOscillator(alpha_he, ev_to_angular_frequency(1.18)));
    const auto c = evaluate(s);
    // |F - F_pert| <= kT sum' x_l^2, x_l <= 1/2.
    CompensatedSum bound;
    for (std::int64_t l = 0; l < c.exact.terms_used; ++l) {
        const auto t = l_function(s, l);
        ASSERT_LE(t.x, 0.5);
        bound += t.weight * t.x * t.x;
    }
    const double gap = std::abs(c.exact.free_energy - c.perturbative.free_energy);
    EXPECT_GT(gap, 0.0);
    EXPECT_LE(gap, room.thermal_energy() * bound.value());
}

TEST(Interaction, ForceIsMinusDerivative) {
    const std::vector<PermittivityModel> walls{IdealMetal{}, PlasmaModel(wp), DrudeModel(wp, gam)};
    for (const auto& w : walls)
        for (double nm : {1.0, 7.0, 60.0}) {
            const Scenario s(Separation::from_nm(nm), room, w, SingleOscillator(alpha_he, 2e16));
            const double am = s.separation().meters(), h = 1e-4 * am;
            const auto up = evaluate(s.with_separation(Separation(am + h)));
            const auto dn = evaluate(s.with_separation(Separation(am - h)));
            const auto c = evaluate(s);
            EXPECT_LT(rel(c.exact.force, -(up.exact.free_energy - dn.exact.free_energy) / (2 * h)), 1e-6);
            EXPECT_LT(rel(c.perturbative.force, -(up.perturbative.free_energy - dn.perturbative.free_energy) / (2 * h)),
                      1e-6);
        }
}

TEST(Interaction, SignOrderingAndAttraction) {
    const auto he = he_table();
    const std::vector<PermittivityModel> walls{PlasmaModel(wp), DrudeModel(wp, gam), TabulatedKK{gold(), PlasmaModel(wp)}};
    for (const auto& w : walls)
        for (double nm : {0.8, 3.0, 30.0}) {
            const Scenario s(Separation::from_nm(nm), room, w, TabulatedPolarizability{he});
            const auto c = evaluate(s);
            EXPECT_LE(c.exact.free_energy, c.perturbative.free_energy);
            EXPECT_LE(c.perturbative.free_energy, 0.0);
            EXPECT_LE(c.exact.force, c.perturbative.force);
            EXPECT_LE(c.perturbative.force, 0.0);
            const auto d = relative_deviation(c);
            EXPECT_GE(d.free_energy, 0.0);
            EXPECT_GE(d.force, 0.0);
        }
}

TEST(Interaction, DeviationDecreasesWithSeparation) {
    const Scenario s(Separation::from_nm(0.8), room, TabulatedKK{gold(), PlasmaModel(wp)}, TabulatedPolarizability{he_table()});
    double prev = INFINITY;
    for (double nm : {0.8, 1.6, 3.2, 6.4, 12.8}) {
        const double d = relative_deviation(s.with_separation(Separation::from_nm(nm))).free_energy;
        EXPECT_LT(d, prev);
        prev = d;
    }
}

TEST(Interaction, NamedWrappers) {
    const Scenario s(Separation::from_nm(2.0), room, PlasmaModel(wp), StaticPolarizability(alpha_he));
    const auto c = evaluate(s);
    EXPECT_EQ(free_energy_exact(s).free_energy, c.exact.free_energy);
    EXPECT_EQ(force_exact(s).force, c.exact.force);
    EXPECT_EQ(free_energy_perturbative(s).free_energy, c.perturbative.free_energy);
    EXPECT_EQ(force_perturbative(s).force, c.perturbative.force);
    EXPECT_GT(c.exact.terms_used, 100);
    EXPECT_FALSE(c.exact.reached_term_cap);
    EXPECT_EQ(c.exact.mode, SummationMode::matsubara_sum);
    EXPECT_THROW(energy_zero_temperature(s), DomainError);
    EXPECT_THROW(free_energy_exact(s.with_temperature(Temperature(0.0))), DomainError);
}

TEST(Interaction, CacheGivesIdenticalResults) {
    const Scenario s(Separation::from_nm(1.0), room, TabulatedKK{gold(), PlasmaModel(wp)}, TabulatedPolarizability{he_table()});
    const SpectralCache cache(s.wall(), s.atom(), room, 20000);
    const auto a = evaluate(s), b = evaluate(s, {}, &cache);
    EXPECT_EQ(a.exact.free_energy, b.exact.free_energy);
    EXPECT_EQ(a.exact.force, b.exact.force);
    EXPECT_EQ(a.perturbative.free_energy, b.perturbative.free_energy);
}

TEST(ZeroTemperature, CasimirPolderLeadingTerm) {
    const double alpha0 = alpha_he;
    for (double nm : {100.0, 1000.0}) {
        const Separation a = Separation::from_nm(nm);
        const Scenario s(a, Temperature(0.0), IdealMetal{}, StaticPolarizability(alpha0));
        const auto r = energy_zero_temperature(s);
        EXPECT_EQ(r.mode, SummationMode::zero_t_integral);
        const double cp = -3 * constants::hbar * constants::c * alpha0 / (8 * M_PI * std::pow(a.meters(), 4));
        EXPECT_NEAR(r.free_energy / cp, 1.0, 1e-6);
        EXPECT_LT(r.force, 0.0);
    }
}

TEST(ZeroTemperature, SecondCoefficient) {
    const double c2 = oracle::simpson([](double z) { return std::pow(z * z + 2 * z + 2, 2) * std::exp(-2 * z); }, 0.0, 60.0);
    EXPECT_NEAR(c2, 8.25, 1e-9);
}

TEST(ZeroTemperature, ForceIsMinusDerivative) {
    const Scenario s(Separation::from_nm(5.0), Temperature(0.0), PlasmaModel(wp), SingleOscillator(alpha_he, 2e16));
    const double am = 5e-9, h = 1e-4 * am;
    const double fd = -(energy_zero_temperature(s.with_separation(Separation(am + h))).free_energy -
                        energy_zero_temperature(s.with_separation(Separation(am - h))).free_energy) / (2 * h);
    EXPECT_LT(rel(energy_zero_temperature(s).force, fd), 1e-6);
}
