#include <gtest/gtest.h>

#include <cmath>

#include "casimir/quantities.hpp"

using namespace casimir;

namespace {
// CODATA 2018, restated here so the test does not read the library's table.
constexpr double e = 1.602176634e-19, hbar = 1.054571817e-34, kB = 1.380649e-23;
constexpr double c = 299792458.0, a0 = 5.29177210903e-11;
}  // namespace

TEST(Quantities, EvToAngularFrequency) {
    EXPECT_EQ(ev_to_angular_frequency(0.0), 0.0);
    EXPECT_NEAR(ev_to_angular_frequency(1.0), 1.519267e15, 1e9);
    EXPECT_NEAR(ev_to_angular_frequency(1.0) / (e / hbar), 1.0, 1e-15);
    EXPECT_NEAR(ev_to_angular_frequency(9.0), 1.367e16, 1e13);
    EXPECT_THROW(ev_to_angular_frequency(-1.0), DomainError);
}

TEST(Quantities, AtomicUnitPolarizability) {
    EXPECT_EQ(au_to_si_polarizability(0.0).m3(), 0.0);
    EXPECT_NEAR(au_to_si_polarizability(1.0).m3(), 1.48185e-31, 1e-36);
    EXPECT_NEAR(au_to_si_polarizability(1.0).m3() / (a0 * a0 * a0), 1.0, 1e-15);
    EXPECT_NEAR(au_to_si_polarizability(315.63).m3(), 467.7e-31, 0.1e-31);
    EXPECT_THROW(au_to_si_polarizability(-1.0), DomainError);
}

TEST(Quantities, MatsubaraFrequency) {
    const Temperature T(300.0);
    EXPECT_EQ(matsubara_frequency(T, 0), 0.0);
    // Quoted as 2.466e14; exact CODATA arithmetic gives 2.4678e14.
    EXPECT_NEAR(matsubara_frequency(T, 1) / 2.466e14, 1.0, 1e-3);
    EXPECT_NEAR(matsubara_frequency(T, 1) / (2 * M_PI * kB * 300 / hbar), 1.0, 1e-15);
    EXPECT_THROW(matsubara_frequency(Temperature(0.0), 1), DomainError);
    EXPECT_THROW(matsubara_frequency(T, -1), DomainError);
}

TEST(Quantities, DimensionlessMatsubara) {
    const Temperature T(300.0);
    const double z1 = dimensionless_matsubara(Separation::from_nm(1.0), T, 1);
    EXPECT_NEAR(z1 / 1.645e-3, 1.0, 1e-3);
    EXPECT_NEAR(z1 / (4 * M_PI * 1e-9 * kB * 300 / (hbar * c)), 1.0, 1e-14);
    // Linear in l and in a.
    for (int l : {1, 7, 1000}) {
        const double za = dimensionless_matsubara(Separation::from_nm(3.0), T, l);
        const double z2a = dimensionless_matsubara(Separation::from_nm(6.0), T, l);
        EXPECT_NEAR(z2a / za, 2.0, 1e-15);
        EXPECT_NEAR(za / l, dimensionless_matsubara(Separation::from_nm(3.0), T, 1), 1e-15 * za);
    }
}

TEST(Quantities, RoundTrips) {
    for (double ev : {1e-3, 0.035, 1.0, 9.0, 1234.5})
        EXPECT_NEAR(angular_frequency_to_ev(ev_to_angular_frequency(ev)), ev, 1e-15 * ev);
    for (double au : {1e-3, 1.0, 315.63, 1e4})
        EXPECT_NEAR(si_to_au_polarizability(au_to_si_polarizability(au)), au, 1e-15 * au);
    for (double x : {1e-5, 1.0, 1e3})
        EXPECT_NEAR(angular_frequency_to_au(au_to_angular_frequency(x)), x, 1e-15 * x);
}

TEST(Quantities, Validation) {
    EXPECT_THROW(Separation(0.0), DomainError);
    EXPECT_THROW(Separation(-1e-9), DomainError);
    EXPECT_THROW(Separation(std::nan("")), DomainError);
    EXPECT_THROW(Temperature(-1.0), DomainError);
    EXPECT_NO_THROW(Temperature(0.0));
    EXPECT_TRUE(Temperature(0.0).is_zero());
    EXPECT_THROW(PolarizabilityValue(-1.0), DomainError);
    EXPECT_THROW(PermittivityValue::from_eps(0.5), DomainError);
    EXPECT_NEAR(Separation::from_nm(5.0).characteristic_frequency(), c / 1e-8, 1e-6);
    EXPECT_EQ(Separation::from_nm(0.8).meters(), 0.8e-9);
}
