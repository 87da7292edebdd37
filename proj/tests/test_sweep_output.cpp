#include <gtest/gtest.h>

#include <charconv>
#include <clocale>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/output.hpp"
#include "casimir/sweep.hpp"

using namespace casimir;

namespace {
const double wp = ev_to_angular_frequency(9.0);
const double alpha_he = au_to_si_polarizability(315.63).m3();

SweepSpec small_spec() {
    SweepSpec s;
    s.a_min = 0.8e-9;
    s.a_max = 20e-9;
    s.points = 7;
    return s;
}
}  // namespace

TEST(SweepSpec, GridAndValidation) {
    SweepSpec s = small_spec();
    const auto g = s.grid();
    ASSERT_EQ(g.size(), 7u);
    EXPECT_EQ(g.front(), 0.8e-9);
    EXPECT_EQ(g.back(), 20e-9);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    EXPECT_NEAR(g[1] / g[0], g[2] / g[1], 1e-12);
    s.spacing = Spacing::linear;
    const auto gl = s.spacing == Spacing::linear ? s.grid() : g;
    EXPECT_NEAR(gl[2] - gl[1], gl[1] - gl[0], 1e-20);
    s.a_max = 0.1e-9;
    EXPECT_THROW(s.validate(), DomainError);
    s = small_spec();
    s.points = 0;
    EXPECT_THROW(s.validate(), DomainError);
    s = small_spec();
    s.quantities.clear();
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(Sweep, SinglePointZeroAlpha) {
    SweepSpec s = small_spec();
    s.points = 1;
    const auto r = run_sweep(s, PlasmaModel(wp), StaticPolarizability(0.0));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].free_energy_exact, 0.0);
    EXPECT_EQ(r[0].force_exact, 0.0);
    EXPECT_EQ(r[0].free_energy_perturbative, 0.0);
    EXPECT_TRUE(std::isnan(r[0].delta_free_energy));
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const auto spec = small_spec();
    SweepOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const auto a = run_sweep(spec, PlasmaModel(wp), SingleOscillator(alpha_he, 2e16), one);
    const auto b = run_sweep(spec, PlasmaModel(wp), SingleOscillator(alpha_he, 2e16), many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(identical(a[i], b[i]));
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].ok());
        const Scenario sc(Separation(a[i].a), Temperature(300.0), PlasmaModel(wp), SingleOscillator(alpha_he, 2e16));
        EXPECT_EQ(evaluate(sc).exact.free_energy, a[i].free_energy_exact);
    }
}

TEST(Sweep, BreakdownFlaggedOrStrict) {
    SweepSpec s;
    s.a_min = 0.2e-9;
    s.a_max = 1e-9;
    s.points = 3;
    SweepOptions o;
    o.min_separation = 0.1e-9;
    const auto r = run_sweep(s, IdealMetal{}, StaticPolarizability(alpha_he), o);
    EXPECT_EQ(r[0].status, "breakdown");
    EXPECT_TRUE(std::isnan(r[0].free_energy_exact));
    EXPECT_EQ(r[2].status, "ok");
    o.strict = true;
    EXPECT_THROW(run_sweep(s, IdealMetal{}, StaticPolarizability(alpha_he), o), BreakdownError);
}

TEST(Output, ScaledColumnsAndUnits) {
    const auto spec = small_spec();
    const auto recs = run_sweep(spec, PlasmaModel(wp), StaticPolarizability(alpha_he));
    const auto cols = output_columns(spec);
    auto col = [&](const std::string& name) {
        for (const auto& c : cols)
            if (c.name == name) return c.value;
        throw std::runtime_error("no column " + name);
    };
    for (const auto& r : recs) {
        EXPECT_DOUBLE_EQ(col("F_exact_a3_J_m3")(r), r.free_energy_exact * r.a * r.a * r.a);
        EXPECT_DOUBLE_EQ(col("Force_exact_a4_N_m4")(r), r.force_exact * r.a * r.a * r.a * r.a);
        EXPECT_DOUBLE_EQ(col("F_exact_eV")(r), r.free_energy_exact / 1.602176634e-19);
        EXPECT_DOUBLE_EQ(col("Force_pert_pN")(r), r.force_perturbative * 1e12);
    }
}

TEST(Output, EmptyCsvIsHeaderOnly) {
    std::ostringstream out;
    write_csv(out, {}, output_columns(SweepSpec{}));
    const std::string s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1);
    EXPECT_EQ(s.rfind("a_m,a_nm,F_exact_J,F_exact_eV", 0), 0u);
    EXPECT_NE(s.find("deltaF,deltaForce,terms_used,status"), std::string::npos);
}

TEST(Output, CsvNumberFormat) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(-1.25e-21), "-1.2499999999999999e-21");
    for (double v : {1.0 / 3.0, -2.0536922423170672e-21, 6.02214076e23, 5e-324})
    {
        const std::string text = format_number(v);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        EXPECT_EQ(back, v) << text;
    }
    EXPECT_EQ(format_number(NAN), "nan");
    // Locale must not affect the separator.
    if (std::setlocale(LC_ALL, "de_DE.UTF-8")) {
        EXPECT_EQ(format_number(0.5), "0.5");
        std::setlocale(LC_ALL, "C");
    }
}

TEST(Output, SelectedColumnsOnly) {
    SweepSpec s = small_spec();
    s.quantities = {Quantity::force};
    s.theories = {Theory::exact};
    std::vector<std::string> names;
    for (const auto& c : output_columns(s)) names.push_back(c.name);
    EXPECT_EQ(names, (std::vector<std::string>{"a_m", "a_nm", "Force_exact_N", "Force_exact_pN",
                                               "Force_exact_a4_N_m4", "terms_used"}));
}

TEST(Output, JsonRoundTrip) {
    SweepSpec spec = small_spec();
    spec.a_min = 0.2e-9;
    SweepOptions o;
    o.min_separation = 0.1e-9;
    const auto recs = run_sweep(spec, PlasmaModel(wp), StaticPolarizability(alpha_he), o);
    ASSERT_EQ(recs[0].status, "breakdown");
    std::ostringstream out;
    write_json(out, recs, output_columns(spec));
    const auto back = records_from_json(out.str());
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_TRUE(identical(back[i], recs[i])) << i;
}

TEST(Output, DeterministicBytes) {
    const auto spec = small_spec();
    auto render = [&] {
        std::ostringstream out;
        write_csv(out, run_sweep(spec, PlasmaModel(wp), SingleOscillator(alpha_he, 2e16)), output_columns(spec));
        return out.str();
    };
    EXPECT_EQ(render(), render());
}

TEST(Sweep, CoolingHasMinorImpactOnDeviations) {
    std::ifstream in(CASIMIR_DATA_DIR "/he_star_sos.dat");
    const PolarizabilityModel he = TabulatedPolarizability{
        std::make_shared<const PolarizabilityTable>(parse_polarizability_table(in, PolarizabilityUnits::atomic))};
    SweepSpec spec;
    spec.a_min = 0.8e-9;
    spec.a_max = 10e-9;
    spec.points = 8;
    const auto warm = run_sweep(spec, PlasmaModel(wp), he);
    spec.temperature = 100.0;
    const auto cold = run_sweep(spec, PlasmaModel(wp), he);
    for (std::size_t i = 0; i < warm.size(); ++i) {
        EXPECT_LT(std::abs(warm[i].delta_free_energy - cold[i].delta_free_energy), 0.005);
        EXPECT_LT(std::abs(warm[i].delta_force - cold[i].delta_force), 0.005);
    }
}
