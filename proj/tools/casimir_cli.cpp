// casimir-polder: sweeps and single points of the atom-wall free energy and
// force, exact (logarithmic) and perturbative.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "casimir/casimir.hpp"

namespace {

using namespace casimir;

// Writes to stdout for "-", else to a file; throws if the file can't be opened.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void close(const std::string& path) {
        if (!file_.is_open()) {
            std::cout.flush();
            return;
        }
        file_.close();
        if (file_.fail()) throw std::runtime_error("failed writing '" + path + "'");
    }

private:
    std::ofstream file_;
};

SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions o;
    o.threads = cfg.threads;
    o.strict = cfg.strict;
    o.min_separation = cfg.min_separation_nm / 1e9;
    return o;
}

void emit(const RunConfig& cfg, const std::vector<OutputRecord>& records) {
    Sink sink(cfg.output);
    const auto cols = output_columns(cfg.sweep);
    if (cfg.format == OutputFormat::json)
        write_json(sink.stream(), records, cols);
    else
        write_csv(sink.stream(), records, cols);
    sink.close(cfg.output);
}

int cmd_sweep(const RunConfig& cfg) {
    const auto wall = make_wall(cfg);
    const auto atom = make_atom(cfg);
    emit(cfg, run_sweep(cfg.sweep, wall, atom, sweep_options(cfg)));
    return 0;
}

int cmd_point(RunConfig cfg) {
    cfg.sweep.a_min = cfg.sweep.a_max = cfg.a_nm / 1e9;
    cfg.sweep.points = 1;
    return cmd_sweep(cfg);
}

int cmd_limits(const RunConfig& cfg) {
    const auto wall = make_wall(cfg);
    const auto atom = make_atom(cfg);
    const Separation a = Separation::from_nm(cfg.a_nm);
    const Temperature T(cfg.sweep.temperature);
    const PolarizabilityValue alpha0(static_polarizability(atom));

    nlohmann::ordered_json out;
    out["a_m"] = a.meters();
    out["temperature_K"] = T.kelvin();
    out["alpha0_m3"] = alpha0.m3();
    out["alpha0_over_2a3"] = alpha0.m3() / (2.0 * std::pow(a.meters(), 3));
    out["critical_separation_m"] = critical_separation(alpha0.m3());
    if (!T.is_zero()) {
        out["zeta_1"] = dimensionless_matsubara(a, T, 1);
        const auto cl = classical_limit(alpha0, a, T);
        out["classical_F_J"] = cl.free_energy;
        out["classical_Force_N"] = cl.force;
        out["classical_F_pert_J"] = cl.perturbative_free_energy;
        out["classical_Force_pert_N"] = cl.perturbative_force;
        out["first_term_bound_J"] = first_term_bound(Scenario(a, T, wall, atom, cfg.min_separation_nm / 1e9));
        const auto im = ideal_metal_free_energy(atom, a, T);
        out["ideal_metal_F_J"] = im.closed_form;
        out["ideal_metal_series_F_J"] = im.series_sum;
        out["ideal_metal_series_order"] = im.truncation_order;
    }
    if (alpha0.m3() / (4.0 * std::pow(a.meters(), 3)) < 0.5) {
        const auto zt = zero_t_ideal_metal_energy(alpha0, a);
        out["casimir_polder_E_J"] = zt.casimir_polder;
        out["zero_T_ideal_metal_E_J"] = zt.energy;
        out["zero_T_series_order"] = zt.truncation_order;
    }

    Sink sink(cfg.output);
    if (cfg.format == OutputFormat::json) {
        sink.stream() << out.dump(2) << '\n';
    } else {
        sink.stream() << "quantity,value\n";
        for (const auto& [k, v] : out.items()) {
            sink.stream() << k << ',';
            if (v.is_number_float())
                sink.stream() << format_number(v.get<double>());
            else
                sink.stream() << v.dump();
            sink.stream() << '\n';
        }
    }
    sink.close(cfg.output);
    return 0;
}

int cmd_self_check() {
    const auto checks = run_self_check();
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << "]\n";
        all = all && c.passed;
    }
    std::cout << (all ? "self-check passed\n" : "self-check FAILED\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Atom-wall free energy and force: exact vs perturbative Lifshitz theory"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    // Flag values are kept as text and applied through the same path as the
    // config file, after it, so they take precedence.
    std::vector<std::pair<std::string, std::string>> order;
    auto opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
        return app.add_option_function<std::string>(
            flag, [&, key](const std::string& v) { order.emplace_back(key, v); }, help);
    };

    opt("--atom-table", "atom_table", "Polarizability table: xi alpha per line");
    opt("--atom-units", "atom_units", "Units of the atom table")->check(CLI::IsMember({"au", "si"}));
    opt("--alpha0-au", "alpha0_au", "Static polarizability in atomic units (instead of a table)");
    opt("--omega0-ev", "omega0_ev", "Oscillator frequency for --alpha0-au, eV (default: static atom)");
    opt("--material", "material", "Wall model")
        ->check(CLI::IsMember({"ideal", "plasma", "drude", "tabulated"}));
    opt("--optical-table", "optical_table", "Optical data: energy_eV n k per line");
    opt("--extrapolation", "extrapolation", "Low-frequency extrapolation of optical data")
        ->check(CLI::IsMember({"plasma", "drude"}));
    opt("--omega-p-ev", "omega_p_ev", "Plasma frequency, eV");
    opt("--gamma-ev", "gamma_ev", "Drude relaxation, eV");
    opt("--temperature-k", "temperature_k", "Temperature, K (0 selects the zero-temperature integral)");
    opt("--a-min-nm", "a_min_nm", "Smallest separation, nm");
    opt("--a-max-nm", "a_max_nm", "Largest separation, nm");
    opt("--a-nm", "a_nm", "Separation for 'point' and 'limits', nm");
    opt("--min-separation-nm", "min_separation_nm", "Validity floor of the separation, nm");
    opt("--points", "points", "Number of grid points");
    opt("--spacing", "spacing", "Grid spacing")->check(CLI::IsMember({"log", "linear"}));
    opt("--theories", "theories", "Comma list of exact,perturbative");
    opt("--quantities", "quantities", "Comma list of free_energy,force,deviation");
    opt("--format", "format", "Output format")->check(CLI::IsMember({"csv", "json"}));
    opt("--output", "output", "Output file, '-' for stdout");
    opt("--threads", "threads", "Worker threads, 0 = all cores");
    bool strict = false;
    app.add_flag("--strict", strict, "Abort on the first nonperturbative breakdown");
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (default: $CASIMIR_KERNEL_CONFIG)");
    bool self_check_flag = false;
    app.add_flag("--self-check", self_check_flag, "Run the cross-oracle checks and exit");

    auto* sweep = app.add_subcommand("sweep", "Separation sweep");
    auto* point = app.add_subcommand("point", "Single separation (--a-nm)");
    auto* limits = app.add_subcommand("limits", "Closed-form limits at --a-nm");
    auto* self_check = app.add_subcommand("self-check", "Cross-oracle checks of kernel vs limits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (self_check_flag || self_check->parsed()) return cmd_self_check();

        RunConfig cfg;
        if (config_path.empty())
            if (const char* env = std::getenv("CASIMIR_KERNEL_CONFIG"); env && *env) config_path = env;
        if (!config_path.empty()) load_config_file(config_path, cfg);
        for (const auto& [key, value] : order) apply_setting(cfg, key, value);
        if (strict) cfg.strict = true;

        if (point->parsed()) return cmd_point(cfg);
        if (limits->parsed()) return cmd_limits(cfg);
        (void)sweep;
        return cmd_sweep(cfg);
    } catch (const BreakdownError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
