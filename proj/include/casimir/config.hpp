#pragma once

// Flat key=value run configuration and construction of the wall and atom
// models it names.

#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/sweep.hpp"

namespace casimir {

enum class OutputFormat { csv, json };

struct RunConfig {
    // Atom: a table, or alpha0 (+ optional oscillator frequency) in atomic units.
    std::string atom_table;
    PolarizabilityUnits atom_units = PolarizabilityUnits::atomic;
    std::optional<double> alpha0_au;
    std::optional<double> omega0_ev;

    // Wall.
    std::string material = "plasma";  // ideal | plasma | drude | tabulated
    std::string optical_table;
    std::string extrapolation = "plasma";  // plasma | drude
    double omega_p_ev = 9.0;
    double gamma_ev = 0.035;

    SweepSpec sweep{};
    double a_nm = 1.0;  // single-point evaluation
    double min_separation_nm = 0.8;

    OutputFormat format = OutputFormat::csv;
    std::string output = "-";
    bool strict = false;
    unsigned threads = 0;
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto item = trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline double parse_double(std::string_view key, std::string_view v) {
    std::vector<double> f;
    if (!parse_fields(v, f) || f.size() != 1)
        throw DomainError("config key '" + std::string(key) + "': expected a number, got '" +
                          std::string(v) + "'");
    return f.front();
}

inline bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw DomainError("config key '" + std::string(key) + "': expected a boolean");
}

}  // namespace detail

inline std::vector<Quantity> parse_quantities(std::string_view v) {
    std::vector<Quantity> out;
    for (const auto& item : detail::split_list(v)) {
        if (item == "free_energy")
            out.push_back(Quantity::free_energy);
        else if (item == "force")
            out.push_back(Quantity::force);
        else if (item == "deviation")
            out.push_back(Quantity::deviation);
        else
            throw DomainError("unknown quantity '" + item + "' (free_energy, force, deviation)");
    }
    if (out.empty()) throw DomainError("quantities must not be empty");
    return out;
}

inline std::vector<Theory> parse_theories(std::string_view v) {
    std::vector<Theory> out;
    for (const auto& item : detail::split_list(v)) {
        if (item == "exact")
            out.push_back(Theory::exact);
        else if (item == "perturbative")
            out.push_back(Theory::perturbative);
        else
            throw DomainError("unknown theory '" + item + "' (exact, perturbative)");
    }
    if (out.empty()) throw DomainError("theories must not be empty");
    return out;
}

/// Applies one key=value setting. Keys mirror the long CLI flags with '_'
/// in place of '-'.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    using detail::parse_double;
    const std::string v(value);
    if (key == "atom_table") cfg.atom_table = v;
    else if (key == "atom_units") {
        if (v == "au") cfg.atom_units = PolarizabilityUnits::atomic;
        else if (v == "si") cfg.atom_units = PolarizabilityUnits::si;
        else throw DomainError("atom_units must be au or si");
    }
    else if (key == "alpha0_au") cfg.alpha0_au = parse_double(key, value);
    else if (key == "omega0_ev") cfg.omega0_ev = parse_double(key, value);
    else if (key == "material") {
        if (v != "ideal" && v != "plasma" && v != "drude" && v != "tabulated")
            throw DomainError("material must be ideal, plasma, drude or tabulated");
        cfg.material = v;
    }
    else if (key == "optical_table") cfg.optical_table = v;
    else if (key == "extrapolation") {
        if (v != "plasma" && v != "drude") throw DomainError("extrapolation must be plasma or drude");
        cfg.extrapolation = v;
    }
    else if (key == "omega_p_ev") cfg.omega_p_ev = parse_double(key, value);
    else if (key == "gamma_ev") cfg.gamma_ev = parse_double(key, value);
    else if (key == "temperature_k") cfg.sweep.temperature = parse_double(key, value);
    else if (key == "a_min_nm") cfg.sweep.a_min = parse_double(key, value) / 1e9;
    else if (key == "a_max_nm") cfg.sweep.a_max = parse_double(key, value) / 1e9;
    else if (key == "a_nm") cfg.a_nm = parse_double(key, value);
    else if (key == "min_separation_nm") cfg.min_separation_nm = parse_double(key, value);
    else if (key == "points") {
        const double p = parse_double(key, value);
        if (p != std::floor(p) || p < 1) throw DomainError("points must be a positive integer");
        cfg.sweep.points = static_cast<int>(p);
    }
    else if (key == "spacing") {
        if (v == "log") cfg.sweep.spacing = Spacing::log;
        else if (v == "linear") cfg.sweep.spacing = Spacing::linear;
        else throw DomainError("spacing must be log or linear");
    }
    else if (key == "theories") cfg.sweep.theories = parse_theories(value);
    else if (key == "quantities") cfg.sweep.quantities = parse_quantities(value);
    else if (key == "format") {
        if (v == "csv") cfg.format = OutputFormat::csv;
        else if (v == "json") cfg.format = OutputFormat::json;
        else throw DomainError("format must be csv or json");
    }
    else if (key == "output") cfg.output = v;
    else if (key == "strict") cfg.strict = detail::parse_bool(key, value);
    else if (key == "threads") {
        const double t = parse_double(key, value);
        if (t < 0 || t != std::floor(t)) throw DomainError("threads must be a non-negative integer");
        cfg.threads = static_cast<unsigned>(t);
    }
    else throw DomainError("unknown config key '" + std::string(key) + "'");
}

/// Reads "key = value" lines; '#' starts a comment.
inline void load_config(std::istream& in, RunConfig& cfg) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        try {
            apply_setting(cfg, key, value);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
}

inline void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        load_config(in, cfg);
    } catch (const ParseError& e) {
        throw e.in_file(path);
    }
}

inline PermittivityModel make_wall(const RunConfig& cfg) {
    const double omega_p = ev_to_angular_frequency(cfg.omega_p_ev);
    const double gamma = ev_to_angular_frequency(cfg.gamma_ev);
    if (cfg.material == "ideal") return IdealMetal{};
    if (cfg.material == "plasma") return PlasmaModel(omega_p);
    if (cfg.material == "drude") return DrudeModel(omega_p, gamma);
    if (cfg.material == "tabulated") {
        if (cfg.optical_table.empty())
            throw DomainError("material 'tabulated' needs an optical table (--optical-table)");
        std::ifstream in(cfg.optical_table);
        if (!in) throw std::runtime_error("cannot open optical table '" + cfg.optical_table + "'");
        std::shared_ptr<const OpticalTable> table;
        try {
            table = std::make_shared<const OpticalTable>(parse_optical_table(in));
        } catch (const ParseError& e) {
            throw e.in_file(cfg.optical_table);
        }
        if (cfg.extrapolation == "drude") return TabulatedKK{table, DrudeModel(omega_p, gamma)};
        return TabulatedKK{table, PlasmaModel(omega_p)};
    }
    throw DomainError("unknown material '" + cfg.material + "'");
}

inline PolarizabilityModel make_atom(const RunConfig& cfg) {
    if (!cfg.atom_table.empty()) {
        std::ifstream in(cfg.atom_table);
        if (!in) throw std::runtime_error("cannot open polarizability table '" + cfg.atom_table + "'");
        try {
            return TabulatedPolarizability{
                std::make_shared<const PolarizabilityTable>(parse_polarizability_table(in, cfg.atom_units))};
        } catch (const ParseError& e) {
            throw e.in_file(cfg.atom_table);
        }
    }
    if (cfg.alpha0_au) {
        const double alpha0 = au_to_si_polarizability(*cfg.alpha0_au).m3();
        if (cfg.omega0_ev) return SingleOscillator(alpha0, ev_to_angular_frequency(*cfg.omega0_ev));
        return StaticPolarizability(alpha0);
    }
    throw DomainError("no atom given: set --atom-table or --alpha0-au");
}

}  // namespace casimir
