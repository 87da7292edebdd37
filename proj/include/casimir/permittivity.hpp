#pragma once

// Dielectric response of the wall on the imaginary frequency axis.

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/quantities.hpp"

namespace casimir {

/// eps -> infinity at every frequency; r_TM = -r_TE = 1.
struct IdealMetal {};

/// Lossless free-electron gas: eps(i xi) = 1 + omega_p^2 / xi^2.
struct PlasmaModel {
    explicit PlasmaModel(double omega_p) : omega_p(omega_p) {
        if (!(omega_p > 0.0) || !std::isfinite(omega_p))
            throw DomainError("plasma frequency must be positive");
    }
    double omega_p;  // rad/s
};

/// Dissipative free-electron gas: eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma)).
struct DrudeModel {
    DrudeModel(double omega_p, double gamma) : omega_p(omega_p), gamma(gamma) {
        if (!(omega_p > 0.0) || !std::isfinite(omega_p))
            throw DomainError("plasma frequency must be positive");
        if (!(gamma >= 0.0) || !std::isfinite(gamma))
            throw DomainError("relaxation frequency must be non-negative");
    }
    double omega_p;  // rad/s
    double gamma;    // rad/s
};

/// Insulator with finite static permittivity and one absorption line:
/// eps(i xi) = 1 + (eps0 - 1) / (1 + xi^2 / omega0^2).
struct DielectricOscillator {
    DielectricOscillator(double eps0, double omega0) : eps0(eps0), omega0(omega0) {
        if (!(eps0 >= 1.0) || !std::isfinite(eps0))
            throw DomainError("static permittivity must be finite and >= 1");
        if (!(omega0 > 0.0)) throw DomainError("oscillator frequency must be positive");
    }
    double eps0;
    double omega0;  // rad/s; may be +inf for a dispersionless dielectric
};

struct OpticalRow {
    double omega;     // rad/s
    double eps_imag;  // Im eps(omega) = 2 n k
};

/// Absorption spectrum Im eps(omega) sampled on a strictly increasing grid.
class OpticalTable {
public:
    explicit OpticalTable(std::vector<OpticalRow> rows) : rows_(std::move(rows)) {
        if (rows_.size() < 2) throw DomainError("optical table needs at least 2 rows");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!(rows_[i].omega >= 0.0) || !(rows_[i].eps_imag >= 0.0))
                throw DomainError("optical table row " + std::to_string(i) +
                                  ": frequency and Im eps must be non-negative");
            if (i > 0 && !(rows_[i].omega > rows_[i - 1].omega))
                throw DomainError("optical table frequencies must be strictly increasing");
        }
    }

    const std::vector<OpticalRow>& rows() const noexcept { return rows_; }
    double omega_min() const noexcept { return rows_.front().omega; }
    double omega_max() const noexcept { return rows_.back().omega; }

    /// (2/pi) * integral of omega Im eps(omega) / (omega^2 + xi^2) over the
    /// table range, trapezoidal rule on the native grid.
    double kramers_kronig(double xi) const {
        const double xi2 = xi * xi;
        CompensatedSum sum;
        double prev = rows_.front().omega * rows_.front().eps_imag /
                      (rows_.front().omega * rows_.front().omega + xi2);
        for (std::size_t i = 1; i < rows_.size(); ++i) {
            const auto& r = rows_[i];
            const double cur = r.omega * r.eps_imag / (r.omega * r.omega + xi2);
            sum += 0.5 * (r.omega - rows_[i - 1].omega) * (prev + cur);
            prev = cur;
        }
        return 2.0 / constants::pi * sum.value();
    }

private:
    std::vector<OpticalRow> rows_;
};

/// Optical data plus a free-electron model that supplies the response
/// below the first tabulated frequency.
struct TabulatedKK {
    std::shared_ptr<const OpticalTable> table;
    std::variant<PlasmaModel, DrudeModel> extrapolation;
};

using PermittivityModel =
    std::variant<IdealMetal, PlasmaModel, DrudeModel, DielectricOscillator, TabulatedKK>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Splits a data line into whitespace-separated decimal fields. Returns
/// false on a malformed number. Locale-independent.
inline bool parse_fields(std::string_view line, std::vector<double>& out) {
    out.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == ','))
            ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != ',') ++end;
        const char* first = line.data() + pos;
        const char* last = line.data() + end;
        if (*first == '+') ++first;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) return false;
        out.push_back(v);
        pos = end;
    }
    return true;
}

/// Calls fn(line_number, fields) for every non-comment, non-blank line.
template <class Fn>
void for_each_record(std::istream& in, std::size_t expected_fields, Fn&& fn) {
    std::string raw;
    std::vector<double> fields;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!parse_fields(line, fields)) throw ParseError("malformed number", line_no);
        if (fields.size() != expected_fields)
            throw ParseError("expected " + std::to_string(expected_fields) + " columns, found " +
                                 std::to_string(fields.size()),
                             line_no);
        fn(line_no, fields);
    }
}

}  // namespace detail

/// Reads "photon_energy_eV n k" records ('#' starts a comment). Energies must
/// be strictly ascending; Im eps = 2 n k.
inline OpticalTable parse_optical_table(std::istream& in) {
    std::vector<OpticalRow> rows;
    double last_energy = -1.0;
    detail::for_each_record(in, 3, [&](std::size_t line, const std::vector<double>& f) {
        const double energy = f[0], n = f[1], k = f[2];
        if (energy < 0.0) throw ParseError("negative photon energy", line);
        if (n < 0.0 || k < 0.0) throw ParseError("negative refractive index component", line);
        if (!(energy > last_energy)) throw ParseError("photon energies must be strictly ascending", line);
        last_energy = energy;
        rows.push_back({ev_to_angular_frequency(energy), 2.0 * n * k});
    });
    if (rows.empty()) throw ParseError("empty table", 0);
    if (rows.size() < 2) throw ParseError("optical table needs at least 2 rows", 0);
    return OpticalTable(std::move(rows));
}

inline bool is_metal(const PermittivityModel& model) {
    return !std::holds_alternative<DielectricOscillator>(model);
}

/// eps(i xi) - 1 for xi > 0 (xi = 0 allowed for dielectrics).
inline double susceptibility_imag_axis(const PermittivityModel& model, double xi) {
    if (!(xi >= 0.0)) throw DomainError("imaginary frequency must be non-negative");
    struct Visitor {
        double xi;
        double operator()(const IdealMetal&) const {
            throw DomainError("ideal metal has no finite permittivity; use its reflection limits");
        }
        double operator()(const PlasmaModel& m) const {
            if (xi == 0.0) throw DomainError("diverging permittivity at zero frequency (plasma model)");
            const double r = m.omega_p / xi;
            return r * r;
        }
        double operator()(const DrudeModel& m) const {
            if (xi == 0.0) throw DomainError("diverging permittivity at zero frequency (Drude model)");
            return m.omega_p * m.omega_p / (xi * (xi + m.gamma));
        }
        double operator()(const DielectricOscillator& m) const {
            if (std::isinf(m.omega0)) return m.eps0 - 1.0;
            const double r = xi / m.omega0;
            return (m.eps0 - 1.0) / (1.0 + r * r);
        }
        double operator()(const TabulatedKK& m) const {
            if (xi == 0.0)
                throw DomainError("diverging permittivity at zero frequency (tabulated data)");
            const double free = std::visit([this](const auto& e) { return Visitor{xi}(e); },
                                           m.extrapolation);
            return free + m.table->kramers_kronig(xi);
        }
    };
    return std::visit(Visitor{xi}, model);
}

inline PermittivityValue eps_imag_axis(const PermittivityModel& model, double xi) {
    return PermittivityValue::from_susceptibility(susceptibility_imag_axis(model, xi));
}

/// r_TM at zero frequency: (eps(0)-1)/(eps(0)+1), or 1 for metals.
inline double static_tm_reflection_factor(const PermittivityModel& model) {
    if (const auto* d = std::get_if<DielectricOscillator>(&model))
        return (d->eps0 - 1.0) / (d->eps0 + 1.0);
    return 1.0;
}

/// omega_p of the free-electron part that dominates as xi -> 0 with no
/// dissipation (plasma-type metals); 0 when dissipation removes the limit.
inline double lossless_plasma_frequency(const PermittivityModel& model) {
    if (const auto* p = std::get_if<PlasmaModel>(&model)) return p->omega_p;
    if (const auto* t = std::get_if<TabulatedKK>(&model))
        if (const auto* p = std::get_if<PlasmaModel>(&t->extrapolation)) return p->omega_p;
    if (const auto* d = std::get_if<DrudeModel>(&model))
        if (d->gamma == 0.0) return d->omega_p;
    if (const auto* t = std::get_if<TabulatedKK>(&model))
        if (const auto* d = std::get_if<DrudeModel>(&t->extrapolation))
            if (d->gamma == 0.0) return d->omega_p;
    return 0.0;
}

}  // namespace casimir
