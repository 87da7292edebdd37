#pragma once

// CSV and JSON serialization of sweep records. Numbers are written with 17
// significant digits through std::to_chars, so output is locale-independent
// and byte-identical for identical inputs.

#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "casimir/quantities.hpp"
#include "casimir/sweep.hpp"

namespace casimir {

struct Column {
    std::string name;  // header, unit carried as suffix
    std::function<double(const OutputRecord&)> value;
};

namespace detail {
inline double scaled(double v, double a, int power) { return v * std::pow(a, power); }
}  // namespace detail

/// Columns for the requested quantities and theories. a_m, a_nm and
/// terms_used are always present; status is always the last column.
inline std::vector<Column> output_columns(const SweepSpec& spec) {
    std::vector<Column> cols;
    cols.push_back({"a_m", [](const OutputRecord& r) { return r.a; }});
    cols.push_back({"a_nm", [](const OutputRecord& r) { return r.a * 1e9; }});
    const bool exact = spec.wants(Theory::exact), pert = spec.wants(Theory::perturbative);
    if (spec.wants(Quantity::free_energy)) {
        if (exact) {
            cols.push_back({"F_exact_J", [](const OutputRecord& r) { return r.free_energy_exact; }});
            cols.push_back({"F_exact_eV",
                            [](const OutputRecord& r) { return joule_to_ev(r.free_energy_exact); }});
            cols.push_back({"F_exact_a3_J_m3", [](const OutputRecord& r) {
                                return detail::scaled(r.free_energy_exact, r.a, 3);
                            }});
        }
        if (pert) {
            cols.push_back({"F_pert_J", [](const OutputRecord& r) { return r.free_energy_perturbative; }});
            cols.push_back({"F_pert_eV", [](const OutputRecord& r) {
                                return joule_to_ev(r.free_energy_perturbative);
                            }});
            cols.push_back({"F_pert_a3_J_m3", [](const OutputRecord& r) {
                                return detail::scaled(r.free_energy_perturbative, r.a, 3);
                            }});
        }
    }
    if (spec.wants(Quantity::force)) {
        if (exact) {
            cols.push_back({"Force_exact_N", [](const OutputRecord& r) { return r.force_exact; }});
            cols.push_back({"Force_exact_pN", [](const OutputRecord& r) { return r.force_exact * 1e12; }});
            cols.push_back({"Force_exact_a4_N_m4", [](const OutputRecord& r) {
                                return detail::scaled(r.force_exact, r.a, 4);
                            }});
        }
        if (pert) {
            cols.push_back({"Force_pert_N", [](const OutputRecord& r) { return r.force_perturbative; }});
            cols.push_back({"Force_pert_pN",
                            [](const OutputRecord& r) { return r.force_perturbative * 1e12; }});
            cols.push_back({"Force_pert_a4_N_m4", [](const OutputRecord& r) {
                                return detail::scaled(r.force_perturbative, r.a, 4);
                            }});
        }
    }
    if (spec.wants(Quantity::deviation)) {
        cols.push_back({"deltaF", [](const OutputRecord& r) { return r.delta_free_energy; }});
        cols.push_back({"deltaForce", [](const OutputRecord& r) { return r.delta_force; }});
    }
    cols.push_back({"terms_used", [](const OutputRecord& r) { return static_cast<double>(r.terms_used); }});
    return cols;
}

/// 17 significant digits, '.' separator, "nan" for missing values.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

inline void write_csv(std::ostream& out, const std::vector<OutputRecord>& records,
                      const std::vector<Column>& cols) {
    for (const auto& c : cols) out << c.name << ',';
    out << "status\n";
    for (const auto& r : records) {
        for (const auto& c : cols) {
            if (c.name == "terms_used")
                out << r.terms_used << ',';
            else
                out << format_number(c.value(r)) << ',';
        }
        out << r.status << '\n';
    }
}

inline nlohmann::ordered_json to_json(const std::vector<OutputRecord>& records,
                                      const std::vector<Column>& cols) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        for (const auto& c : cols) {
            if (c.name == "terms_used") {
                obj[c.name] = r.terms_used;
                continue;
            }
            const double v = c.value(r);
            if (std::isnan(v))
                obj[c.name] = nullptr;
            else
                obj[c.name] = v;
        }
        obj["status"] = r.status;
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void write_json(std::ostream& out, const std::vector<OutputRecord>& records,
                       const std::vector<Column>& cols) {
    out << to_json(records, cols).dump(2) << '\n';
}

/// Inverse of write_json for the raw SI fields; missing or null fields read as NaN.
inline std::vector<OutputRecord> records_from_json(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw ParseError("expected a JSON array of records", 0);
    auto num = [](const nlohmann::json& obj, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return OutputRecord::nan;
        return it->get<double>();
    };
    std::vector<OutputRecord> out;
    for (const auto& obj : arr) {
        OutputRecord r;
        r.a = num(obj, "a_m");
        r.free_energy_exact = num(obj, "F_exact_J");
        r.free_energy_perturbative = num(obj, "F_pert_J");
        r.force_exact = num(obj, "Force_exact_N");
        r.force_perturbative = num(obj, "Force_pert_N");
        r.delta_free_energy = num(obj, "deltaF");
        r.delta_force = num(obj, "deltaForce");
        r.terms_used = obj.value("terms_used", std::int64_t{0});
        r.status = obj.value("status", std::string("ok"));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace casimir
