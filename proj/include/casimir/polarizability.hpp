#pragma once

// Ground-state atomic polarizability on the imaginary frequency axis.

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/permittivity.hpp"  // detail::for_each_record
#include "casimir/quantities.hpp"

namespace casimir {

struct StaticPolarizability {
    explicit StaticPolarizability(double alpha0) : alpha0(alpha0) {
        if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
            throw DomainError("static polarizability must be non-negative");
    }
    double alpha0;  // m^3
};

/// alpha(i xi) = alpha0 / (1 + xi^2 / omega0^2).
struct SingleOscillator {
    SingleOscillator(double alpha0, double omega0) : alpha0(alpha0), omega0(omega0) {
        if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
            throw DomainError("static polarizability must be non-negative");
        if (!(omega0 > 0.0)) throw DomainError("oscillator frequency must be positive");
    }
    double alpha0;  // m^3
    double omega0;  // rad/s
};

struct PolarizabilityRow {
    double xi;     // rad/s
    double alpha;  // m^3
};

/// Tabulated alpha(i xi), interpolated with a shape-preserving (Fritsch-Carlson
/// style) cubic Hermite spline in u = log(1 + xi). Below the first node the
/// value is alpha0; above the last node it falls off as xi^-2.
class PolarizabilityTable {
public:
    /// Relative amount by which alpha may rise between consecutive rows
    /// before the table is rejected; smaller rises are flattened.
    static constexpr double monotonicity_tolerance = 1e-12;

    explicit PolarizabilityTable(std::vector<PolarizabilityRow> rows) : rows_(std::move(rows)) {
        if (rows_.empty()) throw DomainError("polarizability table is empty");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!(rows_[i].xi >= 0.0))
                throw DomainError("polarizability row " + std::to_string(i) + ": negative frequency");
            if (!(rows_[i].alpha >= 0.0))
                throw DomainError("polarizability row " + std::to_string(i) + ": negative alpha");
            if (i == 0) continue;
            if (!(rows_[i].xi > rows_[i - 1].xi))
                throw DomainError("polarizability row " + std::to_string(i) +
                                  ": frequencies must be strictly increasing");
            if (rows_[i].alpha > rows_[i - 1].alpha * (1.0 + monotonicity_tolerance))
                throw DomainError("polarizability row " + std::to_string(i) +
                                  ": alpha increases with frequency");
            rows_[i].alpha = std::min(rows_[i].alpha, rows_[i - 1].alpha);
        }
        build_slopes();
    }

    const std::vector<PolarizabilityRow>& rows() const noexcept { return rows_; }
    double alpha0() const noexcept { return rows_.front().alpha; }

    double operator()(double xi) const {
        if (xi <= rows_.front().xi) return rows_.front().alpha;
        const auto& last = rows_.back();
        if (xi >= last.xi) {
            const double r = last.xi / xi;
            return last.alpha * r * r;
        }
        const double u = std::log1p(xi);
        auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t k = static_cast<std::size_t>(it - u_.begin()) - 1;
        const double h = u_[k + 1] - u_[k];
        const double t = (u - u_[k]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        const double v = h00 * rows_[k].alpha + h10 * h * d_[k] + h01 * rows_[k + 1].alpha +
                         h11 * h * d_[k + 1];
        // Rounding guard; the spline is monotone on each interval.
        return std::clamp(v, rows_[k + 1].alpha, rows_[k].alpha);
    }

private:
    void build_slopes() {
        const std::size_t n = rows_.size();
        u_.resize(n);
        for (std::size_t i = 0; i < n; ++i) u_[i] = std::log1p(rows_[i].xi);
        d_.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = u_[i + 1] - u_[i];
            delta[i] = (rows_[i + 1].alpha - rows_[i].alpha) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
                continue;
            }
            const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    static double end_slope(double h0, double h1, double m0, double m1) {
        double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if (d * m0 <= 0.0) return 0.0;
        if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3 * m0)) return 3 * m0;
        return d;
    }

    std::vector<PolarizabilityRow> rows_;
    std::vector<double> u_;
    std::vector<double> d_;
};

struct TabulatedPolarizability {
    std::shared_ptr<const PolarizabilityTable> table;
};

using PolarizabilityModel =
    std::variant<StaticPolarizability, SingleOscillator, TabulatedPolarizability>;

enum class PolarizabilityUnits {
    atomic,  // xi in E_h/hbar, alpha in a0^3
    si,      // xi in rad/s, alpha in m^3
};

/// Reads "xi alpha" records ('#' comments).
inline PolarizabilityTable parse_polarizability_table(std::istream& in, PolarizabilityUnits units) {
    std::vector<PolarizabilityRow> rows;
    detail::for_each_record(in, 2, [&](std::size_t line, const std::vector<double>& f) {
        if (f[0] < 0.0) throw ParseError("negative frequency", line);
        if (f[1] < 0.0) throw ParseError("negative polarizability", line);
        PolarizabilityRow row = units == PolarizabilityUnits::atomic
                                    ? PolarizabilityRow{au_to_angular_frequency(f[0]),
                                                        au_to_si_polarizability(f[1]).m3()}
                                    : PolarizabilityRow{f[0], f[1]};
        if (!rows.empty()) {
            if (!(row.xi > rows.back().xi))
                throw ParseError("frequencies must be strictly increasing", line);
            if (row.alpha > rows.back().alpha * (1.0 + PolarizabilityTable::monotonicity_tolerance))
                throw ParseError("polarizability increases with frequency", line);
        }
        rows.push_back(row);
    });
    if (rows.empty()) throw ParseError("empty table", 0);
    return PolarizabilityTable(std::move(rows));
}

inline double static_polarizability(const PolarizabilityModel& model) {
    struct Visitor {
        double operator()(const StaticPolarizability& m) const { return m.alpha0; }
        double operator()(const SingleOscillator& m) const { return m.alpha0; }
        double operator()(const TabulatedPolarizability& m) const { return m.table->alpha0(); }
    };
    return std::visit(Visitor{}, model);
}

inline PolarizabilityValue alpha_imag_axis(const PolarizabilityModel& model, double xi) {
    if (!(xi >= 0.0)) throw DomainError("imaginary frequency must be non-negative");
    struct Visitor {
        double xi;
        double operator()(const StaticPolarizability& m) const { return m.alpha0; }
        double operator()(const SingleOscillator& m) const {
            if (std::isinf(m.omega0)) return m.alpha0;
            const double r = xi / m.omega0;
            return m.alpha0 / (1.0 + r * r);
        }
        double operator()(const TabulatedPolarizability& m) const { return (*m.table)(xi); }
    };
    return PolarizabilityValue(std::visit(Visitor{xi}, model));
}

}  // namespace casimir
