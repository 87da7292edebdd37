#pragma once

// Separation sweeps over a scenario template, evaluated in parallel and
// returned in grid order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/kernel.hpp"

namespace casimir {

enum class Spacing { log, linear };
enum class Quantity { free_energy, force, deviation };
enum class Theory { exact, perturbative };

struct SweepSpec {
    double a_min = 0.8e-9;  // m
    double a_max = 100e-9;  // m
    int points = 60;
    Spacing spacing = Spacing::log;
    double temperature = 300.0;  // K
    std::vector<Quantity> quantities{Quantity::free_energy, Quantity::force, Quantity::deviation};
    std::vector<Theory> theories{Theory::exact, Theory::perturbative};

    void validate() const {
        if (!(a_min > 0.0) || !(a_max >= a_min) || !std::isfinite(a_max))
            throw DomainError("sweep needs 0 < a_min <= a_max");
        if (points < 1) throw DomainError("sweep needs at least one point");
        if (quantities.empty()) throw DomainError("sweep needs at least one quantity");
        if (theories.empty()) throw DomainError("sweep needs at least one theory");
        Temperature{temperature};
    }

    /// Separations in ascending order.
    std::vector<double> grid() const {
        validate();
        std::vector<double> a(static_cast<std::size_t>(points));
        if (points == 1) {
            a[0] = a_min;
            return a;
        }
        for (int i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / (points - 1);
            a[static_cast<std::size_t>(i)] =
                spacing == Spacing::log ? a_min * std::pow(a_max / a_min, t)
                                        : a_min + (a_max - a_min) * t;
        }
        a.back() = a_max;
        return a;
    }

    bool wants(Quantity q) const {
        return std::find(quantities.begin(), quantities.end(), q) != quantities.end();
    }
    bool wants(Theory t) const { return std::find(theories.begin(), theories.end(), t) != theories.end(); }
};

/// One grid point. Energies in J, forces in N; unit-converted and
/// separation-scaled views are derived on output.
struct OutputRecord {
    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    double a = 0.0;  // m
    double free_energy_exact = nan;
    double free_energy_perturbative = nan;
    double force_exact = nan;
    double force_perturbative = nan;
    double delta_free_energy = nan;
    double delta_force = nan;
    std::int64_t terms_used = 0;
    std::string status = "ok";  // "ok" or "breakdown"

    bool ok() const { return status == "ok"; }
};

/// Same values, including NaN placement; used by round-trip tests.
inline bool identical(const OutputRecord& x, const OutputRecord& y) {
    auto same = [](double p, double q) {
        return (std::isnan(p) && std::isnan(q)) || p == q;
    };
    return same(x.a, y.a) && same(x.free_energy_exact, y.free_energy_exact) &&
           same(x.free_energy_perturbative, y.free_energy_perturbative) &&
           same(x.force_exact, y.force_exact) && same(x.force_perturbative, y.force_perturbative) &&
           same(x.delta_free_energy, y.delta_free_energy) && same(x.delta_force, y.delta_force) &&
           x.terms_used == y.terms_used && x.status == y.status;
}

struct SweepOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    bool strict = false;   // rethrow the first breakdown instead of flagging it
    double min_separation = Scenario::default_min_separation;
    KernelOptions kernel{};
};

inline OutputRecord evaluate_point(const Scenario& s, const KernelOptions& opt,
                                   const SpectralCache* cache = nullptr) {
    const InteractionComparison c = evaluate(s, opt, cache);
    OutputRecord r;
    r.a = s.separation().meters();
    r.free_energy_exact = c.exact.free_energy;
    r.free_energy_perturbative = c.perturbative.free_energy;
    r.force_exact = c.exact.force;
    r.force_perturbative = c.perturbative.force;
    if (c.perturbative.free_energy != 0.0 && c.perturbative.force != 0.0) {
        const RelativeDeviation d = relative_deviation(c);
        r.delta_free_energy = d.free_energy;
        r.delta_force = d.force;
    }
    r.terms_used = c.exact.terms_used;
    return r;
}

/// Matsubara terms the smallest separation of a sweep is expected to need.
inline std::int64_t expected_terms(double a_min, Temperature T, const KernelOptions& opt) {
    if (T.is_zero()) return 0;
    const double dz = dimensionless_matsubara(Separation(a_min), T, 1);
    // The tail bound drops below 1e-9 relative well before zeta = 45.
    const double n = std::ceil(45.0 / dz) + 2.0;
    return static_cast<std::int64_t>(std::min(n, static_cast<double>(std::min<std::int64_t>(
                                                        opt.max_terms, 400'000))));
}

inline std::vector<OutputRecord> run_sweep(const SweepSpec& spec, const PermittivityModel& wall,
                                           const PolarizabilityModel& atom,
                                           const SweepOptions& opt = {}) {
    const std::vector<double> grid = spec.grid();
    const Temperature T(spec.temperature);

    std::optional<SpectralCache> cache;
    if (!T.is_zero()) cache.emplace(wall, atom, T, expected_terms(grid.front(), T, opt.kernel));
    const SpectralCache* cache_ptr = cache ? &*cache : nullptr;

    std::vector<OutputRecord> records(grid.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failure_index = grid.size();
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                const Scenario s(Separation{grid[i]}, T, wall, atom, opt.min_separation);
                records[i] = evaluate_point(s, opt.kernel, cache_ptr);
            } catch (const BreakdownError&) {
                if (opt.strict) {
                    std::lock_guard lock(failure_mutex);
                    if (i < failure_index) {
                        failure_index = i;
                        failure = std::current_exception();
                    }
                }
                records[i].a = grid[i];
                records[i].status = "breakdown";
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (i < failure_index) {
                    failure_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };

    unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, grid.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

}  // namespace casimir
