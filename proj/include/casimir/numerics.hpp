#pragma once

// Numerical building blocks: compensated summation and adaptive
// Gauss-Kronrod quadrature for vector-valued integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

/// Neumaier's variant of Kahan summation. Order-dependent by nature; callers
/// that need reproducibility add terms in a fixed order.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <std::size_t N>
struct QuadratureResult {
    std::array<double, N> value{};
    std::array<double, N> error{};
    int evaluations = 0;
    int panels = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 2000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
    double lo, hi;
    std::array<double, N> value;
    std::array<double, N> error;
};

template <std::size_t N, class F>
Panel<N> gauss_kronrod_15(const F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, N> kronrod{}, gauss{};

    const std::array<double, N> fc = f(center);
    for (std::size_t k = 0; k < N; ++k) {
        kronrod[k] = kronrod_weights[7] * fc[k];
        gauss[k] = gauss_weights[3] * fc[k];
    }
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const std::array<double, N> f1 = f(center - dx);
        const std::array<double, N> f2 = f(center + dx);
        for (std::size_t k = 0; k < N; ++k) {
            const double pair = f1[k] + f2[k];
            kronrod[k] += kronrod_weights[j] * pair;
            if (j % 2 == 1) gauss[k] += gauss_weights[j / 2] * pair;
        }
    }
    Panel<N> p{lo, hi, {}, {}};
    for (std::size_t k = 0; k < N; ++k) {
        p.value[k] = kronrod[k] * half;
        p.error[k] = std::abs((kronrod[k] - gauss[k]) * half);
    }
    return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
/// integrand over [lo, hi]. Every component must satisfy
/// err_k <= max(abs_tol, rel_tol * |I_k|). Panels stay ordered by abscissa,
/// so the final sum is independent of the refinement history.
///
/// The integrand is any callable double -> std::array<double, N>. The
/// breakpoints seed the initial panels.
template <std::size_t N, class F>
QuadratureResult<N> integrate_adaptive(const F& f, std::span<const double> breakpoints,
                                       const QuadratureOptions& opt = {}) {
    using Panel = detail::Panel<N>;
    QuadratureResult<N> out;
    if (breakpoints.size() < 2) throw DomainError("quadrature needs at least two breakpoints");
    const double lo = breakpoints.front(), hi = breakpoints.back();
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] >= breakpoints[i]))
            throw DomainError("quadrature breakpoints must be non-decreasing");
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        panels.push_back(detail::gauss_kronrod_15<N>(f, breakpoints[i], breakpoints[i + 1]));
        out.evaluations += 15;
    }
    if (panels.empty()) return out;

    auto totals = [&](std::array<double, N>& value, std::array<double, N>& err) {
        for (std::size_t k = 0; k < N; ++k) {
            CompensatedSum v, e;
            for (const auto& p : panels) {
                v += p.value[k];
                e += p.error[k];
            }
            value[k] = v.value();
            err[k] = e.value();
        }
    };

    for (;;) {
        std::array<double, N> value{}, err{};
        totals(value, err);
        std::array<double, N> allowed{};
        bool done = true;
        for (std::size_t k = 0; k < N; ++k) {
            allowed[k] = std::max(opt.abs_tol, opt.rel_tol * std::abs(value[k]));
            if (err[k] > allowed[k]) done = false;
        }
        if (done) break;
        if (static_cast<int>(panels.size()) >= opt.max_panels) {
            throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(lo) +
                                 ", " + std::to_string(hi) + "] with " +
                                 std::to_string(panels.size()) + " panels; error estimate " +
                                 std::to_string(*std::max_element(err.begin(), err.end())));
        }
        // Bisect the panel contributing most error relative to its component budget.
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double score = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                const double r = allowed[k] > 0.0 ? panels[i].error[k] / allowed[k]
                                                  : panels[i].error[k] * 1e300;
                score = std::max(score, r);
            }
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi))
            throw NumericalError("adaptive quadrature: panel width underflow");
        panels[worst] = detail::gauss_kronrod_15<N>(f, p.lo, mid);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      detail::gauss_kronrod_15<N>(f, mid, p.hi));
        out.evaluations += 30;
    }

    totals(out.value, out.error);
    out.panels = static_cast<int>(panels.size());
    return out;
}

template <std::size_t N, class F>
QuadratureResult<N> integrate_adaptive(const F& f, double lo, double hi,
                                       const QuadratureOptions& opt = {}) {
    const std::array<double, 2> ends{lo, hi};
    return integrate_adaptive<N>(f, std::span<const double>(ends), opt);
}

/// Scalar convenience wrapper.
template <class F>
QuadratureResult<1> integrate_adaptive_scalar(const F& f, double lo, double hi,
                                              const QuadratureOptions& opt = {}) {
    return integrate_adaptive<1>([&](double x) { return std::array<double, 1>{f(x)}; }, lo, hi, opt);
}

}  // namespace casimir
