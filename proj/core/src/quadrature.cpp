#include "vacbrown/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vacbrown::quadrature {

IntegralEstimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    Tolerance tol, std::span<const double> splits,
                                    std::size_t max_evaluations) {
    return gauss_kronrod<double>(f, a, b, tol, splits, max_evaluations);
}

ComplexEstimate integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, Tolerance tol,
                                           std::span<const double> splits,
                                           std::size_t max_evaluations) {
    return gauss_kronrod<std::complex<double>>(f, a, b, tol, splits, max_evaluations);
}

IntegralEstimate integrate_semiinfinite_oscillatory(const std::function<double(double)>& f,
                                                    double t_osc, double cutoff_eps,
                                                    Tolerance tol, std::size_t max_panels) {
    if (!(cutoff_eps >= 0.0) || !std::isfinite(cutoff_eps)) {
        throw std::invalid_argument("integrate_semiinfinite_oscillatory: cutoff must be >= 0");
    }
    double width = 1.0;
    if (t_osc > 0.0) {
        width = 0.5 * t_osc;
    } else if (cutoff_eps > 0.0) {
        width = 1.0 / cutoff_eps;
    }
    auto damped = [&](double w) { return f(w) * std::exp(-cutoff_eps * w); };

    // Panels are integrated to a fraction of the requested tolerance.
    Tolerance panel_tol{tol.abs * 1e-3, tol.rel, tol.rel_l1};

    IntegralEstimate out;
    double sum = 0.0;
    double err = 0.0;
    int quiet = 0;
    double last_l1 = 0.0;
    std::size_t panel = 0;
    for (; panel < max_panels; ++panel) {
        const double lo = width * static_cast<double>(panel);
        const double hi = lo + width;
        IntegralEstimate p = gauss_kronrod<double>(damped, lo, hi, panel_tol);
        sum += p.value;
        err += p.abs_error;
        out.evaluations += p.evaluations;
        out.l1_norm += p.l1_norm;
        last_l1 = p.l1_norm;
        const double small = std::max(tol.abs, tol.rel * std::abs(sum)) * 1e-2;
        quiet = (p.l1_norm <= small) ? quiet + 1 : 0;
        if (quiet >= 4) break;
    }
    out.value = sum;
    out.abs_error = err + 4.0 * last_l1;
    const double goal = std::max({tol.abs, tol.rel * std::abs(sum), tol.rel_l1 * out.l1_norm});
    out.converged = panel < max_panels && std::isfinite(sum) && out.abs_error <= goal;
    return out;
}

namespace {

std::optional<double> triple_order(double v0, double v1, double v2, double ratio) {
    const double d1 = v1 - v0;
    const double d2 = v2 - v1;
    if (d1 == 0.0 || d2 == 0.0 || (d1 > 0.0) != (d2 > 0.0)) return std::nullopt;
    return std::log(d1 / d2) / std::log(1.0 / ratio);
}

}  // namespace

ExtrapolationResult extrapolate_to_zero(std::span<const RegulatorSample> samples,
                                        const ExtrapolationOptions& options) {
    const std::size_t n = samples.size();
    if (n < 3) throw std::invalid_argument("extrapolate_to_zero: need at least 3 samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i].regulator > 0.0) || !std::isfinite(samples[i].value)) {
            throw std::invalid_argument("extrapolate_to_zero: regulators must be > 0, values finite");
        }
        if (i > 0 && !(samples[i].regulator < samples[i - 1].regulator)) {
            throw std::invalid_argument("extrapolate_to_zero: regulators must strictly decrease");
        }
    }
    const double ratio = samples[1].regulator / samples[0].regulator;
    for (std::size_t i = 2; i < n; ++i) {
        const double r = samples[i].regulator / samples[i - 1].regulator;
        if (std::abs(r - ratio) > 1e-6 * ratio) {
            throw std::invalid_argument("extrapolate_to_zero: regulators must be geometric");
        }
    }

    ExtrapolationResult res;
    res.samples.assign(samples.begin(), samples.end());

    bool all_equal = true;
    for (std::size_t i = 1; i < n; ++i) all_equal = all_equal && samples[i].value == samples[0].value;
    if (all_equal) {
        res.limit = samples[0].value;
        res.abs_error = 0.0;
        return res;
    }

    res.order_estimate =
        triple_order(samples[n - 3].value, samples[n - 2].value, samples[n - 1].value, ratio);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        auto p = triple_order(samples[i].value, samples[i + 1].value, samples[i + 2].value, ratio);
        if (!p || !res.order_estimate || std::abs(*p - *res.order_estimate) > 0.5) {
            res.consistent = false;
        }
    }
    double p = 1.0;
    if (options.order) {
        p = *options.order;
    } else if (res.order_estimate && *res.order_estimate > 0.0) {
        // Estimates near an integer are taken as that integer; the sample
        // differences carry higher-order contamination.
        const double nearest = std::round(*res.order_estimate);
        p = std::abs(*res.order_estimate - nearest) < 0.15 && nearest > 0.0 ? nearest : *res.order_estimate;
    } else {
        res.consistent = false;
    }

    const std::size_t levels =
        options.levels < 0 ? n - 1 : std::min<std::size_t>(static_cast<std::size_t>(options.levels), n - 1);
    std::vector<std::vector<double>> table(n, std::vector<double>(levels + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) table[i][0] = samples[i].value;
    for (std::size_t k = 1; k <= levels; ++k) {
        const double q = p + static_cast<double>(k - 1);
        const double factor = std::pow(ratio, -q) - 1.0;
        for (std::size_t i = k; i < n; ++i) {
            table[i][k] = table[i][k - 1] + (table[i][k - 1] - table[i - 1][k - 1]) / factor;
        }
    }
    res.limit = table[n - 1][levels];
    // Logarithmic corrections spoil pure power-law elimination, so the last
    // two column changes both count.
    double err = 0.0;
    if (levels >= 1) err = std::abs(table[n - 1][levels] - table[n - 1][levels - 1]);
    if (levels >= 2) err = std::max(err, std::abs(table[n - 1][levels - 1] - table[n - 1][levels - 2]));
    if (n - 2 >= levels) err = std::max(err, std::abs(table[n - 1][levels] - table[n - 2][levels]));
    res.abs_error = res.consistent ? err : 10.0 * err;
    return res;
}

}  // namespace vacbrown::quadrature
