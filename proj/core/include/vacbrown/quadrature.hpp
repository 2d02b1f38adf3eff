#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace vacbrown::quadrature {

// Stopping rule: err <= max(abs, rel * |I|, rel_l1 * integral of |f|).
// rel_l1 is the useful knob for integrands with heavy internal cancellation.
struct Tolerance {
    double abs = 0.0;
    double rel = 1e-10;
    double rel_l1 = 0.0;
};

template <class T>
struct Estimate {
    T value{};
    double abs_error = 0.0;
    double l1_norm = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using IntegralEstimate = Estimate<double>;
using ComplexEstimate = Estimate<std::complex<double>>;

inline constexpr std::size_t default_max_evaluations = 400000;

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21 constants).
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
inline bool finite(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    double l1;
};

template <class T, class F>
Panel<T> kronrod21(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<T, 21> fv{};
    fv[10] = f(centre);
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        fv[j] = f(centre - dx);
        fv[20 - j] = f(centre + dx);
    }
    T resk = wgk[10] * fv[10];
    T resg{};
    double resabs = wgk[10] * magnitude(fv[10]);
    for (std::size_t j = 0; j < 10; ++j) {
        const T pair = fv[j] + fv[20 - j];
        resk += wgk[j] * pair;
        resabs += wgk[j] * (magnitude(fv[j]) + magnitude(fv[20 - j]));
        if (j % 2 == 1) resg += wg[j / 2] * pair;
    }
    const T mean = 0.5 * resk;
    double resasc = wgk[10] * magnitude(fv[10] - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += wgk[j] * (magnitude(fv[j] - mean) + magnitude(fv[20 - j] - mean));
    }
    const double h = std::abs(half);
    resasc *= h;
    resabs *= h;
    double err = magnitude((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * epmach)) {
        err = std::max(50.0 * epmach * resabs, err);
    }
    return {a, b, resk * half, err, resabs};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (21-point) integration over [a, b].
// Panels never straddle a split point. Deterministic for fixed inputs.
template <class T, class F>
Estimate<T> gauss_kronrod(F&& f, double a, double b, Tolerance tol,
                          std::span<const double> splits = {},
                          std::size_t max_evaluations = default_max_evaluations) {
    if (!(a < b)) {
        if (a == b) return {T{}, 0.0, 0.0, 0, true};
        throw std::invalid_argument("gauss_kronrod: require a < b");
    }
    std::vector<double> edges{a};
    for (double s : splits) {
        if (s > a && s < b) edges.push_back(s);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    using P = detail::Panel<T>;
    auto by_error = [](const P& l, const P& r) {
        if (l.error != r.error) return l.error < r.error;
        return l.a > r.a;
    };
    std::priority_queue<P, std::vector<P>, decltype(by_error)> open(by_error);
    std::vector<P> closed;

    Estimate<T> out;
    T total{};
    double total_err = 0.0;
    double total_l1 = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        P p = detail::kronrod21<T>(f, edges[i], edges[i + 1]);
        out.evaluations += 21;
        total += p.value;
        total_err += p.error;
        total_l1 += p.l1;
        open.push(p);
    }

    auto target = [&] {
        return std::max({tol.abs, tol.rel * detail::magnitude(total), tol.rel_l1 * total_l1});
    };
    const double width_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::abs(a), std::abs(b));
    std::size_t iterations = 0;
    while (!open.empty() && total_err > target() && out.evaluations + 42 <= max_evaluations) {
        P worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= width_floor || mid <= worst.a || mid >= worst.b) {
            closed.push_back(worst);
            continue;
        }
        P left = detail::kronrod21<T>(f, worst.a, mid);
        P right = detail::kronrod21<T>(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_l1 += left.l1 + right.l1 - worst.l1;
        open.push(left);
        open.push(right);
        if (++iterations % 64 == 0) {
            // Resum to stop drift in the running totals.
            total_err = 0.0;
            total_l1 = 0.0;
            total = T{};
            auto copy = open;
            while (!copy.empty()) {
                total_err += copy.top().error;
                total_l1 += copy.top().l1;
                total += copy.top().value;
                copy.pop();
            }
            for (const P& c : closed) {
                total_err += c.error;
                total_l1 += c.l1;
                total += c.value;
            }
        }
    }

    std::vector<P> all = closed;
    while (!open.empty()) {
        all.push_back(open.top());
        open.pop();
    }
    std::sort(all.begin(), all.end(), [](const P& l, const P& r) { return l.a < r.a; });
    out.value = T{};
    out.abs_error = 0.0;
    out.l1_norm = 0.0;
    for (const P& p : all) {
        out.value += p.value;
        out.abs_error += p.error;
        out.l1_norm += p.l1;
    }
    const double goal =
        std::max({tol.abs, tol.rel * detail::magnitude(out.value), tol.rel_l1 * out.l1_norm});
    out.converged = detail::finite(out.value) && out.abs_error <= goal;
    if (!detail::finite(out.value)) out.abs_error = std::numeric_limits<double>::infinity();
    return out;
}

IntegralEstimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    Tolerance tol = {}, std::span<const double> splits = {},
                                    std::size_t max_evaluations = default_max_evaluations);

ComplexEstimate integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b, Tolerance tol = {},
    std::span<const double> splits = {},
    std::size_t max_evaluations = default_max_evaluations);

// Integral of f(w) exp(-cutoff_eps w) over [0, inf). Panels are half an
// oscillation period long; summation stops once consecutive panels are
// negligible against the tolerance.
IntegralEstimate integrate_semiinfinite_oscillatory(const std::function<double(double)>& f,
                                                    double t_osc, double cutoff_eps,
                                                    Tolerance tol = {},
                                                    std::size_t max_panels = 200000);

struct RegulatorSample {
    double regulator;
    double value;
};

struct ExtrapolationOptions {
    std::optional<double> order;  // leading power p; estimated from the last triple if absent
    int levels = -1;              // Richardson levels; -1 uses every sample
};

struct ExtrapolationResult {
    double limit = 0.0;
    std::optional<double> order_estimate;
    std::vector<RegulatorSample> samples;
    double abs_error = 0.0;
    bool consistent = true;
};

ExtrapolationResult extrapolate_to_zero(std::span<const RegulatorSample> samples,
                                        const ExtrapolationOptions& options = {});

}  // namespace vacbrown::quadrature
