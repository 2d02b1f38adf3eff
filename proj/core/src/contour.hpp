#pragma once

// Integration over xi in [lo, hi] along a path that may bulge into the upper
// half plane around a pole sitting on or just below the real axis.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <type_traits>
#include <vector>

#include "vacbrown/quadrature.hpp"

namespace vacbrown::detail {

using cplx = std::complex<double>;

struct XiPath {
    double lo = 0.0;
    double hi = 1.0;
    std::optional<cplx> pole;
    std::vector<double> features;  // scales at which the integrand changes character
};

// Feature points plus decade fill between the smallest one and 1.
inline std::vector<double> layer_points(std::vector<double> features) {
    std::vector<double> out;
    double smallest = 1.0;
    for (double f : features) {
        if (f > 1e-14 && f < 1.0 && std::isfinite(f)) {
            out.push_back(f);
            smallest = std::min(smallest, f);
        }
    }
    for (double p = 0.1; p > smallest; p *= 0.1) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

inline void accumulate(quadrature::ComplexEstimate& into, const quadrature::ComplexEstimate& e) {
    into.value += e.value;
    into.abs_error += e.abs_error;
    into.l1_norm += e.l1_norm;
    into.evaluations += e.evaluations;
    into.converged = into.converged && e.converged;
}

template <class R>
quadrature::ComplexEstimate promote(const quadrature::Estimate<R>& e) {
    return {cplx(e.value), e.abs_error, e.l1_norm, e.evaluations, e.converged};
}

// Real segment [a, b] of the unit interval. The part above 1/2 is mapped with
// xi = 1 - w^2 when b == 1 so that sqrt(1 - xi^2) becomes smooth.
template <class R, class F>
quadrature::ComplexEstimate real_segment(F& f, double a, double b, const std::vector<double>& splits,
                                         quadrature::Tolerance tol, std::size_t budget) {
    quadrature::ComplexEstimate out{cplx{}, 0.0, 0.0, 0, true};
    if (!(a < b)) return out;
    const bool to_one = (b == 1.0);
    const double m = to_one ? std::max(a, 0.5) : b;
    if (a < m) {
        std::vector<double> inner;
        for (double s : splits) {
            if (s > a && s < m) inner.push_back(s);
        }
        auto g = [&](double xi) -> R { return f(xi); };
        accumulate(out, promote(quadrature::gauss_kronrod<R>(g, a, m, tol, inner, budget)));
    }
    if (to_one && m < 1.0) {
        const double wmax = std::sqrt(1.0 - m);
        std::vector<double> inner;
        for (double s : splits) {
            if (s > m && s < 1.0) inner.push_back(std::sqrt(1.0 - s));
        }
        auto g = [&](double w) -> R { return f(1.0 - w * w) * (2.0 * w); };
        accumulate(out, promote(quadrature::gauss_kronrod<R>(g, 0.0, wmax, tol, inner, budget)));
    }
    return out;
}

// Half circle above the real axis from centre - radius to centre + radius.
template <class F>
quadrature::ComplexEstimate upper_arc(F& f, double centre, double radius, quadrature::Tolerance tol,
                                      std::size_t budget) {
    auto g = [&](double theta) -> cplx {
        const cplx e = std::polar(1.0, theta);
        return f(cplx(centre) + radius * e) * (cplx(0.0, radius) * e);
    };
    auto est = quadrature::gauss_kronrod<cplx>(g, 0.0, std::numbers::pi, tol, {}, budget);
    est.value = -est.value;
    return est;
}

// f must be callable with double (returning R) and with cplx (returning cplx).
template <class R, class F>
quadrature::ComplexEstimate integrate_path(F&& f, const XiPath& path, quadrature::Tolerance tol,
                                           std::size_t budget) {
    std::vector<double> splits = layer_points(path.features);
    quadrature::ComplexEstimate out{cplx{}, 0.0, 0.0, 0, true};
    if constexpr (std::is_invocable_v<F&, cplx>) {
        if (path.pole) {
            const cplx p = *path.pole;
            const double c = p.real();
            if (c > path.lo && c < path.hi) {
                const double r = 0.5 * std::min(c - path.lo, path.hi - c);
                if (std::abs(p.imag()) < r) {
                    splits.erase(std::remove_if(splits.begin(), splits.end(),
                                                [&](double s) { return std::abs(s - c) <= r; }),
                                 splits.end());
                    accumulate(out, real_segment<R>(f, path.lo, c - r, splits, tol, budget));
                    accumulate(out, upper_arc(f, c, r, tol, budget));
                    accumulate(out, real_segment<R>(f, c + r, path.hi, splits, tol, budget));
                    return out;
                }
                splits.push_back(c);
                std::sort(splits.begin(), splits.end());
            }
        }
    }
    accumulate(out, real_segment<R>(f, path.lo, path.hi, splits, tol, budget));
    return out;
}

}  // namespace vacbrown::detail
