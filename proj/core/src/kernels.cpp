#include "vacbrown/kernels.hpp"

#include <cmath>
#include <string>

#include "contour.hpp"
#include "kernel_detail.hpp"
#include "vacbrown/optics.hpp"

namespace vacbrown {

namespace detail {

BareKernel bare_kernel(Axis axis, double chi, cplx s, quadrature::Tolerance tol, std::size_t budget,
                       bool plane_only) {
    constexpr double A = 2.0;
    const cplx I(0.0, 1.0);
    const double c = 2.0 * std::sqrt(chi);
    const double eps = 1.0 + chi;
    const bool subtract = s.real() < A;
    // P0 + P1 xi is removed only on [0, h], with h kept clear of the pole at
    // s/2; over all of [0, 1] it would leave O(P1) next to the pole when s is
    // close to 2.
    // At small chi the linear form only tracks P below xi ~ sqrt(chi).
    // Both cuts have to stay outside the detour around the pole.
    const double mid = 0.5 * s.real() / A;
    double h = std::min(s.real() < 1.0 ? 0.75 : 0.25, 8.0 * std::sqrt(chi));
    if (h > mid && h < 0.5 + mid) h = mid;
    const double p1 = optics::coeff::plane_slope(axis, chi);
    // Same for E1 xi, which is only a good approximation of E below xi ~ 1/chi.
    double he = std::min(0.75, 1.0 / chi);
    if (he > mid && he < 0.5 + mid) he = mid;

    cplx closed{};
    if (subtract) {
        const double p0 = optics::coeff::plane_at_zero(chi);
        const double e1 = optics::coeff::evanescent_slope(axis, chi);
        const cplx uh = A * h + s;
        const cplx dh = A * h - s;
        const cplx uh3 = uh * uh * uh;
        const cplx dh3 = dh * dh * dh;
        const cplx g0 = -0.5 * (1.0 / uh3 + 1.0 / dh3);
        const cplx bt = -0.5 * (1.0 / (uh * uh) + 1.0 / (dh * dh)) + (s / 3.0) * (1.0 / uh3 - 1.0 / dh3);
        const cplx w = c * he + I * s;
        const cplx ct = -0.5 / (w * w) + I * s / (3.0 * w * w * w);
        // The s^-2 parts of the two slope terms cancel because P1 = E1/chi.
        closed = p0 * g0 + p1 * (3.0 / (A * A)) * bt;
        if (plane_only) {
            closed += p1 / (A * A * s * s);
        } else {
            closed += e1 * (6.0 / (c * c)) * ct;
        }
    }

    auto f = [&](auto xi) -> cplx {
        const cplx x(xi);
        const cplx rp = !subtract        ? cplx(optics::coeff::plane(axis, xi, chi))
                        : x.real() < h ? cplx(optics::coeff::plane_remainder(axis, xi, chi))
                                       : cplx(optics::coeff::plane(axis, xi, chi));
        const cplx u = s + A * x;
        const cplx v = s - A * x;
        const cplx u2 = u * u;
        const cplx v2 = v * v;
        cplx out = rp * 3.0 * (1.0 / (u2 * u2) + 1.0 / (v2 * v2));
        if (!plane_only) {
            const cplx re = subtract && x.real() < he
                                ? cplx(optics::coeff::evanescent_remainder(axis, xi, chi))
                                : cplx(optics::coeff::evanescent(axis, xi, chi));
            const cplx w = c * x + I * s;
            const cplx w2 = w * w;
            out += 6.0 * re / (w2 * w2);
        }
        return out;
    };

    XiPath path;
    path.pole = s / A;
    const double sc = std::sqrt(chi);
    path.features = {sc, 1.0 / sc, sc / eps, 1.0 / chi, std::abs(s) / c, std::abs(s) / A};
    if (subtract) path.features.insert(path.features.end(), {h, he});
    auto est = integrate_path<cplx>(f, path, tol, budget);
    return {closed + est.value, est.abs_error, est.evaluations, est.converged};
}

}  // namespace detail

namespace kernels {

namespace {

void check_inputs(double z, double chi) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("kernel: z must be > 0");
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw std::invalid_argument("kernel: chi must be >= 0");
}

}  // namespace

KernelValue kernel_at(Axis axis, double z, double chi, std::complex<double> s,
                      const KernelOptions& options) {
    check_inputs(z, chi);
    if (s.imag() > 0.0) throw std::invalid_argument("kernel: separation must satisfy Im s <= 0");
    if (s == 0.0) throw std::invalid_argument("kernel: coincident times are not supported");
    const double band = options.singular_margin * 2.0 * z;
    if (std::abs(s - 2.0 * z) < band || std::abs(s + 2.0 * z) < band) {
        throw SingularBandError("kernel: separation at the pole tau = 2z (singular at t = 2z)");
    }
    KernelValue out{};
    if (chi == 0.0) return out;

    // K(-conj(s)) = conj(K(s)) maps every separation to Re s >= 0.
    const bool flip = s.real() < 0.0;
    const std::complex<double> s1 = (flip ? -std::conj(s) : s) / z;
    const double scale = optics::axis_prefactor(axis) / (z * z * z * z);

    auto total = detail::bare_kernel(axis, chi, s1, options.tol, options.max_evaluations);
    auto plane = detail::bare_kernel(axis, chi, s1, options.tol, options.max_evaluations, true);
    out.value = scale * total.value;
    out.plane = scale * plane.value;
    out.evanescent = out.value - out.plane;
    out.abs_error = scale * total.abs_error;
    out.converged = total.converged && plane.converged;
    if (flip) {
        out.value = std::conj(out.value);
        out.plane = std::conj(out.plane);
        out.evanescent = std::conj(out.evanescent);
    }
    return out;
}

KernelValue kernel(Axis axis, const Scenario& scenario, RegulatedSeparation sep,
                   const KernelOptions& options) {
    if (!(sep.eps_reg >= 0.0) || !std::isfinite(sep.eps_reg) || !std::isfinite(sep.tau)) {
        throw std::invalid_argument("kernel: eps_reg must be >= 0 and tau finite");
    }
    const double z = scenario.z();
    if (sep.eps_reg == 0.0 && std::abs(sep.tau) <= 2.0 * z * (1.0 + options.singular_margin)) {
        throw SingularBandError(
            "kernel: eps_reg = 0 with |tau| <= 2z puts the pole inside the xi range "
            "(singular at t = 2z); use eps_reg > 0 or kernel_at for the boundary value");
    }
    return kernel_at(axis, z, scenario.chi(), {sep.tau, -sep.eps_reg}, options);
}

KernelValue kernel_zz(const Scenario& scenario, RegulatedSeparation sep, const KernelOptions& options) {
    return kernel(Axis::z, scenario, sep, options);
}

KernelValue kernel_xx(const Scenario& scenario, RegulatedSeparation sep, const KernelOptions& options) {
    return kernel(Axis::x, scenario, sep, options);
}

IntegrandValue kernel_integrand(Axis axis, double z, double chi, double xi, std::complex<double> s) {
    check_inputs(z, chi);
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("kernel: xi must lie in [0, 1]");
    if (chi == 0.0) return {};
    const std::complex<double> I(0.0, 1.0);
    const double pref = optics::axis_prefactor(axis);
    const double a = 2.0 * z * xi;
    const double b = 2.0 * z * std::sqrt(chi) * xi;
    const auto u = s + a;
    const auto v = s - a;
    const auto w = b + I * s;
    const double p = optics::coeff::plane(axis, xi, chi);
    const double e = optics::coeff::evanescent(axis, xi, chi);
    return {pref * p * 3.0 * (1.0 / (u * u * u * u) + 1.0 / (v * v * v * v)),
            pref * 6.0 * e / (w * w * w * w)};
}

MinkowskiCheck minkowski_normalization_check(double threshold) {
    const quadrature::Tolerance tol{0.0, 1e-15, 0.0};
    const auto z_part = quadrature::integrate_adaptive([](double xi) { return 6.0 * (1.0 - xi * xi); }, 0.0, 1.0, tol);
    const auto x_part = quadrature::integrate_adaptive([](double xi) { return 6.0 * (1.0 + xi * xi); }, 0.0, 1.0, tol);
    const double target = 1.0 / (std::numbers::pi * std::numbers::pi);
    MinkowskiCheck out;
    out.residual_z = std::abs(optics::axis_prefactor(Axis::z) * z_part.value - target);
    out.residual_parallel = std::abs(optics::axis_prefactor(Axis::x) * x_part.value - target);
    out.passed = out.residual_z < threshold && out.residual_parallel < threshold;
    return out;
}

}  // namespace kernels

}  // namespace vacbrown
