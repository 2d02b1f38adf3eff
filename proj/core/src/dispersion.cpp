#include "vacbrown/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "contour.hpp"
#include "kernel_detail.hpp"
#include "vacbrown/optics.hpp"

// All integrals below are in units z = 1, so the pole of the plane-wave
// kernel sits at s = 2 xi and t enters only through tau = t/z.

namespace vacbrown {

using detail::cplx;
using quadrature::IntegralEstimate;
using quadrature::Tolerance;

std::string_view to_string(MethodChoice choice) {
    switch (choice) {
        case MethodChoice::kernel_time_domain: return "kernel";
        case MethodChoice::spectral_window: return "spectral";
        case MethodChoice::automatic: return "auto";
    }
    return "?";
}

MethodChoice parse_method_choice(std::string_view text) {
    if (text == "kernel" || text == "kernel_time_domain") return MethodChoice::kernel_time_domain;
    if (text == "spectral" || text == "spectral_window") return MethodChoice::spectral_window;
    if (text == "auto") return MethodChoice::automatic;
    throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

void check_singular_band(const Scenario& scenario, double band) {
    const double two_z = 2.0 * scenario.z();
    if (std::abs(scenario.t() - two_z) < band * two_z) {
        std::ostringstream msg;
        msg << "t/z = " << scenario.tau() << " lies within " << band
            << " (relative) of t = 2z; the dispersion is singular at t = 2z, where the "
               "light round trip to the interface completes for a perfectly sharp boundary";
        throw SingularBandError(msg.str());
    }
}

Method resolve_method(MethodChoice choice, const Scenario& scenario) {
    switch (choice) {
        case MethodChoice::kernel_time_domain: return Method::kernel;
        case MethodChoice::spectral_window: return Method::spectral;
        case MethodChoice::automatic: break;
    }
    const double ratio = scenario.t() / (2.0 * scenario.z());
    if (ratio < 0.9) return Method::spectral;
    if (ratio > 1.1) return Method::kernel;
    throw MethodSelectionError("method auto is undefined for 0.9 < t/2z < 1.1; choose kernel or spectral");
}

namespace {

struct Accumulator {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;

    void add(const IntegralEstimate& e) {
        value += e.value;
        error += e.abs_error;
        evaluations += e.evaluations;
        converged = converged && e.converged;
    }
};

std::vector<double> within(std::vector<double> points, double lo, double hi) {
    std::vector<double> out;
    for (double p : points) {
        if (p > lo && p < hi && std::isfinite(p)) out.push_back(p);
    }
    return out;
}

std::vector<double> xi_features(double chi) {
    const double sc = std::sqrt(chi);
    return {sc, 1.0 / sc, sc / (1.0 + chi), 1.0 / chi};
}

// Time-domain method: 2 Re int (tau - s) K(s) ds along a path from 0 to tau.
// exact_limit: real axis with K taken as its boundary value from below, and
// a half circle under the pole at s = 2. Otherwise: the line Im s = -eps.
Accumulator kernel_method(Axis axis, double chi, double tau, double eps, const DispersionOptions& o) {
    const Tolerance inner{0.0, o.inner_tol, 1e-13};
    const Tolerance outer{0.0, o.tol, 1e-13};
    bool inner_ok = true;
    std::size_t inner_evals = 0;
    // (arc length along the path, |tau - s| times the inner error) for every
    // kernel evaluation; integrated by the trapezoid rule at the end.
    std::vector<std::pair<double, double>> error_trace;
    auto K = [&](cplx s, double ell) {
        auto k = detail::bare_kernel(axis, chi, s, inner, o.max_evaluations);
        if (ell >= 0.0) error_trace.emplace_back(ell, std::abs(tau - s) * k.abs_error);
        inner_ok = inner_ok && k.converged;
        inner_evals += k.evaluations;
        return k;
    };

    const double c = 2.0 * std::sqrt(chi);
    std::vector<double> marks = {c, 2.0 / std::sqrt(chi), 1.0, 0.5};
    for (double p = 4.0; p < tau; p *= 2.0) marks.push_back(p);
    if (eps > 0.0) {
        marks.insert(marks.end(), {2.0, 2.0 - 10.0 * eps, 2.0 + 10.0 * eps, 10.0 * eps});
    }

    // Near s = 0 the xi integrand is large compared with K, so K is taken from
    // its Taylor series there. K is real and even on (-2, 2) (the commutator
    // vanishes before the reflected light cone), hence analytic in |s| < 2,
    // and the coefficients follow from samples on |w| = patch_radius.
    constexpr int n_circle = 64;
    constexpr double patch_radius = 1.2;
    const double patch_end = std::min(0.3, tau);
    std::array<cplx, n_circle / 4 + 1> quarter;
    double circle_err = 0.0;
    for (int j = 0; j <= n_circle / 4; ++j) {
        const double theta = -2.0 * std::numbers::pi * j / n_circle;
        const cplx w = std::polar(patch_radius, theta);
        const auto k = K(cplx(std::max(w.real(), 0.0), std::min(w.imag(), 0.0)), -1.0);
        quarter[j] = k.value;
        circle_err = std::max(circle_err, k.abs_error);
    }
    std::array<double, n_circle / 2> taylor{};
    for (int n = 0; n < n_circle; n += 2) {
        cplx sum{};
        for (int j = 0; j < n_circle; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / n_circle;
            // Reduce to the quadrant Re >= 0, Im <= 0 by K(-w) = K(w), K(conj w) = conj K(w).
            const int q = j % (n_circle / 2);
            const int k = q <= n_circle / 4 ? q : n_circle / 2 - q;
            const cplx w = std::polar(1.0, theta);
            const cplx v = (w.real() * w.imag() > 0.0) ? std::conj(quarter[k]) : quarter[k];
            sum += v * std::polar(1.0, -n * theta);
        }
        taylor[n / 2] = (sum / static_cast<double>(n_circle)).real() / std::pow(patch_radius, n);
    }
    auto K_near = [&](cplx s) {
        const cplx s2 = s * s;
        cplx power = 1.0;
        cplx out{};
        for (double a : taylor) {
            out += a * power;
            power *= s2;
        }
        return out;
    };

    Accumulator acc;
    auto real_part = [&](double lo, double hi, double ell0) {
        if (!(lo < hi)) return;
        auto g = [&](double u) {
            const cplx s(u, -eps);
            return ((tau - u) * (u < patch_end ? K_near(s) : K(s, ell0 + u - lo).value)).real();
        };
        std::vector<double> cuts = within(marks, lo, hi);
        if (patch_end > lo && patch_end < hi) cuts.push_back(patch_end);
        acc.add(quadrature::gauss_kronrod<double>(g, lo, hi, outer, cuts, o.max_evaluations));
    };
    if (eps > 0.0 || tau < 2.0) {
        real_part(0.0, tau, 0.0);
    } else {
        const double r = std::min(1.0, 0.5 * (tau - 2.0));
        real_part(0.0, 2.0 - r, 0.0);
        auto g = [&](double theta) {
            const cplx e = std::polar(1.0, theta);
            const cplx s = 2.0 + r * e;
            const double ell = 2.0 - r + r * (theta - std::numbers::pi);
            return ((tau - s) * K(s, ell).value * cplx(0.0, r) * e).real();
        };
        acc.add(quadrature::gauss_kronrod<double>(g, std::numbers::pi, 2.0 * std::numbers::pi, outer,
                                                  {}, o.max_evaluations));
        real_part(2.0 + r, tau, 2.0 + (std::numbers::pi - 1.0) * r);
    }
    // The series inherits the error of the circle samples.
    acc.error += circle_err * patch_end * (tau - 0.5 * patch_end);
    std::sort(error_trace.begin(), error_trace.end());
    for (std::size_t i = 1; i < error_trace.size(); ++i) {
        const auto& [l0, e0] = error_trace[i - 1];
        const auto& [l1, e1] = error_trace[i];
        acc.error += 0.5 * (l1 - l0) * (e0 + e1);
    }
    acc.evaluations += inner_evals;
    acc.converged = acc.converged && inner_ok;
    acc.value *= 2.0;
    acc.error *= 2.0;
    return acc;
}

// Spectral method in the eps -> 0 limit: rho/w = S + T with the static part
//   S = P0/2 + (P1/4) ln chi + int [-(P - P0 - P1 xi) + (E - E1 xi)/chi] / (2 xi^2)
// and the dynamic part
//   T = int [P/(2xi + tau)^2 + P/(2xi - tau)^2 - 2E Re (b - i tau)^-2],  b = 2 sqrt(chi) xi,
// where the double pole at xi = tau/2 is a finite part (real part of the
// integral on a contour above it).
Accumulator spectral_exact(Axis axis, double chi, double tau, const DispersionOptions& o) {
    namespace cf = optics::coeff;
    const Tolerance tol{0.0, 1e-2 * std::min(o.tol, o.inner_tol), 1e-13};
    const double sc = std::sqrt(chi);

    auto fs = [&](double xi) {
        return (-cf::plane_remainder(axis, xi, chi) + cf::evanescent_remainder(axis, xi, chi) / chi) /
               (2.0 * xi * xi);
    };
    detail::XiPath statics;
    statics.features = xi_features(chi);
    auto s_est = detail::integrate_path<double>(fs, statics, tol, o.max_evaluations);

    auto ft = [&](auto xi) {
        const auto p = cf::plane(axis, xi, chi);
        const auto e = cf::evanescent(axis, xi, chi);
        const auto up = 2.0 * xi + tau;
        const auto dn = 2.0 * xi - tau;
        const auto b2 = 4.0 * chi * xi * xi;
        const auto q = b2 + tau * tau;
        return p / (up * up) + p / (dn * dn) - 2.0 * e * (b2 - tau * tau) / (q * q);
    };
    detail::XiPath dynamic;
    dynamic.features = xi_features(chi);
    dynamic.features.push_back(tau / (2.0 * sc));
    dynamic.features.push_back(tau / 2.0);
    dynamic.features.push_back(1.0 - std::abs(tau / 2.0 - 1.0));
    if (tau < 2.0) dynamic.pole = cplx(tau / 2.0, 0.0);
    auto t_est = detail::integrate_path<double>(ft, dynamic, tol, o.max_evaluations);

    Accumulator acc;
    const double p0 = cf::plane_at_zero(chi);
    const double p1 = cf::plane_slope(axis, chi);
    acc.value = p0 / 2.0 + 0.25 * p1 * std::log(chi) + s_est.value.real() + t_est.value.real();
    acc.error = s_est.abs_error + t_est.abs_error;
    acc.evaluations = s_est.evaluations + t_est.evaluations;
    acc.converged = s_est.converged && t_est.converged;
    return acc;
}

// int_0^1 Re[2/(eps - 2i xi)^2 - 1/(eps - i(2xi + tau))^2 - 1/(eps - i(2xi - tau))^2] dxi
double cosine_window_moment(double tau, double eps) {
    const cplx I(0.0, 1.0);
    auto prim = [&](double beta) {
        return (1.0 / (2.0 * I)) * (1.0 / (eps - I * (2.0 + beta)) - 1.0 / (eps - I * beta));
    };
    return (2.0 * prim(0.0) - prim(tau) - prim(-tau)).real();
}

// Regulated omega integrals with cutoff exp(-eps w):
//   int 2w(1 - cos w tau) cos(a w) e^{-eps w} dw and the evanescent analogue.
double cosine_window(double a, double tau, double eps) {
    const cplx I(0.0, 1.0);
    auto r = [&](double k) {
        const cplx d = eps - I * k;
        return (1.0 / (d * d)).real();
    };
    return 2.0 * r(a) - r(a + tau) - r(a - tau);
}

double exponential_window(double b, double tau, double eps) {
    const cplx d(b + eps, -tau);
    return 2.0 / ((b + eps) * (b + eps)) - 2.0 * (1.0 / (d * d)).real();
}

Accumulator spectral_regulated(Axis axis, double chi, double tau, double eps, const DispersionOptions& o,
                               bool numeric_omega) {
    namespace cf = optics::coeff;
    const double sc = std::sqrt(chi);
    const double p0 = cf::plane_at_zero(chi);
    std::vector<double> features = xi_features(chi);
    features.insert(features.end(), {eps, 0.5 * eps, tau / 2.0, tau / (2.0 * sc), eps / (2.0 * sc),
                                     tau / 2.0 - eps, tau / 2.0 + eps});
    Accumulator acc;
    if (!numeric_omega) {
        const Tolerance tol{0.0, 1e-2 * std::min(o.tol, o.inner_tol), 1e-13};
        auto f = [&](double xi) {
            const double p = cf::plane_shifted(axis, xi, chi);
            const double e = cf::evanescent(axis, xi, chi);
            return p * cosine_window(2.0 * xi, tau, eps) + e * exponential_window(2.0 * sc * xi, tau, eps);
        };
        detail::XiPath path;
        path.features = features;
        auto est = detail::integrate_path<double>(f, path, tol, o.max_evaluations);
        acc.value = p0 * cosine_window_moment(tau, eps) + est.value.real();
        acc.error = est.abs_error;
        acc.evaluations = est.evaluations;
        acc.converged = est.converged;
        return acc;
    }
    const Tolerance omega_tol{0.0, o.inner_tol, 1e-13};
    const Tolerance tol{0.0, o.tol, 1e-12};
    double omega_err = 0.0;
    bool omega_ok = true;
    auto f = [&](double xi) {
        const double p = cf::plane(axis, xi, chi);
        const double e = cf::evanescent(axis, xi, chi);
        auto g = [&](double w) {
            return 2.0 * w * (1.0 - std::cos(w * tau)) *
                   (p * std::cos(2.0 * xi * w) + e * std::exp(-2.0 * sc * xi * w));
        };
        const double freq = tau + 2.0 * xi;
        auto est = quadrature::integrate_semiinfinite_oscillatory(g, 2.0 * std::numbers::pi / freq, eps, omega_tol);
        omega_err = std::max(omega_err, est.abs_error);
        omega_ok = omega_ok && est.converged;
        acc.evaluations += est.evaluations;
        return est.value;
    };
    detail::XiPath path;
    path.features = features;
    auto est = detail::integrate_path<double>(f, path, tol, o.max_evaluations);
    acc.value = est.value.real();
    acc.error = est.abs_error + omega_err;
    acc.converged = est.converged && omega_ok;
    return acc;
}

void validate_options(const DispersionOptions& o) {
    if (!(o.tol > 0.0) || !(o.inner_tol > 0.0)) throw std::invalid_argument("tolerances must be > 0");
    if (!(o.band >= 0.0)) throw std::invalid_argument("band must be >= 0");
}

}  // namespace

IntegralEstimate regulated_dispersion(Axis axis, const Scenario& scenario, Method method, double eps_reg,
                                      const DispersionOptions& options, bool numeric_omega) {
    validate_options(options);
    if (!(eps_reg > 0.0) || !std::isfinite(eps_reg)) throw std::invalid_argument("eps_reg must be > 0");
    IntegralEstimate out{0.0, 0.0, 0.0, 0, true};
    if (scenario.chi() == 0.0 || scenario.t() == 0.0) return out;
    const double w = optics::axis_weight(axis);
    const double eps = eps_reg / scenario.z();
    Accumulator acc;
    switch (method) {
        case Method::kernel:
            acc = kernel_method(axis, scenario.chi(), scenario.tau(), eps, options);
            break;
        case Method::spectral:
            acc = spectral_regulated(axis, scenario.chi(), scenario.tau(), eps, options, numeric_omega);
            break;
        default: throw std::invalid_argument("regulated_dispersion: numerical method required");
    }
    out.value = w * acc.value;
    out.abs_error = w * acc.error;
    out.evaluations = acc.evaluations;
    out.converged = acc.converged;
    return out;
}

ReducedDispersion velocity_dispersion(Axis axis, const Scenario& scenario, MethodChoice choice,
                                      const DispersionOptions& options) {
    validate_options(options);
    ReducedDispersion out;
    if (scenario.chi() == 0.0 || scenario.t() == 0.0) {
        out.method = choice == MethodChoice::automatic ? Method::spectral : resolve_method(choice, scenario);
        return out;
    }
    check_singular_band(scenario, options.band);
    out.method = resolve_method(choice, scenario);
    const double w = optics::axis_weight(axis);
    const double chi = scenario.chi();
    const double tau = scenario.tau();

    if (options.regularization == Regularization::exact_limit) {
        Accumulator acc = out.method == Method::kernel ? kernel_method(axis, chi, tau, 0.0, options)
                                                       : spectral_exact(axis, chi, tau, options);
        out.rho = w * acc.value;
        out.abs_error = w * acc.error;
        out.converged = acc.converged && std::isfinite(out.rho);
        return out;
    }

    const LadderOptions& ladder = options.ladder;
    if (ladder.count < 3 || !(ladder.start > 0.0) || !(ladder.ratio > 0.0 && ladder.ratio < 1.0)) {
        throw std::invalid_argument("ladder needs >= 3 rungs, start > 0 and 0 < ratio < 1");
    }
    std::vector<quadrature::RegulatorSample> samples;
    double sample_err = 0.0;
    bool ok = true;
    double eps = ladder.start;
    for (int k = 0; k < ladder.count; ++k, eps *= ladder.ratio) {
        Accumulator acc = out.method == Method::kernel
                              ? kernel_method(axis, chi, tau, eps, options)
                              : spectral_regulated(axis, chi, tau, eps, options, false);
        samples.push_back({eps * scenario.z(), w * acc.value});
        sample_err = std::max(sample_err, w * acc.error);
        ok = ok && acc.converged;
    }
    auto ex = quadrature::extrapolate_to_zero(samples);
    out.rho = ex.limit;
    out.abs_error = ex.abs_error + sample_err;
    out.regulator_trace = samples;
    out.converged = ok && ex.consistent && std::isfinite(out.rho);
    return out;
}

CrossValidation cross_validate(Axis axis, const Scenario& scenario, double tol,
                               const DispersionOptions& options) {
    CrossValidation out;
    out.kernel = velocity_dispersion(axis, scenario, MethodChoice::kernel_time_domain, options);
    out.spectral = velocity_dispersion(axis, scenario, MethodChoice::spectral_window, options);
    out.difference = std::abs(out.kernel.rho - out.spectral.rho);
    const double scale = std::max(std::abs(out.kernel.rho), std::abs(out.spectral.rho));
    out.agreement = out.difference <= out.kernel.abs_error + out.spectral.abs_error + tol * scale;
    return out;
}

}  // namespace vacbrown
