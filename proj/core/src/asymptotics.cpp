#include "vacbrown/asymptotics.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace vacbrown::asymptotics {

bool regime_applies(AsymptoticRegime regime, const Scenario& scenario, double band) {
    const double tau = scenario.tau();
    switch (regime) {
        case AsymptoticRegime::large_chi_late_time:
            return scenario.chi() >= 1.0 && tau >= 10.0;
        case AsymptoticRegime::small_chi:
            return scenario.chi() <= 1e-2 && std::abs(tau - 2.0) >= 2.0 * band;
    }
    return false;
}

double large_chi_correction(double chi) {
    if (!(chi > 0.0)) throw std::invalid_argument("large_chi_correction: chi must be > 0");
    return (1.0 + std::log(4.0 * chi)) / (2.0 * std::sqrt(chi));
}

namespace {

void require_late(const Scenario& s) {
    if (!(s.chi() > 0.0)) throw std::invalid_argument("large-chi expansion needs chi > 0");
    if (!(s.t() > 0.0)) throw std::invalid_argument("large-chi expansion needs t > 0");
}

ReducedDispersion formula(double rho, Method method) {
    ReducedDispersion out;
    out.rho = rho;
    out.method = method;
    return out;
}

// ln((2 + tau)^2 / (2 - tau)^2) without cancellation on either side of 2.
double log_ratio(double tau) {
    if (tau < 2.0) return 2.0 * std::log1p(2.0 * tau / (2.0 - tau));
    return 2.0 * std::log1p(4.0 / (tau - 2.0));
}

// Brackets as power series in x = tau/2 for small tau.
double series_bracket(Axis axis, double tau) {
    const double x2 = 0.25 * tau * tau;
    double sum = 0.0;
    double xm = x2;
    for (int m = 2; m < 400; m += 2, xm *= x2) {
        const double k = static_cast<double>(m);
        const double c = is_parallel(axis) ? 0.125 + 0.25 / (k - 1.0) - 0.125 / (k + 3.0)
                                           : 0.5 / (k - 1.0) - 0.25 / (k + 3.0);
        const double term = c * xm;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

ReducedDispersion small_chi(Axis axis, const Scenario& s) {
    const double tau = s.tau();
    if (tau == 2.0) {
        throw SingularBandError("small-chi closed form diverges at t = 2z (singular at t = 2z)");
    }
    if (s.chi() == 0.0 || tau == 0.0) return formula(0.0, Method::small_chi_closed_form);
    double bracket = 0.0;
    if (tau < 0.2) {
        bracket = series_bracket(axis, tau);
    } else {
        const double t2 = tau * tau;
        const double t3 = t2 * tau;
        const double t4 = t2 * t2;
        const double L = log_ratio(tau);
        bracket = is_parallel(axis)
                      ? -(t4 - 4.0 * t2 + 24.0) / (12.0 * t2 * (t2 - 4.0)) + (t4 - 8.0) / (32.0 * t3) * L
                      : (t2 + 12.0) / (12.0 * t2) + (t4 - 8.0) / (16.0 * t3) * L;
    }
    return formula(s.chi() * bracket, Method::small_chi_closed_form);
}

}  // namespace

ReducedDispersion large_chi_z(const Scenario& s) {
    require_late(s);
    const double chi = s.chi();
    const double r = s.z() / s.t();
    const double sq = std::sqrt(chi);
    const double rho = 1.0 + large_chi_correction(chi) +
                       (4.0 / 3.0) * r * r * (1.0 + 3.0 * std::log(4.0 * chi) / (2.0 * sq));
    return formula(rho, Method::large_chi_closed_form);
}

ReducedDispersion large_chi_parallel(const Scenario& s) {
    require_late(s);
    const double chi = s.chi();
    const double r = s.z() / s.t();
    const double sq = std::sqrt(chi);
    const double rho = (std::log(4.0 * chi) - 1.0) / (2.0 * sq) - (4.0 / 3.0) * r * r * (1.0 - 1.0 / sq);
    return formula(rho, Method::large_chi_closed_form);
}

double late_time_limit(Axis axis, double chi) {
    if (!(chi > 0.0)) throw std::invalid_argument("late_time_limit: chi must be > 0");
    const double l = std::log(4.0 * chi);
    const double sq = 2.0 * std::sqrt(chi);
    return is_parallel(axis) ? (l - 2.0) / sq : 1.0 + (l - 3.0) / sq;
}

ReducedDispersion small_chi_z(const Scenario& s) { return small_chi(Axis::z, s); }
ReducedDispersion small_chi_parallel(const Scenario& s) { return small_chi(Axis::x, s); }

ReducedDispersion closed_form(Axis axis, AsymptoticRegime regime, const Scenario& s) {
    if (regime == AsymptoticRegime::small_chi) return small_chi(axis, s);
    return is_parallel(axis) ? large_chi_parallel(s) : large_chi_z(s);
}

double chi_threshold(double fraction) {
    if (!(fraction > 0.0) || !std::isfinite(fraction)) {
        throw std::invalid_argument("chi_threshold: fraction must be > 0");
    }
    const double peak_chi = std::numbers::e / 4.0;
    if (fraction >= large_chi_correction(peak_chi)) {
        throw std::domain_error("chi_threshold: fraction exceeds the maximum correction 2/sqrt(e)");
    }
    // Root in u = ln chi, where the correction is smooth and monotone.
    auto g = [&](double u) { return large_chi_correction(std::exp(u)) - fraction; };
    double lo = std::log(peak_chi);
    double hi = lo + 1.0;
    while (g(hi) > 0.0) hi += 2.0;
    std::uintmax_t iterations = 200;
    const auto root = boost::math::tools::toms748_solve(
        g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
    return std::exp(0.5 * (root.first + root.second));
}

}  // namespace vacbrown::asymptotics
