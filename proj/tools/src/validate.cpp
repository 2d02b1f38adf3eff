#include "validate.hpp"

#include <cmath>
#include <sstream>

#include "table_io.hpp"
#include "vacbrown/asymptotics.hpp"
#include "vacbrown/kernels.hpp"

namespace vacbrown::cli {

namespace {

using Check = CheckResult;

double rho(Axis axis, double chi, double tau, const DispersionOptions& o,
           MethodChoice m = MethodChoice::automatic) {
    return velocity_dispersion(axis, Scenario::reduced(tau, chi), m, o).rho;
}

Check minkowski() {
    const auto r = kernels::minkowski_normalization_check(1e-12);
    return {"minkowski_normalization", r.passed,
            "residual z " + format_number(r.residual_z) + ", parallel " + format_number(r.residual_parallel)};
}

Check chi_zero(const DispersionOptions& o) {
    bool ok = true;
    for (Axis a : {Axis::z, Axis::x}) {
        for (double tau : {0.5, 5.0}) ok = ok && rho(a, 0.0, tau, o) == 0.0;
        const auto k = kernels::kernel(a, Scenario(1.0, 5.0, 0.0), {5.0, 0.0});
        ok = ok && k.value == std::complex<double>{};
    }
    return {"chi_zero_nullity", ok, "rho and kernel vanish identically at chi = 0"};
}

Check xy_symmetry(const DispersionOptions& o) {
    bool ok = true;
    for (double tau : {0.5, 5.0}) ok = ok && rho(Axis::x, 1.0, tau, o) == rho(Axis::y, 1.0, tau, o);
    return {"xy_symmetry", ok, "rho_x == rho_y at chi = 1"};
}

Check scale_invariance(const DispersionOptions& o) {
    double worst = 0.0;
    for (Axis a : {Axis::z, Axis::x}) {
        const double base = rho(a, 10.0, 5.0, o);
        for (double lambda : {0.5, 2.0, 10.0}) {
            const double scaled =
                velocity_dispersion(a, Scenario(lambda, 5.0 * lambda, 10.0), MethodChoice::automatic, o).rho;
            worst = std::max(worst, std::abs(scaled - base) / std::abs(base));
        }
    }
    return {"scale_invariance", worst < 1e-8, "max relative change " + format_number(worst)};
}

Check cross_agreement(const std::vector<std::pair<double, double>>& grid, const DispersionOptions& o) {
    bool ok = true;
    std::ostringstream detail;
    double worst = 0.0;
    for (const auto& [chi, tau] : grid) {
        for (Axis a : {Axis::z, Axis::x}) {
            const auto cv = cross_validate(a, Scenario::reduced(tau, chi), 1e-6, o);
            ok = ok && cv.agreement;
            const double rel = cv.difference / std::max(std::abs(cv.spectral.rho), 1e-300);
            worst = std::max(worst, rel);
            if (!cv.agreement) {
                detail << "disagree at " << to_string(a) << " chi=" << format_number(chi)
                       << " tau=" << format_number(tau) << "; ";
            }
        }
    }
    detail << grid.size() << " points, max relative difference " << format_number(worst);
    return {"method_cross_agreement", ok, detail.str()};
}

Check ratio(const char* name, double tau, double target, const DispersionOptions& o) {
    const double r = rho(Axis::x, 1e-3, tau, o) / rho(Axis::z, 1e-3, tau, o);
    const double dev = std::abs(r / target - 1.0);
    return {name, dev < 0.02, "rho_x/rho_z = " + format_number(r) + ", target " + format_number(target)};
}

Check thresholds() {
    const double c10 = asymptotics::chi_threshold(0.10);
    const double c05 = asymptotics::chi_threshold(0.05);
    const bool ok = std::abs(c10 / 2632.0 - 1.0) < 0.01 && std::abs(c05 / 14288.0 - 1.0) < 0.01;
    return {"threshold_reproduction", ok,
            "chi(10%) = " + format_number(c10) + ", chi(5%) = " + format_number(c05)};
}

Check linearity(const DispersionOptions& o) {
    double worst = 0.0;
    for (Axis a : {Axis::z, Axis::x}) {
        for (double tau : {0.5, 4.0, 10.0}) {
            worst = std::max(worst, std::abs(rho(a, 2e-3, tau, o) / rho(a, 1e-3, tau, o) - 2.0) / 2.0);
        }
    }
    return {"small_chi_linearity", worst < 0.01, "max deviation of rho(2chi)/rho(chi) from 2: " +
                                                     format_number(worst)};
}

Check small_chi_closed_form(const DispersionOptions& o) {
    double worst = 0.0;
    for (Axis a : {Axis::z, Axis::x}) {
        for (double tau : {0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
            const Scenario s = Scenario::reduced(tau, 1e-3);
            const double closed = asymptotics::closed_form(a, asymptotics::AsymptoticRegime::small_chi, s).rho;
            worst = std::max(worst, std::abs(rho(a, 1e-3, tau, o) / closed - 1.0));
        }
    }
    return {"small_chi_closed_form", worst < 5e-3, "max relative deviation " + format_number(worst)};
}

Check parallel_persistence(const DispersionOptions& o) {
    bool positive = true;
    for (double chi : {1.0, 10.0, 100.0}) {
        for (double tau : {5.0, 20.0, 100.0}) positive = positive && rho(Axis::x, chi, tau, o) > 0.0;
    }
    const double r = rho(Axis::x, 100.0, 100.0, o) / rho(Axis::x, 100.0, 20.0, o);
    return {"parallel_persistence", positive && r > 0.9 && r < 1.1,
            std::string(positive ? "rho_x > 0" : "rho_x <= 0 somewhere") +
                ", rho_x(100)/rho_x(20) at chi=100: " + format_number(r)};
}

Check singular_band(const DispersionOptions& o) {
    bool refused = false;
    try {
        rho(Axis::z, 1.0, 2.0, o, MethodChoice::spectral_window);
    } catch (const SingularBandError&) {
        refused = true;
    }
    bool growing = true;
    for (Axis a : {Axis::z, Axis::x}) {
        for (double side : {-1.0, 1.0}) {
            double prev = 0.0;
            for (double d : {0.4, 0.2, 0.1, 0.05}) {
                const double v = std::abs(rho(a, 1e-3, 2.0 + side * d, o, MethodChoice::spectral_window));
                growing = growing && std::isfinite(v) && v > prev;
                prev = v;
            }
        }
    }
    return {"singular_band", refused && growing,
            std::string(refused ? "tau = 2 refused" : "tau = 2 not refused") +
                (growing ? ", |rho| grows towards the band" : ", |rho| does not grow towards the band")};
}

Check ladder(const DispersionOptions& o) {
    DispersionOptions lo = o;
    lo.regularization = Regularization::regulator_ladder;
    double worst = 0.0;
    bool ok = true;
    for (Axis a : {Axis::z, Axis::x}) {
        for (auto [chi, tau] : {std::pair{1.0, 4.0}, std::pair{100.0, 1.0}}) {
            const auto exact = velocity_dispersion(a, Scenario::reduced(tau, chi), MethodChoice::spectral_window, o);
            const auto lad = velocity_dispersion(a, Scenario::reduced(tau, chi), MethodChoice::spectral_window, lo);
            const double d = std::abs(lad.rho - exact.rho);
            ok = ok && lad.converged && d <= lad.abs_error + exact.abs_error;
            worst = std::max(worst, d / std::abs(exact.rho));
        }
    }
    return {"regulator_ladder_limit", ok, "max relative difference from the exact limit " + format_number(worst)};
}

}  // namespace

std::vector<CheckResult> run_validation(bool full, const DispersionOptions& options) {
    std::vector<CheckResult> out;
    auto guarded = [&](const char* name, auto&& check) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };
    const DispersionOptions& o = options;
    guarded("minkowski_normalization", [&] { return minkowski(); });
    guarded("chi_zero_nullity", [&] { return chi_zero(o); });
    guarded("xy_symmetry", [&] { return xy_symmetry(o); });
    guarded("scale_invariance", [&] { return scale_invariance(o); });
    std::vector<std::pair<double, double>> grid = {{1e-3, 4.0}, {10.0, 10.0}};
    if (full) {
        grid.clear();
        for (double chi : {1e-3, 1.0, 1e3}) {
            for (double tau : {0.5, 4.0, 50.0}) grid.emplace_back(chi, tau);
        }
    }
    guarded("method_cross_agreement", [&] { return cross_agreement(grid, o); });
    guarded("small_chi_ratio_early", [&] { return ratio("small_chi_ratio_early", 0.1, 7.0 / 9.0, o); });
    guarded("small_chi_ratio_late", [&] { return ratio("small_chi_ratio_late", 100.0, 2.0 / 7.0, o); });
    guarded("threshold_reproduction", [&] { return thresholds(); });
    if (full) {
        guarded("small_chi_linearity", [&] { return linearity(o); });
        guarded("small_chi_closed_form", [&] { return small_chi_closed_form(o); });
        guarded("parallel_persistence", [&] { return parallel_persistence(o); });
        guarded("singular_band", [&] { return singular_band(o); });
        guarded("regulator_ladder_limit", [&] { return ladder(o); });
    }
    return out;
}

}  // namespace vacbrown::cli
