#pragma once

#include <string>
#include <vector>

#include "vacbrown/model.hpp"
#include "vacbrown/quadrature.hpp"

namespace vacbrown {

enum class MethodChoice { kernel_time_domain, spectral_window, automatic };

std::string_view to_string(MethodChoice choice);
MethodChoice parse_method_choice(std::string_view text);

// auto was requested for 0.9 < t/2z < 1.1, where an explicit method is required.
class MethodSelectionError : public std::invalid_argument {
public:
    explicit MethodSelectionError(const std::string& what) : std::invalid_argument(what) {}
};

// exact_limit takes eps_reg -> 0 analytically: the pole on the real xi axis is
// passed on a contour above it, which equals the limit of the regulated
// integrals. regulator_ladder evaluates at finite eps_reg and extrapolates.
enum class Regularization { exact_limit, regulator_ladder };

struct LadderOptions {
    double start = 0.02;  // first eps_reg in units of z
    double ratio = 0.5;
    int count = 4;
};

struct DispersionOptions {
    double tol = 1e-8;         // relative tolerance of the outer integrals
    double inner_tol = 1e-10;  // relative tolerance of the inner xi integrals
    double band = 1e-2;        // refuse |t - 2z| < band * 2z
    Regularization regularization = Regularization::exact_limit;
    LadderOptions ladder{};
    std::size_t max_evaluations = 400000;
};

// Throws SingularBandError when |t - 2z| < band * 2z.
void check_singular_band(const Scenario& scenario, double band);

// Method used for a choice at this scenario; throws MethodSelectionError.
Method resolve_method(MethodChoice choice, const Scenario& scenario);

// rho for the given axis. chi = 0 or t = 0 gives exactly 0.
ReducedDispersion velocity_dispersion(Axis axis, const Scenario& scenario, MethodChoice method,
                                      const DispersionOptions& options = {});

// Value of rho at a fixed regulator eps_reg > 0 (units of z). Both methods
// compute the same regulated quantity. numeric_omega performs the spectral
// omega integrals by quadrature instead of their closed forms.
quadrature::IntegralEstimate regulated_dispersion(Axis axis, const Scenario& scenario, Method method,
                                                  double eps_reg, const DispersionOptions& options = {},
                                                  bool numeric_omega = false);

struct CrossValidation {
    ReducedDispersion kernel;
    ReducedDispersion spectral;
    double difference = 0.0;
    bool agreement = false;
};

// agreement iff |rho_k - rho_s| <= err_k + err_s + tol * max(|rho_k|, |rho_s|).
CrossValidation cross_validate(Axis axis, const Scenario& scenario, double tol,
                               const DispersionOptions& options = {});

}  // namespace vacbrown
