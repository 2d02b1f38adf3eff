#pragma once

#include "vacbrown/model.hpp"

namespace vacbrown::asymptotics {

enum class AsymptoticRegime { large_chi_late_time, small_chi };

// large_chi_late_time: chi >= 1 and t/z >= 10.
// small_chi: chi <= 1e-2 and t/z outside the band of relative width `band` around 2.
bool regime_applies(AsymptoticRegime regime, const Scenario& scenario, double band = 1e-2);

// Published large-chi, t >> z expansions.
//   rho_z = 1 + (1 + ln 4chi)/(2 sqrt chi) + (4/3)(z/t)^2 [1 + 3 ln(4chi)/(2 sqrt chi)]
//   rho_x = (ln 4chi - 1)/(2 sqrt chi) - (4/3)(z/t)^2 (1 - 1/sqrt chi)
// Require t > 0; they are evaluated outside the regime as well.
ReducedDispersion large_chi_z(const Scenario& scenario);
ReducedDispersion large_chi_parallel(const Scenario& scenario);

// t -> infinity limits to O(ln(chi)/sqrt(chi)) at large chi, from the
// numerical evaluation of the static part:
//   rho_z -> 1 + (ln 4chi - 3)/(2 sqrt chi),  rho_x -> (ln 4chi - 2)/(2 sqrt chi).
double late_time_limit(Axis axis, double chi);

// First order in chi, with L = ln((2z + t)^2/(2z - t)^2):
//   rho_z = chi [(tau^2 + 12)/(12 tau^2) + (tau^4 - 8)/(16 tau^3) L]
//   rho_x = chi [-(tau^4 - 4 tau^2 + 24)/(12 tau^2 (tau^2 - 4)) + (tau^4 - 8)/(32 tau^3) L]
// Small tau uses the Taylor series. Throws SingularBandError at t = 2z.
ReducedDispersion small_chi_z(const Scenario& scenario);
ReducedDispersion small_chi_parallel(const Scenario& scenario);

ReducedDispersion closed_form(Axis axis, AsymptoticRegime regime, const Scenario& scenario);

// Relative finite-susceptibility correction of rho_z at late times:
// (1 + ln 4chi)/(2 sqrt chi).
double large_chi_correction(double chi);

// Inverse of large_chi_correction on its decreasing branch chi > e/4.
// Throws std::domain_error if fraction exceeds the maximum 2/sqrt(e).
double chi_threshold(double fraction);

}  // namespace vacbrown::asymptotics
