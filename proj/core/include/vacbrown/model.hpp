#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vacbrown/quadrature.hpp"

namespace vacbrown {

// Natural units hbar = c = 1 throughout.

enum class Axis { z, x, y };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

// x and y are equivalent by isotropy in the interface plane.
inline bool is_parallel(Axis axis) { return axis != Axis::z; }

class Scenario {
public:
    Scenario(double z, double t, double chi);

    // Scenario with z = 1, so that t equals tau.
    static Scenario reduced(double tau, double chi) { return Scenario(1.0, tau, chi); }

    double z() const { return z_; }
    double t() const { return t_; }
    double chi() const { return chi_; }
    double epsilon() const { return 1.0 + chi_; }
    double tau() const { return t_ / z_; }

private:
    double z_;
    double t_;
    double chi_;
};

struct ParticleProperties {
    double charge_to_mass_sq;               // e^2/m^2, in eV^-2
    std::optional<double> fine_structure;   // alpha, with e^2 = 4 pi alpha
    std::optional<double> mass;             // m in eV

    void validate() const;

    static ParticleProperties electron();
};

inline constexpr double hbar_c_ev_m = 1.973269804e-7;
inline constexpr double electron_alpha = 1.0 / 137.035999;
inline constexpr double electron_mass_ev = 0.51099895e6;

enum class Method { kernel, spectral, small_chi_closed_form, large_chi_closed_form };

std::string_view to_string(Method method);

struct ReducedDispersion {
    double rho = 0.0;
    double abs_error = 0.0;
    Method method = Method::kernel;
    std::vector<quadrature::RegulatorSample> regulator_trace;
    bool converged = true;
};

// Thrown for evaluations inside the excluded neighbourhood of t = 2z.
class SingularBandError : public std::domain_error {
public:
    explicit SingularBandError(const std::string& what) : std::domain_error(what) {}
};

// Step profile: 1 in vacuum (z_coord > 0), epsilon in the medium and on the boundary.
double refractive_index(double z_coord, double chi);

// rho = raw * 4 pi^2 m^2 z^2 / e^2, with z in natural units (eV^-1).
ReducedDispersion reduce(double raw, const Scenario& scenario, const ParticleProperties& particle);

// Inverse of reduce: <dv^2> = rho * e^2 / (4 pi^2 m^2 z^2).
double to_physical(double rho, const Scenario& scenario, const ParticleProperties& particle);

inline double metres_to_natural(double metres) { return metres / hbar_c_ev_m; }

}  // namespace vacbrown
