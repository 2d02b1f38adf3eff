#include "vacbrown/model.hpp"

#include <cmath>
#include <numbers>

namespace vacbrown {

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::z: return "z";
        case Axis::x: return "x";
        case Axis::y: return "y";
    }
    return "?";
}

Axis parse_axis(std::string_view text) {
    if (text == "z" || text == "Z") return Axis::z;
    if (text == "x" || text == "X") return Axis::x;
    if (text == "y" || text == "Y") return Axis::y;
    throw std::invalid_argument("unknown axis '" + std::string(text) + "'");
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::kernel: return "kernel";
        case Method::spectral: return "spectral";
        case Method::small_chi_closed_form: return "small_chi_closed_form";
        case Method::large_chi_closed_form: return "large_chi_closed_form";
    }
    return "?";
}

Scenario::Scenario(double z, double t, double chi) : z_(z), t_(t), chi_(chi) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("Scenario: z must be > 0");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("Scenario: t must be >= 0");
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw std::invalid_argument("Scenario: chi must be >= 0");
}

void ParticleProperties::validate() const {
    if (!(charge_to_mass_sq > 0.0) || !std::isfinite(charge_to_mass_sq)) {
        throw std::invalid_argument("ParticleProperties: charge_to_mass_sq must be > 0");
    }
    if (fine_structure && mass) {
        const double expected = 4.0 * std::numbers::pi * *fine_structure / (*mass * *mass);
        if (std::abs(expected - charge_to_mass_sq) > 1e-12 * expected) {
            throw std::invalid_argument("ParticleProperties: e^2 != 4 pi alpha");
        }
    }
}

ParticleProperties ParticleProperties::electron() {
    const double e2 = 4.0 * std::numbers::pi * electron_alpha;
    return {e2 / (electron_mass_ev * electron_mass_ev), electron_alpha, electron_mass_ev};
}

double refractive_index(double z_coord, double chi) {
    if (!(chi >= 0.0)) throw std::invalid_argument("refractive_index: chi must be >= 0");
    return z_coord > 0.0 ? 1.0 : 1.0 + chi;
}

ReducedDispersion reduce(double raw, const Scenario& scenario, const ParticleProperties& particle) {
    particle.validate();
    const double z = scenario.z();
    ReducedDispersion out;
    out.rho = raw * 4.0 * std::numbers::pi * std::numbers::pi * z * z / particle.charge_to_mass_sq;
    return out;
}

double to_physical(double rho, const Scenario& scenario, const ParticleProperties& particle) {
    particle.validate();
    const double z = scenario.z();
    return rho * particle.charge_to_mass_sq / (4.0 * std::numbers::pi * std::numbers::pi * z * z);
}

}  // namespace vacbrown
