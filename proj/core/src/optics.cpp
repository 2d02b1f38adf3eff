#include "vacbrown/optics.hpp"

#include <stdexcept>

namespace vacbrown::optics {

namespace {

void check_xi_chi(double xi, double chi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in [0, 1]");
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw std::invalid_argument("chi must be >= 0");
}

}  // namespace

void SpectralPoint::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be > 0");
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in [0, 1]");
}

double fresnel_tm(double xi, double chi) {
    check_xi_chi(xi, chi);
    if (chi == 0.0) return 0.0;
    return coeff::r_tm(xi, chi);
}

double fresnel_te(double xi, double chi) {
    check_xi_chi(xi, chi);
    if (chi == 0.0) return 0.0;
    return coeff::r_te(xi, chi);
}

SpectralDensity spectral_density(Axis axis, const SpectralPoint& point, double chi,
                                 bool renormalized) {
    point.validate();
    check_xi_chi(point.xi, chi);
    const double xi = point.xi;
    SpectralDensity d;
    d.prefactor = axis_prefactor(axis);
    d.plane_const = renormalized ? 0.0 : (is_parallel(axis) ? 1.0 + xi * xi : 1.0 - xi * xi);
    d.plane_osc = coeff::plane(axis, xi, chi);
    d.evan_coeff = coeff::evanescent(axis, xi, chi);
    return d;
}

SpectralDensity spectral_density_z(const SpectralPoint& point, double chi, bool renormalized) {
    return spectral_density(Axis::z, point, chi, renormalized);
}

SpectralDensity spectral_density_parallel(const SpectralPoint& point, double chi,
                                          bool renormalized) {
    return spectral_density(Axis::x, point, chi, renormalized);
}

double spectral_integrand(const SpectralDensity& density, const SpectralPoint& point, double z,
                          double chi) {
    const double w = point.omega;
    const double osc = std::cos(2.0 * w * point.xi * z);
    const double decay = std::exp(-2.0 * w * std::sqrt(chi) * point.xi * z);
    return density.prefactor * w * w * w *
           (density.plane_const + density.plane_osc * osc + density.evan_coeff * decay);
}

}  // namespace vacbrown::optics
