#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "vacbrown/model.hpp"

namespace vacbrown::optics {

// Angle-integrated spectral densities. With xi = cos(theta) on the vacuum
// side, the plane-wave normal wavenumber is k = omega*xi, the tangential one
// omega*sqrt(1 - xi^2), and the medium-side normal wavenumber
// omega*sqrt(chi + xi^2). Evanescent modes carry the weight
// exp(-2 omega sqrt(chi) xi z).

struct SpectralPoint {
    double omega;
    double xi;

    void validate() const;
};

// Per unit omega^3, the density is
//   prefactor * [plane_const + plane_osc * cos(2 omega xi z) + evan_coeff * exp(-2 omega sqrt(chi) xi z)]
// with prefactor 1/(4 pi^2) for z and 1/(8 pi^2) for the parallel axes.
struct SpectralDensity {
    double prefactor;
    double plane_const;
    double plane_osc;
    double evan_coeff;
};

double fresnel_tm(double xi, double chi);
double fresnel_te(double xi, double chi);

SpectralDensity spectral_density_z(const SpectralPoint& point, double chi, bool renormalized);
SpectralDensity spectral_density_parallel(const SpectralPoint& point, double chi, bool renormalized);
SpectralDensity spectral_density(Axis axis, const SpectralPoint& point, double chi, bool renormalized);

// omega^3 * density at distance z; the integrand of the omega, xi mode sum.
double spectral_integrand(const SpectralDensity& density, const SpectralPoint& point, double z,
                          double chi);

inline double axis_prefactor(Axis axis) {
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    return is_parallel(axis) ? 1.0 / (2.0 * four_pi_sq) : 1.0 / four_pi_sq;
}

// axis_prefactor relative to 1/(4 pi^2).
inline double axis_weight(Axis axis) { return is_parallel(axis) ? 0.5 : 1.0; }

// Coefficient functions, usable at complex xi for contour deformations.
// P is plane_osc, E is evan_coeff. Near xi = 0 (chi > 0):
//   P = P0 + P1 xi + O(xi^2),  E = E1 xi + O(xi^3),  P1 = E1 / chi.
// The remainder forms are cancellation-free.
namespace coeff {

template <class T>
T root(T xi, double chi) {
    return std::sqrt(chi + xi * xi);
}

template <class T>
T r_tm(T xi, double chi) {
    const double eps = 1.0 + chi;
    const T q = root(xi, chi);
    return (eps * xi - q) / (eps * xi + q);
}

template <class T>
T r_te(T xi, double chi) {
    const T q = root(xi, chi);
    return (xi - q) / (xi + q);
}

template <class T>
T transverse(T xi) {
    return std::sqrt(1.0 - xi * xi);
}

inline double plane_at_zero(double chi) { return chi > 0.0 ? -1.0 : 0.0; }

inline double plane_slope(Axis axis, double chi) {
    if (chi <= 0.0) return 0.0;
    const double s = 2.0 / std::sqrt(chi);
    return is_parallel(axis) ? s : s * (1.0 + chi);
}

inline double evanescent_slope(Axis axis, double chi) {
    if (chi <= 0.0) return 0.0;
    const double s = 2.0 * std::sqrt(chi);
    return is_parallel(axis) ? s : s * (1.0 + chi);
}

template <class T>
T evanescent_denominator(T xi, double chi) {
    return 1.0 + chi * (2.0 + chi) * xi * xi;
}

template <class T>
T plane(Axis axis, T xi, double chi) {
    if (chi <= 0.0) return T{};
    if (is_parallel(axis)) return r_te(xi, chi) - xi * xi * r_tm(xi, chi);
    return (1.0 - xi * xi) * r_tm(xi, chi);
}

// P - P0
template <class T>
T plane_shifted(Axis axis, T xi, double chi) {
    if (chi <= 0.0) return T{};
    const T q = root(xi, chi);
    if (is_parallel(axis)) return 2.0 * xi / (xi + q) - xi * xi * r_tm(xi, chi);
    const double eps = 1.0 + chi;
    return (1.0 - xi * xi) * 2.0 * eps * xi / (eps * xi + q) + xi * xi;
}

// P - P0 - P1 xi
template <class T>
T plane_remainder(Axis axis, T xi, double chi) {
    if (chi <= 0.0) return T{};
    const double sc = std::sqrt(chi);
    const T q = root(xi, chi);
    const T xi2 = xi * xi;
    if (is_parallel(axis)) {
        const T d = xi + q;
        return -2.0 * xi2 * (1.0 + xi / (sc + q)) / (d * sc) - xi2 * r_tm(xi, chi);
    }
    const double eps = 1.0 + chi;
    const T d = eps * xi + q;
    return xi2 - 2.0 * eps * xi2 * (eps + xi * sc + xi / (sc + q)) / (d * sc);
}

template <class T>
T evanescent(Axis axis, T xi, double chi) {
    if (chi <= 0.0) return T{};
    const double eps = 1.0 + chi;
    const double sc = std::sqrt(chi);
    const T tr = transverse(xi);
    const T den = evanescent_denominator(xi, chi);
    if (is_parallel(axis)) {
        return 2.0 * sc * xi * tr * (1.0 + eps * chi * xi * xi / den);
    }
    return (1.0 + chi * xi * xi) * 2.0 * eps * sc * xi * tr / den;
}

// E - E1 xi
template <class T>
T evanescent_remainder(Axis axis, T xi, double chi) {
    if (chi <= 0.0) return T{};
    const double eps = 1.0 + chi;
    const double sc = std::sqrt(chi);
    const T xi2 = xi * xi;
    const T tr = transverse(xi);
    const T den = evanescent_denominator(xi, chi);
    const T lift = 1.0 + tr;  // 1 - sqrt(1 - xi^2) = xi^2 / lift
    if (is_parallel(axis)) {
        return 2.0 * sc * xi * (-xi2 / lift + tr * eps * chi * xi2 / den);
    }
    return -2.0 * eps * sc * xi * xi2 * (chi * eps + (1.0 + chi * xi2) / lift) / den;
}

}  // namespace coeff

}  // namespace vacbrown::optics
