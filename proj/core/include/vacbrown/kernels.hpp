#pragma once

#include <complex>

#include "vacbrown/model.hpp"
#include "vacbrown/quadrature.hpp"

namespace vacbrown::kernels {

// Time separation tau, shifted to s = tau - i*eps_reg.
struct RegulatedSeparation {
    double tau;
    double eps_reg = 0.0;
};

// Renormalized two-point kernel (Minkowski term removed), prefactor included.
// The physical kernel is value.real(). The evanescent term is evaluated as
// 6E/(b + i s)^4, b = 2 z sqrt(chi) xi, which is analytic for Im s <= 0.
struct KernelValue {
    std::complex<double> value;
    std::complex<double> plane;
    std::complex<double> evanescent;
    double abs_error = 0.0;
    bool converged = true;
};

struct KernelOptions {
    quadrature::Tolerance tol{0.0, 1e-11, 1e-14};
    std::size_t max_evaluations = 200000;
    double singular_margin = 1e-6;
};

KernelValue kernel_zz(const Scenario& scenario, RegulatedSeparation sep, const KernelOptions& options = {});
KernelValue kernel_xx(const Scenario& scenario, RegulatedSeparation sep, const KernelOptions& options = {});
KernelValue kernel(Axis axis, const Scenario& scenario, RegulatedSeparation sep,
                   const KernelOptions& options = {});

// Kernel at complex separation s with Im s <= 0. For real s inside (-2z, 2z)
// this is the boundary value approached from below (the eps_reg -> 0 limit).
// Refuses s = 0 and s within singular_margin of +-2z.
KernelValue kernel_at(Axis axis, double z, double chi, std::complex<double> s,
                      const KernelOptions& options = {});

struct IntegrandValue {
    std::complex<double> plane;
    std::complex<double> evanescent;
};

// Integrand of the xi integral at a single xi, prefactor included.
IntegrandValue kernel_integrand(Axis axis, double z, double chi, double xi, std::complex<double> s);

struct MinkowskiCheck {
    double residual_z;
    double residual_parallel;
    bool passed;
};

// Vacuum parts: (1/4pi^2) int 6(1 - xi^2) and (1/8pi^2) int 6(1 + xi^2) against 1/pi^2.
MinkowskiCheck minkowski_normalization_check(double threshold = 1e-12);

}  // namespace vacbrown::kernels
