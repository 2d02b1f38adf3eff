#pragma once

#include <complex>

#include "vacbrown/model.hpp"
#include "vacbrown/quadrature.hpp"

namespace vacbrown::detail {

struct BareKernel {
    std::complex<double> value;
    double abs_error;
    std::size_t evaluations;
    bool converged;
};

// Kernel without the axis prefactor at z = 1, for Re s >= 0 and Im s <= 0:
//   int_0^1 [P 3((s + 2xi)^-4 + (s - 2xi)^-4) + 6E (2 sqrt(chi) xi + i s)^-4] dxi.
// Leading small-xi terms of P and E are integrated in closed form when Re s < 2.
// If plane_only, only the P term (closed forms included) is returned.
BareKernel bare_kernel(Axis axis, double chi, std::complex<double> s, quadrature::Tolerance tol,
                       std::size_t budget, bool plane_only = false);

}  // namespace vacbrown::detail
