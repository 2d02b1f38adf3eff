#include "doctest.h"

#include "close.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vacbrown/kernels.hpp"

using namespace vacbrown;
using namespace vacbrown::kernels;
using cplx = std::complex<double>;

namespace {

const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

// Brute-force xi integral of the single-xi integrand, no subtractions.
cplx direct(Axis axis, double chi, cplx s) {
    auto part = [&](auto pick) {
        auto f = [&](double xi) { return pick(kernel_integrand(axis, 1.0, chi, xi, s)); };
        // split where the plane integrand peaks, near xi = Re s / 2
        const double mid = 0.5 * s.real();
        if (mid <= 0.0 || mid >= 1.0) {
            return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-13);
        }
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, mid, 15, 1e-13) +
               boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, mid, 1.0, 15, 1e-13);
    };
    const double re = part([](const IntegrandValue& v) { return (v.plane + v.evanescent).real(); });
    const double im = part([](const IntegrandValue& v) { return (v.plane + v.evanescent).imag(); });
    return {re, im};
}

// z kernel with r_tm = 1 and no evanescent part, written out as a rational function.
double perfect_conductor_zz(double tau) {
    auto f = [tau](double xi) {
        const double x2 = xi * xi;
        const double t2 = tau * tau;
        const double num = 16.0 * x2 * x2 + 24.0 * x2 * t2 + t2 * t2;
        return 6.0 * (1.0 - x2) * num / std::pow(4.0 * x2 - t2, 4);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 20, 1e-13) / four_pi_sq;
}

}  // namespace

TEST_CASE("single-xi integrand spot values") {
    const auto v = kernel_integrand(Axis::z, 1.0, 1.0, 0.5, 0.0);
    const double tm = (2.0 * 0.5 - std::sqrt(1.25)) / (2.0 * 0.5 + std::sqrt(1.25));
    const double evan = 2.0 * 2.0 * 1.0 * 0.5 * 1.25 * std::sqrt(0.75) / 1.75;
    CHECK(tm == rel(-0.055728, 1e-5));
    CHECK(v.plane.real() * four_pi_sq == rel(4.5 * tm, 1e-13));
    CHECK(v.plane.real() * four_pi_sq == rel(-0.25078, 1e-4));
    CHECK(v.evanescent.real() * four_pi_sq == rel(6.0 * evan, 1e-13));
    CHECK(v.evanescent.real() * four_pi_sq == rel(7.4229, 1e-4));
    CHECK((v.plane + v.evanescent).real() == rel(0.18167, 1e-4));
}

TEST_CASE("vacuum has no renormalized kernel") {
    for (double tau : {2.5, 10.0}) {
        CHECK(kernel_zz(Scenario::reduced(tau, 0.0), {tau}).value == cplx(0.0));
        CHECK(kernel_xx(Scenario::reduced(tau, 0.0), {tau}).value == cplx(0.0));
        CHECK(kernel_zz(Scenario::reduced(tau, 0.0), {1.0, 0.1}).value == cplx(0.0));
    }
}

TEST_CASE("x and y kernels coincide") {
    for (double tau : {-3.0, 2.5, 7.0}) {
        const auto s = Scenario::reduced(std::abs(tau), 2.0);
        CHECK(kernel(Axis::x, s, {tau}).value == kernel(Axis::y, s, {tau}).value);
        CHECK(kernel(Axis::x, s, {1.0, 0.05}).value == kernel(Axis::y, s, {1.0, 0.05}).value);
    }
}

TEST_CASE("kernel matches the brute-force xi integral") {
    for (Axis a : {Axis::z, Axis::x}) {
        for (double chi : {0.01, 1.0, 30.0}) {
            for (cplx s : {cplx(3.0, 0.0), cplx(1.0, -0.3), cplx(2.0, -0.5), cplx(0.2, -0.1)}) {
                const auto k = kernel_at(a, 1.0, chi, s);
                const cplx d = direct(a, chi, s);
                CHECK(k.converged);
                CHECK(std::abs(k.value - d) <= 1e-9 * std::abs(d) + 1e-12);
            }
        }
    }
}

TEST_CASE("scale covariance") {
    for (Axis a : {Axis::z, Axis::x}) {
        for (double lambda : {0.5, 2.0, 10.0}) {
            const auto base = kernel(a, Scenario(1.0, 3.0, 4.0), {3.0, 0.0}).value;
            const auto scaled = kernel(a, Scenario(lambda, 3.0 * lambda, 4.0), {3.0 * lambda, 0.0}).value;
            CHECK(std::abs(scaled * std::pow(lambda, 4) - base) < 1e-10 * std::abs(base));
            const auto reg = kernel(a, Scenario(1.0, 1.0, 4.0), {1.0, 0.1}).value;
            const auto reg_scaled = kernel(a, Scenario(lambda, lambda, 4.0), {lambda, 0.1 * lambda}).value;
            CHECK(std::abs(reg_scaled * std::pow(lambda, 4) - reg) < 1e-10 * std::abs(reg));
        }
    }
}

TEST_CASE("reflection of the time separation") {
    for (Axis a : {Axis::z, Axis::x}) {
        const auto s = Scenario::reduced(3.0, 2.0);
        const auto fwd = kernel(a, s, {3.0});
        const auto back = kernel(a, s, {-3.0});
        CHECK(fwd.plane.real() == rel(back.plane.real(), 1e-12));
        CHECK(std::abs(back.evanescent - std::conj(fwd.evanescent)) < 1e-12 * std::abs(fwd.evanescent));
    }
}

TEST_CASE("late separations decay as tau^-4") {
    for (Axis a : {Axis::z, Axis::x}) {
        auto scaled = [a](double tau) {
            return kernel(a, Scenario::reduced(1.0, 1.0), {tau}).value.real() * std::pow(tau, 4);
        };
        const double r1 = scaled(500.0);
        const double r2 = scaled(1000.0);
        const double r3 = scaled(2000.0);
        // Leading correction is O(tau^-2): successive gaps shrink fourfold.
        CHECK((r3 - r2) / (r2 - r1) == rel(0.25, 0.05));
        CHECK(r3 == rel(r2, 1e-4));
    }
}

TEST_CASE("kernels are linear in small chi") {
    for (Axis a : {Axis::z, Axis::x}) {
        for (double tau : {3.0, 8.0}) {
            const double k1 = kernel(a, Scenario::reduced(tau, 1e-3), {tau}).value.real();
            const double k2 = kernel(a, Scenario::reduced(tau, 2e-3), {tau}).value.real();
            CHECK(k2 / k1 == rel(2.0, 1e-2));
            CHECK(std::abs(k1) < 10.0 * 1e-3);
        }
    }
}

TEST_CASE("large chi approaches the perfect conductor") {
    for (double tau : {2.5, 3.0, 5.0}) {
        const double k = kernel_zz(Scenario::reduced(tau, 1e6), {tau}).value.real();
        const double pc = perfect_conductor_zz(tau);
        CHECK(std::abs(k - pc) < 1e-2 * std::abs(pc));
    }
    // Not uniform in tau: the evanescent remainder grows like tau^2 / sqrt(chi).
    const double pc = perfect_conductor_zz(12.0);
    double prev = INFINITY;
    for (double chi : {1e4, 1e6, 1e8}) {
        const double gap = std::abs(kernel_zz(Scenario::reduced(12.0, chi), {12.0}).value.real() - pc);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-2 * std::abs(pc));
}

TEST_CASE("evanescent part fades with growing chi") {
    double prev = INFINITY;
    for (double chi : {1e2, 1e4, 1e6}) {
        const double e = std::abs(kernel_zz(Scenario::reduced(3.0, chi), {3.0}).evanescent);
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("pole inside the xi range is refused without a regulator") {
    const auto s = Scenario::reduced(1.0, 1.0);
    CHECK_THROWS_AS(kernel_zz(s, {1.0}), SingularBandError);
    CHECK_THROWS_AS(kernel_xx(s, {2.0}), SingularBandError);
    CHECK_THROWS_AS(kernel_at(Axis::z, 1.0, 1.0, cplx(2.0, 0.0)), SingularBandError);
    CHECK_THROWS_AS(kernel_zz(s, {1.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_at(Axis::z, 1.0, 1.0, cplx(1.0, 0.1)), std::invalid_argument);
    const auto reg = kernel_zz(s, {1.0, 0.05});
    CHECK(std::isfinite(reg.value.real()));
    CHECK(reg.abs_error >= 0.0);
}

TEST_CASE("Minkowski normalization") {
    const auto m = minkowski_normalization_check();
    CHECK(m.passed);
    CHECK(m.residual_z < 1e-12);
    CHECK(m.residual_parallel < 1e-12);
}
