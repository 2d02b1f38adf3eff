#include "doctest.h"

#include "close.hpp"

#include <cmath>
#include <numbers>

#include "vacbrown/model.hpp"

using namespace vacbrown;

TEST_CASE("refractive index profile") {
    CHECK(refractive_index(1.0, 3.0) == 1.0);
    CHECK(refractive_index(-1.0, 0.0) == 1.0);
    CHECK(refractive_index(-1.0, 3.0) == 4.0);
    CHECK(refractive_index(0.0, 3.0) == 4.0);
    CHECK_THROWS_AS(refractive_index(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(Scenario(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Scenario(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Scenario(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Scenario(1.0, 1.0, -1e-9), std::invalid_argument);
    CHECK_THROWS_AS(Scenario(1.0, NAN, 1.0), std::invalid_argument);

    const Scenario s(2.0, 7.0, 3.5);
    CHECK(s.epsilon() - s.chi() == 1.0);
    CHECK(s.tau() == rel(3.5, 1e-12));
    CHECK(Scenario::reduced(4.0, 1.0).z() == 1.0);
}

TEST_CASE("axis names") {
    CHECK(parse_axis("z") == Axis::z);
    CHECK(parse_axis("X") == Axis::x);
    CHECK(parse_axis("y") == Axis::y);
    CHECK_THROWS_AS(parse_axis("w"), std::invalid_argument);
    CHECK(is_parallel(Axis::x));
    CHECK(is_parallel(Axis::y));
    CHECK_FALSE(is_parallel(Axis::z));
    for (Axis a : {Axis::z, Axis::x, Axis::y}) CHECK(parse_axis(to_string(a)) == a);
}

TEST_CASE("particle properties") {
    const auto e = ParticleProperties::electron();
    CHECK_NOTHROW(e.validate());
    CHECK(e.charge_to_mass_sq == rel(4.0 * std::numbers::pi / 137.035999 / (0.51099895e6 * 0.51099895e6), 1e-12));

    ParticleProperties bad{-1.0, std::nullopt, std::nullopt};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ParticleProperties inconsistent{1.0, 1.0 / 137.0, 1.0};
    CHECK_THROWS_AS(inconsistent.validate(), std::invalid_argument);
}

TEST_CASE("reduction to rho") {
    const auto p = ParticleProperties::electron();
    for (double z : {1e-3, 1.0, 5e4}) {
        const Scenario s(z, 3.0 * z, 1.0);
        const double unit = p.charge_to_mass_sq / (4.0 * std::numbers::pi * std::numbers::pi * z * z);
        CHECK(reduce(unit, s, p).rho == rel(1.0, 1e-14));
        CHECK(reduce(0.0, s, p).rho == 0.0);
        CHECK(to_physical(1.0586, s, p) == rel(1.0586 * unit, 1e-14));
    }
}

TEST_CASE("reduce inverts to_physical") {
    const auto p = ParticleProperties::electron();
    for (double z : {1e-6, 0.3, 12.0, 7e5}) {
        const Scenario s(z, z, 2.0);
        for (double rho : {-3.2, 0.0, 1e-9, 1.0586, 4e7}) {
            CHECK(reduce(to_physical(rho, s, p), s, p).rho == rel(rho, 1e-15));
        }
    }
}

TEST_CASE("metres to natural units") {
    CHECK(metres_to_natural(hbar_c_ev_m) == rel(1.0, 1e-12));
}
