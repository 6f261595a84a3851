#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spinforms/bessel.hpp"

using namespace spinforms;

namespace {
const HalfInt half = HalfInt::from_twice(1);
}

TEST_CASE("bessel series against the standard library") {
    // independent oracle: libstdc++'s cyl_bessel_j
    for (double nu : {0.0, 0.5, 1.0, 1.5, std::sqrt(2.0), 2.2912878474779199}) {
        for (double x = 0.1; x <= 14.0; x += 0.37) {
            double mine = bessel_j(nu, x);
            double ref = std::cyl_bessel_j(nu, x);
            CHECK(std::abs(mine - ref) <= 1e-10 * (std::abs(ref) + 1.0));
        }
    }
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.5, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), SpectrumError);
}

TEST_CASE("index mu") {
    RadialCase free{HalfInt(1), HalfInt(0), 1.0, 1.0};
    CHECK(free.mu() == Catch::Approx(1.5).epsilon(1e-15));  // n = 0: mu = l + 1/2

    RadialCase mono{HalfInt(1), half, 1.0, 1.0};
    CHECK(mono.mu() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // strictly decreasing in |n| for fixed l
    double prev = RadialCase{HalfInt(2), HalfInt(0), 1.0, 1.0}.mu();
    for (int tn = 1; tn <= 4; ++tn) {
        RadialCase rc{HalfInt(2), HalfInt::from_twice(tn), 1.0, 1.0};
        CHECK(rc.mu() < prev);
        prev = rc.mu();
    }

    // imaginary mu is rejected as an unsupported sector
    RadialCase bad{HalfInt(0), HalfInt(2), 1.0, 1.0};
    CHECK_THROWS_AS(bad.mu(), SpectrumError);
}

TEST_CASE("energy sectors") {
    auto good = radial_sector_for_energy(HalfInt(1), HalfInt(0), 1.0, 0.5);
    CHECK(good.has_solution);
    CHECK(good.radial_case.k_wave == Catch::Approx(1.0));

    auto bad = radial_sector_for_energy(HalfInt(1), HalfInt(0), 1.0, -0.5);
    CHECK_FALSE(bad.has_solution);
    CHECK_FALSE(radial_sector_for_energy(HalfInt(1), HalfInt(0), 1.0, 0.0).has_solution);
}

TEST_CASE("radial residual of the closed-form solution") {
    Grid grid{0.5, 10.0, 1e-3};

    // (l, n) = (1, 0), (1, 1/2), (2, 1) all satisfy the equation to 1e-6
    for (auto [l, n] : {std::pair<HalfInt, HalfInt>{HalfInt(1), HalfInt(0)},
                        {HalfInt(1), half},
                        {HalfInt(2), HalfInt(1)}}) {
        RadialCase rc{l, n, 1.0, 1.0};
        auto res = radial_residual(rc, grid);
        INFO("l=" << l.to_string() << " n=" << n.to_string() << " mu=" << rc.mu());
        CHECK(res.max_residual <= 1e-6);
        CHECK(res.r.size() == grid.count());
    }

    // the finite-difference floor sits well above 1e-12
    RadialCase rc{HalfInt(1), HalfInt(0), 1.0, 1.0};
    CHECK(radial_residual(rc, grid).max_residual > 1e-12);

    // mass enters through E = k^2/2m without breaking the identity
    RadialCase heavy{HalfInt(1), half, 3.0, 1.3};
    CHECK(radial_residual(heavy, Grid{0.5, 8.0, 1e-3}).max_residual <= 1e-6);

    // a coarse grid has a visibly larger truncation error
    CHECK(radial_residual(rc, Grid{0.5, 10.0, 0.05}).max_residual >
          radial_residual(rc, grid).max_residual);

    CHECK_THROWS_AS(radial_residual(rc, Grid{10.0, 0.5, 1e-3}), SpectrumError);
    CHECK_THROWS_AS(radial_residual(rc, Grid{1e-4, 1.0, 1e-3}), SpectrumError);
}
