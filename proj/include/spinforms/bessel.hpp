#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinforms/halfint.hpp"

namespace spinforms {

struct SpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// J_nu(x) by the ascending series in long double; relative error well below
/// 1e-10 for the x <= 15, nu <= 4 range used here.
inline double bessel_j(double nu, double x) {
    if (x < 0.0) throw SpectrumError("bessel_j: x must be non-negative");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    long double half_x = static_cast<long double>(x) / 2.0L;
    long double q = half_x * half_x;
    long double term = std::pow(half_x, static_cast<long double>(nu)) / std::tgamma(1.0L + static_cast<long double>(nu));
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (static_cast<long double>(k) * (static_cast<long double>(nu) + k));
        sum += term;
        if (std::abs(term) < 1e-24L * (std::abs(sum) + 1e-30L) && k > 4) break;
    }
    return static_cast<double>(sum);
}

/// One radial sector: effective angular momentum l, fiber charge n, mass and
/// wave number with E = k^2 / (2m) > 0. mu = sqrt((l+1/2)^2 - n^2).
struct RadialCase {
    HalfInt l, n;
    double mass = 1.0;
    double k_wave = 1.0;

    double mu() const {
        double lv = l.value() + 0.5, nv = n.value();
        double m2 = lv * lv - nv * nv;
        if (m2 < 0.0) throw SpectrumError("radial case outside the supported sector: |n| > l + 1/2");
        return std::sqrt(m2);
    }
    double energy() const { return k_wave * k_wave / (2.0 * mass); }

    void validate() const {
        if (mass <= 0.0 || k_wave <= 0.0) throw SpectrumError("mass and wave number must be positive");
        (void)mu();
    }
};

/// Flags the E <= 0 sector, where the radial equation has no admissible
/// solutions; positive energies map to a RadialCase.
struct RadialSector {
    bool has_solution = false;
    RadialCase radial_case;
};

inline RadialSector radial_sector_for_energy(HalfInt l, HalfInt n, double mass, double energy) {
    RadialSector out;
    if (energy <= 0.0) return out;
    out.has_solution = true;
    out.radial_case = RadialCase{l, n, mass, std::sqrt(2.0 * mass * energy)};
    out.radial_case.validate();
    return out;
}

struct Grid {
    double start = 0.5, stop = 10.0, step = 1e-3;
    std::size_t count() const {
        if (step <= 0.0 || stop < start) throw SpectrumError("grid must be increasing");
        return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    }
};

struct RadialResidualResult {
    double max_residual = 0.0;
    double max_u = 0.0;
    std::vector<double> r;
    std::vector<double> residual;  // |[-(1/2m) u'' + (l(l+1)-n^2)/(2m r^2) - E] u| / max|u|
};

/**
 * Fourth-order finite-difference residual of the closed-form solution
 * u(r) = sqrt(r) J_mu(k r) against the reduced radial equation, normalized by
 * max |u| over the grid.
 */
inline RadialResidualResult radial_residual(const RadialCase& rc, const Grid& grid) {
    rc.validate();
    double mu = rc.mu();
    double E = rc.energy();
    double ang = rc.l.value() * (rc.l.value() + 1.0) - rc.n.value() * rc.n.value();
    std::size_t count = grid.count();
    double h = grid.step;

    std::vector<double> u(count + 4);
    auto r_at = [&](std::size_t i) { return grid.start + (static_cast<double>(i) - 2.0) * h; };
    double max_u = 0.0;
    for (std::size_t i = 0; i < count + 4; ++i) {
        double r = r_at(i);
        if (r <= 0.0) throw SpectrumError("grid too close to the origin for the stencil");
        u[i] = std::sqrt(r) * bessel_j(mu, rc.k_wave * r);
        if (i >= 2 && i < count + 2) max_u = std::max(max_u, std::abs(u[i]));
    }
    if (max_u == 0.0) throw SpectrumError("solution vanished on the whole grid");

    RadialResidualResult out;
    out.max_u = max_u;
    out.r.reserve(count);
    out.residual.reserve(count);
    double inv12h2 = 1.0 / (12.0 * h * h);
    for (std::size_t i = 2; i < count + 2; ++i) {
        double r = r_at(i);
        double upp = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2]) * inv12h2;
        double res = std::abs((-0.5 * upp + 0.5 * ang * u[i] / (r * r)) / rc.mass - E * u[i]) / max_u;
        out.r.push_back(r);
        out.residual.push_back(res);
        out.max_residual = std::max(out.max_residual, res);
    }
    return out;
}

}  // namespace spinforms
