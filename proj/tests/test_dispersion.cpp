#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subrad/dipole_sum.hpp"

using namespace subrad;

TEST_CASE("dispersion relations from a given sum") {
    DipoleSum s;
    s.value = {0.0, k0 / (6.0 * kPi)};
    CHECK(dispersion_at(s, {7.0, 7.0}).decay == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    s.value = {0.0, 0.0};
    CHECK(dispersion_at(s, {7.0, 7.0}).decay == doctest::Approx(1.0));
    CHECK(dispersion_at(s, {7.0, 7.0}).detuning == doctest::Approx(0.0).scale(1.0));
    s.value = {2.0, 0.0};
    CHECK(dispersion_at(s, {7.0, 7.0}).detuning == doctest::Approx(-(3.0 * kPi / k0) * 2.0));
}

TEST_CASE("Bloch vector reduction and light line") {
    const BlochVector k{2.0 * kPi / 0.35 + 1.0, -2.0 * kPi / 0.35 + 0.5};
    const auto r = k.reduced(0.35, 0.35);
    CHECK(r.kx == doctest::Approx(1.0));
    CHECK(r.ky == doctest::Approx(0.5));
    CHECK(BlochVector{7.0, 0.0}.below_light_line());
    CHECK(!BlochVector{3.0, 3.0}.below_light_line());
}

TEST_CASE("guided M point: vanishing losses and method agreement") {
    const double a = 0.35;
    const BlochVector m{kPi / a, kPi / a};
    const auto poisson = dipole_sum_poisson_z(m, a, a);
    CHECK(std::abs(dispersion_at(poisson, m).decay) < 1e-6);

    const auto direct = dipole_sum_damped_direct(m, Polarization::SigmaZ, a, a);
    const double rel = std::abs(poisson.value.real() - direct.value.real()) /
                       std::abs(poisson.value.real());
    CHECK(rel < 1e-4);
    CHECK(std::abs(dispersion_at(direct, m).decay) < 1e-6);
}

TEST_CASE("square-lattice symmetry of the resummed sum") {
    const double a = 0.32;
    const BlochVector k{0.61 * kPi / a, 0.83 * kPi / a};
    const cdouble base = dipole_sum_poisson_z(k, a, a).value;
    for (const BlochVector image : {BlochVector{k.ky, k.kx}, BlochVector{-k.kx, k.ky},
                                    BlochVector{k.kx, -k.ky}, BlochVector{-k.ky, -k.kx}}) {
        const cdouble v = dipole_sum_poisson_z(image, a, a).value;
        CHECK(std::abs(v - base) < 1e-8 * std::abs(base));
    }
    // Reduction invariance.
    const BlochVector shifted{k.kx + 2.0 * kPi / a, k.ky - 2.0 * kPi / a};
    CHECK(std::abs(dipole_sum_poisson_z(shifted, a, a).value - base) < 1e-10 * std::abs(base));
}

TEST_CASE("inversion symmetry of the damped direct sum") {
    const double a = 0.3;
    const BlochVector k{0.4 * kPi / a, 0.9 * kPi / a};
    const auto plus = dipole_sum_damped_direct(k, Polarization::SigmaPlus, a, a);
    const auto minus = dipole_sum_damped_direct({-k.kx, -k.ky}, Polarization::SigmaPlus, a, a);
    CHECK(std::abs(plus.value - minus.value) < 1e-12 * std::max(1.0, std::abs(plus.value)));
}

TEST_CASE("anomaly proximity is reported") {
    const double a = 0.4;
    CHECK_THROWS_AS(dipole_sum_poisson_z({k0, 0.0}, a, a), AnomalyProximity);
}

TEST_CASE("truncation tightening stays within the reported tail bound") {
    const double a = 0.29;
    const BlochVector k{0.8 * kPi / a, 0.95 * kPi / a};
    PoissonOptions loose;
    loose.tolerance = 1e-6;
    PoissonOptions tight;
    tight.tolerance = 1e-12;
    const auto v1 = dipole_sum_poisson_z(k, a, a, loose);
    const auto v2 = dipole_sum_poisson_z(k, a, a, tight);
    CHECK(std::abs(v1.value - v2.value) <= std::max(v1.tail_bound, 1e-14));
    CHECK(v2.n_range >= v1.n_range);
}

TEST_CASE("high-symmetry path carries guided and leaky segments") {
    const auto samples = dispersion_path(0.35, Polarization::SigmaZ, "GXMG", 40);
    REQUIRE(samples.size() > 80);
    int guided = 0, leaky = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (i)
            CHECK(samples[i].path_coord >= samples[i - 1].path_coord);
        if (samples[i].skipped)
            continue;
        if (samples[i].below_light_line) {
            CHECK(std::abs(samples[i].decay) < 1e-6);
            ++guided;
        } else if (samples[i].decay > 1e-2) {
            ++leaky;
        }
    }
    CHECK(guided > 10);
    CHECK(leaky > 10);
}

TEST_CASE("M-point curvature flips sign across the quartic period") {
    const double kappa_large = curvature_at_m(0.35, Polarization::SigmaZ);
    const double kappa_small = curvature_at_m(0.28, Polarization::SigmaZ);
    CHECK(kappa_large * kappa_small < 0.0);
    const double kappa_mid = curvature_at_m(0.294, Polarization::SigmaZ);
    CHECK(std::abs(kappa_mid) < 0.2 * std::max(std::abs(kappa_large), std::abs(kappa_small)));
}

TEST_CASE("flat-band root for out-of-plane dipoles") {
    const auto root = find_flat_band_period(Polarization::SigmaZ, 0.26, 0.33, 15);
    REQUIRE(root.has_value());
    CHECK(std::abs(*root - 0.294) <= 0.003);
}

TEST_CASE("in-plane curvature keeps one sign across periods") {
    const double k1 = curvature_at_m(0.2, Polarization::SigmaPlus);
    const double k2 = curvature_at_m(0.3, Polarization::SigmaPlus);
    const double k3 = curvature_at_m(0.4, Polarization::SigmaPlus);
    CHECK(k1 * k2 > 0.0);
    CHECK(k2 * k3 > 0.0);
}
