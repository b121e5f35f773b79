#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subrad/polylog.hpp"

using namespace subrad;

namespace {

// Brute-force partial sums with an Abel-summation tail bound; the partial
// sums of cos/sin(k theta) are bounded by 1/|sin(theta/2)|, so the remainder
// after K terms is below ~3/(K^n |sin(theta/2)|).
cdouble brute_polylog(int order, double theta, int terms = 200000) {
    double re = 0.0, im = 0.0;
    for (int k = terms; k >= 1; --k) {
        const double p = std::pow(static_cast<double>(k), -order);
        re += std::cos(k * theta) * p;
        im += std::sin(k * theta) * p;
    }
    return {re, im};
}

} // namespace

TEST_CASE("exact reference points") {
    constexpr double catalan = 0.9159655941772190151;
    constexpr double zeta3 = 1.2020569031595942854;
    CHECK(clausen2(kPi / 2.0) == doctest::Approx(catalan).epsilon(1e-13));
    CHECK(std::abs(clausen2(kPi)) < 1e-13);

    const cdouble li2_m1 = polylog_unit(2, kPi);
    CHECK(li2_m1.real() == doctest::Approx(-kPi * kPi / 12.0).epsilon(1e-14));
    CHECK(std::abs(li2_m1.imag()) < 1e-13);

    const cdouble li2_i = polylog_unit(2, kPi / 2.0);
    CHECK(li2_i.real() == doctest::Approx(-kPi * kPi / 48.0).epsilon(1e-13));
    CHECK(li2_i.imag() == doctest::Approx(catalan).epsilon(1e-13));

    const cdouble li3_m1 = polylog_unit(3, kPi);
    CHECK(li3_m1.real() == doctest::Approx(-0.75 * zeta3).epsilon(1e-13));
    CHECK(std::abs(li3_m1.imag()) < 1e-13);
}

TEST_CASE("series evaluation matches brute force off the anomaly") {
    for (double theta : {0.3, 1.1, 2.1, 3.0, 4.2, 5.7}) {
        const cdouble b2 = brute_polylog(2, theta);
        const cdouble b3 = brute_polylog(3, theta);
        CHECK(std::abs(polylog_unit(2, theta) - b2) < 1e-9);
        CHECK(std::abs(polylog_unit(3, theta) - b3) < 1e-12);
    }
}

TEST_CASE("log form of the first order") {
    for (double theta : {0.2, 1.0, 2.5, 4.0, 6.0}) {
        const cdouble z = std::polar(1.0, theta);
        const cdouble expected = -std::log(cdouble{1.0, 0.0} - z);
        CHECK(std::abs(polylog_unit(1, theta) - expected) < 1e-13);
    }
}

TEST_CASE("periodicity and conjugation symmetry") {
    for (int order : {1, 2, 3}) {
        const cdouble a = polylog_unit(order, 1.3);
        CHECK(std::abs(a - polylog_unit(order, 1.3 + 2.0 * kPi)) < 1e-12);
        const cdouble b = polylog_unit(order, -1.3);
        CHECK(std::abs(b - std::conj(a)) < 1e-12);
    }
}

TEST_CASE("even zeta table") {
    CHECK(zeta_even(2) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
    CHECK(zeta_even(4) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-13));
    CHECK(zeta_even(6) == doctest::Approx(std::pow(kPi, 6) / 945.0).epsilon(1e-13));
}
