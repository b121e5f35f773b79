#include "subrad/polylog.hpp"

#include <array>
#include <cmath>

namespace subrad {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr int kZetaMax = 64;

// Reduce into [0, 2pi).
double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0)
        t += kTwoPi;
    return t;
}

std::array<double, kZetaMax + 1> make_zeta_table() {
    std::array<double, kZetaMax + 1> z{};
    for (int s = 2; s <= kZetaMax; s += 2) {
        // Direct sum with an Euler-Maclaurin tail.
        const int cut = 200;
        double acc = 0.0;
        for (int k = cut; k >= 1; --k)
            acc += std::pow(static_cast<double>(k), -s);
        const double K = cut + 1;
        acc += std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -1.0 * s) +
               (s / 12.0) * std::pow(K, -1.0 * s - 1.0);
        z[s] = acc;
    }
    return z;
}

const std::array<double, kZetaMax + 1>& zeta_table() {
    static const auto table = make_zeta_table();
    return table;
}

// Cl_2 on [0, pi] via theta(1 - ln theta) + sum zeta(2n)/(n(2n+1)) theta (theta/2pi)^{2n}.
double clausen2_core(double theta) {
    if (theta == 0.0)
        return 0.0;
    double acc = theta - theta * std::log(theta);
    const double x2 = (theta / kTwoPi) * (theta / kTwoPi);
    double pw = 1.0;
    for (int n = 1; n <= kZetaMax / 2; ++n) {
        pw *= x2;
        const double term = zeta_table()[2 * n] / (n * (2.0 * n + 1.0)) * theta * pw;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc))
            break;
    }
    return acc;
}

// Integral of Cl_2 from 0 to theta, theta in [0, pi].
double clausen2_integral(double theta) {
    if (theta == 0.0)
        return 0.0;
    double acc = 0.75 * theta * theta - 0.5 * theta * theta * std::log(theta);
    const double x2 = (theta / kTwoPi) * (theta / kTwoPi);
    double pw = 1.0;
    for (int n = 1; n <= kZetaMax / 2; ++n) {
        pw *= x2;
        const double term =
            zeta_table()[2 * n] / (n * (2.0 * n + 1.0) * (2.0 * n + 2.0)) * theta * theta * pw;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc))
            break;
    }
    return acc;
}

constexpr double kZeta3 = 1.2020569031595942854;

} // namespace

double zeta_even(int s) {
    if (s < 2 || s > kZetaMax || (s % 2) != 0)
        throw Error("zeta_even supports even 2..64");
    return zeta_table()[s];
}

double clausen2(double theta) {
    double t = wrap_angle(theta);
    if (t > kPi)
        return -clausen2_core(kTwoPi - t);
    return clausen2_core(t);
}

cdouble polylog_unit(int order, double theta) {
    const double t = wrap_angle(theta);
    switch (order) {
    case 1:
        // -log(1 - e^{it})
        return -std::log(cdouble{1.0 - std::cos(t), -std::sin(t)});
    case 2:
        return {kPi * kPi / 6.0 - t * (kTwoPi - t) / 4.0, clausen2(t)};
    case 3: {
        const double tr = t > kPi ? kTwoPi - t : t; // Re Li_3 is even about pi
        const double re = kZeta3 - clausen2_integral(tr);
        // Im part is the Glaisher polynomial, valid on all of [0, 2pi].
        const double im = t * (kPi * kPi / 6.0 - kPi * t / 4.0 + t * t / 12.0);
        return {re, im};
    }
    default:
        throw Error("polylog_unit supports orders 1..3");
    }
}

} // namespace subrad
