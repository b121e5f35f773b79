#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "subrad/green.hpp"

using namespace subrad;

namespace {

// Independent evaluation of the free-space kernel from the dyadic form,
// written out against the full tensor rather than the projected shortcut.
cdouble oracle_projected(Vec2 d, Polarization pol) {
    const double r = std::hypot(d.x, d.y);
    const double u = k0 * r;
    const cdouble e = std::exp(cdouble{0.0, u}) / (4.0 * kPi * r);
    const cdouble trans = 1.0 + cdouble{0.0, 1.0} / u - 1.0 / (u * u);
    const cdouble longi = -1.0 - cdouble{0.0, 3.0} / u + 3.0 / (u * u);
    const double nx = d.x / r, ny = d.y / r;
    // G_ab = e [ trans delta_ab + longi n_a n_b ]
    if (pol == Polarization::SigmaZ)
        return e * trans; // n_z = 0
    const cdouble gxx = e * (trans + longi * nx * nx);
    const cdouble gyy = e * (trans + longi * ny * ny);
    return 0.5 * (gxx + gyy);
}

} // namespace

TEST_CASE("transverse kernel at quarter wavelength") {
    // e^{i pi/2}/(pi) (1 + 2i/pi - 4/pi^2), evaluated independently.
    const cdouble expected = oracle_projected({0.25, 0.0}, Polarization::SigmaZ);
    const cdouble got = green_projected({0.25, 0.0}, Polarization::SigmaZ);
    CHECK(std::abs(got - expected) < 1e-14);
    CHECK(got.real() == doctest::Approx(-0.202642367285).epsilon(1e-9));
    CHECK(got.imag() == doctest::Approx(0.189303748451).epsilon(1e-9));
}

TEST_CASE("kernels match the dyadic oracle for random displacements") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        Vec2 d{coord(rng), coord(rng)};
        if (std::hypot(d.x, d.y) < 0.05)
            continue;
        for (auto pol : {Polarization::SigmaZ, Polarization::SigmaPlus, Polarization::SigmaMinus}) {
            const cdouble got = green_projected(d, pol);
            CHECK(std::abs(got - oracle_projected(d, pol)) < 1e-13);
            CHECK(std::abs(got - green_projected({-d.x, -d.y}, pol)) == 0.0);
        }
    }
}

TEST_CASE("small-separation limit of the imaginary part") {
    // Im G_zz -> k0/(6 pi) = 1/3 in normalized units.
    const cdouble g = green_projected({1e-4, 0.0}, Polarization::SigmaZ);
    CHECK(std::abs(g.imag() - 1.0 / 3.0) < 1e-7);
    const cdouble gp = green_projected({1e-4, 0.0}, Polarization::SigmaPlus);
    CHECK(std::abs(gp.imag() - 1.0 / 3.0) < 1e-7);
}

TEST_CASE("zero displacement is rejected") {
    CHECK_THROWS_AS(green_projected({0.0, 0.0}, Polarization::SigmaZ), ZeroDisplacement);
}

TEST_CASE("single atom Hamiltonian") {
    AtomArray atom;
    atom.descriptor.side_count = 2;
    atom.positions = {{0.0, 0.0}};
    const auto h = build_hamiltonian(atom);
    REQUIRE(h.size() == 1);
    CHECK(h.matrix(0, 0) == cdouble{0.0, -0.5});
}

TEST_CASE("two-atom Hamiltonian against the kernel") {
    AtomArray pair;
    pair.descriptor.side_count = 2;
    pair.descriptor.period_x = 0.1;
    pair.polarization = Polarization::SigmaZ;
    pair.positions = {{0.0, 0.0}, {0.1, 0.0}};
    const auto h = build_hamiltonian(pair);
    const cdouble expected = -(3.0 * kPi / k0) * oracle_projected({0.1, 0.0}, Polarization::SigmaZ);
    CHECK(std::abs(h.matrix(0, 1) - expected) < 1e-14);
    CHECK(h.matrix(0, 1) == h.matrix(1, 0));
    CHECK(h.matrix(0, 0) == cdouble{0.0, -0.5});
}

TEST_CASE("Hamiltonian is complex symmetric with the exact diagonal") {
    LatticeDescriptor d;
    d.kind = LatticeKind::Triangle;
    d.side_count = 5;
    d.period_x = 0.27;
    const auto h = build_hamiltonian(generate_array(d, Polarization::SigmaPlus));
    const int n = h.size();
    cdouble trace{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        trace += h.matrix(i, i);
        CHECK(h.matrix(i, i) == cdouble{0.0, -0.5});
        for (int j = 0; j < n; ++j)
            CHECK(h.matrix(i, j) == h.matrix(j, i));
    }
    CHECK(std::abs(trace - cdouble{0.0, -0.5 * n}) == 0.0);
}
