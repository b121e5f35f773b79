#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subrad/spectrum.hpp"

using namespace subrad;

namespace {

AtomArray square_array(int n, double a, Polarization pol = Polarization::SigmaZ) {
    LatticeDescriptor d;
    d.kind = LatticeKind::Square;
    d.side_count = n;
    d.period_x = a;
    return generate_array(d, pol);
}

cdouble oracle_gzz(double r) {
    const double u = k0 * r;
    return std::exp(cdouble{0.0, u}) / (4.0 * kPi * r) *
           (1.0 + cdouble{0.0, 1.0} / u - 1.0 / (u * u));
}

} // namespace

TEST_CASE("single atom spectrum") {
    AtomArray atom;
    atom.descriptor.side_count = 2;
    atom.positions = {{0.0, 0.0}};
    const auto states = diagonalize(build_hamiltonian(atom));
    REQUIRE(states.size() == 1);
    CHECK(states[0].detuning == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(states[0].decay == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dimer decay rates against the closed form") {
    AtomArray pair;
    pair.descriptor.side_count = 2;
    pair.descriptor.period_x = 0.1;
    pair.positions = {{0.0, 0.0}, {0.1, 0.0}};
    pair.polarization = Polarization::SigmaZ;
    const auto states = diagonalize(build_hamiltonian(pair));
    REQUIRE(states.size() == 2);
    const double im = oracle_gzz(0.1).imag();
    CHECK(std::abs(states[0].decay - (1.0 - (6.0 * kPi / k0) * im)) < 1e-10);
    CHECK(std::abs(states[1].decay - (1.0 + (6.0 * kPi / k0) * im)) < 1e-10);
    CHECK(states[0].decay == doctest::Approx(0.0775).epsilon(5e-3));
    CHECK(states[1].decay == doctest::Approx(1.9225).epsilon(5e-3));
    CHECK(states[0].index == 0);
}

TEST_CASE("states come out sorted by decay with the sum rule intact") {
    const auto states = diagonalize(build_hamiltonian(square_array(5, 0.3)));
    double sum = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
        sum += states[i].decay;
        CHECK(states[i].decay > 0.0);
        if (i)
            CHECK(states[i].decay >= states[i - 1].decay);
    }
    CHECK(std::abs(sum - 25.0) < 25.0 * 1e-8);
}

TEST_CASE("standing-wave basis values") {
    CHECK(discretization_wavevector(12) == doctest::Approx(0.241660973353).epsilon(1e-12));
    const auto v = standing_wave_basis(12, 12, 12);
    // site (1,1): (2/13) sin^2(pi/13)
    CHECK(v(0) == doctest::Approx(0.00881107494975).epsilon(1e-10));
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(standing_wave_basis(12, 0, 3), IndexOutOfRange);
    CHECK_THROWS_AS(standing_wave_basis(12, 3, 13), IndexOutOfRange);
}

TEST_CASE("standing-wave basis is orthonormal") {
    const int n = 5;
    for (int m1x = 1; m1x <= n; ++m1x)
        for (int m1y = 1; m1y <= n; ++m1y)
            for (int m2x = 1; m2x <= n; ++m2x)
                for (int m2y = 1; m2y <= n; ++m2y) {
                    const double dot =
                        standing_wave_basis(n, m1x, m1y).dot(standing_wave_basis(n, m2x, m2y));
                    const double expect = (m1x == m2x && m1y == m2y) ? 1.0 : 0.0;
                    CHECK(std::abs(dot - expect) < 1e-12);
                }
}

TEST_CASE("symmetrized combinations") {
    CHECK_THROWS_AS(symmetrize(12, 3, 3, -1), InvalidPair);
    CHECK_THROWS_AS(symmetrize(12, 3, 4, -1), InvalidPair);

    const int n = 12;
    const auto anti = symmetrize(n, n - 2, n, -1);
    const auto sym = symmetrize(n, n - 2, n, +1);
    CHECK(anti.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(anti.dot(sym)) < 1e-13);

    // Antisymmetric combination vanishes on the main diagonal and is odd
    // under site transposition.
    for (int i = 1; i <= n; ++i)
        CHECK(std::abs(anti((i - 1) * n + (i - 1))) < 1e-14);
    const double at_12 = anti(1 * n + 0); // site (nx=1, ny=2)
    const double at_21 = anti(0 * n + 1); // site (nx=2, ny=1)
    CHECK(at_12 == doctest::Approx(-at_21).epsilon(1e-12));
    CHECK(std::abs(at_12) == doctest::Approx(0.00768001528538).epsilon(1e-9));
}

TEST_CASE("decomposition of a pure basis vector") {
    const auto array = square_array(7, 0.4);
    CollectiveState s;
    s.amplitudes = standing_wave_basis(7, 3, 5).cast<cdouble>();
    const auto d = decompose(s, array);
    CHECK(std::abs(d.coefficients(2, 4) - 1.0) < 1e-12);
    CHECK(d.coefficients.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.q0 == doctest::Approx(kPi / 8.0));
    double off = 0.0;
    for (int mx = 0; mx < 7; ++mx)
        for (int my = 0; my < 7; ++my)
            if (!(mx == 2 && my == 4))
                off = std::max(off, std::abs(d.coefficients(mx, my)));
    CHECK(off < 1e-12);
}

TEST_CASE("decomposition reconstructs eigenstates") {
    const auto array = square_array(6, 0.35);
    const auto states = diagonalize(build_hamiltonian(array));
    for (const auto& s : states) {
        const auto d = decompose(s, array);
        CHECK(std::abs(d.coefficients.squaredNorm() - 1.0) < 1e-10);
        Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(36);
        for (int mx = 1; mx <= 6; ++mx)
            for (int my = 1; my <= 6; ++my)
                rebuilt += d.coefficients(mx - 1, my - 1) *
                           standing_wave_basis(6, mx, my).cast<cdouble>();
        CHECK((rebuilt - s.amplitudes).norm() < 1e-10);
    }
    const auto tri = generate_array(
        [] {
            LatticeDescriptor d;
            d.kind = LatticeKind::Triangle;
            d.side_count = 3;
            d.period_x = 0.4;
            return d;
        }(),
        Polarization::SigmaZ);
    CollectiveState s;
    s.amplitudes = Eigen::VectorXcd::Ones(6) / std::sqrt(6.0);
    CHECK_THROWS_AS(decompose(s, tri), NotAGrid);
}

TEST_CASE("basis irrep table") {
    CHECK(classify_basis_irrep(12, 12) == Irrep::B2);
    CHECK(classify_basis_irrep(11, 11) == Irrep::A1);
    CHECK(classify_basis_irrep(10, 12, -1) == Irrep::A2);
    CHECK(classify_basis_irrep(9, 11, -1) == Irrep::B1);
    CHECK(classify_basis_irrep(10, 12, +1) == Irrep::B2);
    CHECK(classify_basis_irrep(9, 11, +1) == Irrep::A1);
    CHECK(classify_basis_irrep(1, 2) == Irrep::E);
    CHECK(classify_basis_irrep(4, 7) == Irrep::E);
}

TEST_CASE("point groups of the standard cuts") {
    auto group_of = [](LatticeKind kind, int n) {
        LatticeDescriptor d;
        d.kind = kind;
        d.side_count = n;
        d.period_x = 0.4;
        return point_group(generate_array(d, Polarization::SigmaZ));
    };
    CHECK(group_of(LatticeKind::Square, 4).group == PointGroup::C4v);
    CHECK(group_of(LatticeKind::Square, 4).ops.size() == 8);
    CHECK(group_of(LatticeKind::DiagonalSquare, 4).group == PointGroup::C4v);
    CHECK(group_of(LatticeKind::Triangle, 4).group == PointGroup::C3v);
    CHECK(group_of(LatticeKind::Triangle, 4).ops.size() == 6);
    CHECK(group_of(LatticeKind::Hexagon, 3).group == PointGroup::C6v);
    CHECK(group_of(LatticeKind::Hexagon, 3).ops.size() == 12);

    LatticeDescriptor rect;
    rect.kind = LatticeKind::Rectangular;
    rect.side_count = 4;
    rect.side_count_y = 3;
    rect.period_x = 0.4;
    rect.period_y = 0.3;
    CHECK(point_group(generate_array(rect, Polarization::SigmaZ)).group == PointGroup::C2v);
}

TEST_CASE("synthetic fully symmetric state classifies as A1") {
    const auto array = square_array(6, 0.4);
    CollectiveState s;
    s.amplitudes = standing_wave_basis(6, 1, 1).cast<cdouble>();
    CHECK(classify_state_irrep(s, array) == Irrep::A1);
    s.amplitudes = symmetrize(6, 4, 6, -1).cast<cdouble>();
    CHECK(classify_state_irrep(s, array) == Irrep::A2);
    s.amplitudes = standing_wave_basis(6, 1, 2).cast<cdouble>();
    CHECK(classify_state_irrep(s, array) == Irrep::E);
}

TEST_CASE("12x12 subradiant states carry the tabulated labels") {
    const auto array = square_array(12, 0.4);
    const auto states = spectrum_catalog(array);

    const auto& most = states[0];
    CHECK(most.irrep == Irrep::B2);
    REQUIRE(!most.dominant_harmonics.empty());
    CHECK(most.dominant_harmonics[0].mx == 12);
    CHECK(most.dominant_harmonics[0].my == 12);

    const auto& second = states[1];
    CHECK(second.irrep == Irrep::A2);
    const auto h0 = second.dominant_harmonics[0];
    CHECK(((h0.mx == 12 && h0.my == 10) || (h0.mx == 10 && h0.my == 12)));
    // A2 states vanish on the diagonals.
    for (int i = 1; i <= 12; ++i)
        CHECK(std::abs(second.amplitudes((i - 1) * 12 + (i - 1))) < 1e-8);

    int e_count = 0;
    for (const auto& s : states)
        if (s.irrep == Irrep::E)
            ++e_count;
    CHECK(e_count > 0);
    CHECK(e_count % 2 == 0);
}

TEST_CASE("a tightly spaced array keeps labels consistent at small period") {
    const auto states = spectrum_catalog(square_array(12, 0.3));
    const auto dec = decompose(states[0], square_array(12, 0.3));
    // Harmonic content spreads at small periods.
    double outside = 0.0;
    for (int mx = 1; mx <= 12; ++mx)
        for (int my = 1; my <= 12; ++my)
            outside += dec.weight(mx, my);
    outside -= states[0].dominant_harmonics.empty() ? 0.0 : states[0].dominant_harmonics[0].weight;
    CHECK(outside > 0.0);
}
