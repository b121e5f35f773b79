#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subrad/scattering.hpp"

using namespace subrad;

namespace {

AtomArray single_atom(Polarization pol) {
    AtomArray atom;
    atom.descriptor.side_count = 2;
    atom.polarization = pol;
    atom.positions = {{0.0, 0.0}};
    return atom;
}

AtomArray square_array(int n, double a, Polarization pol = Polarization::SigmaZ) {
    LatticeDescriptor d;
    d.kind = LatticeKind::Square;
    d.side_count = n;
    d.period_x = a;
    return generate_array(d, pol);
}

} // namespace

TEST_CASE("polarizability reference values") {
    const cdouble on_res = polarizability(0.0);
    CHECK(std::abs(on_res - cdouble{0.0, 3.0 / (2.0 * k0 * k0 * k0)}) < 1e-16);
    CHECK(std::abs(polarizability(1e7)) < 1e-9);
    CHECK(std::abs(polarizability(-1e7)) < 1e-9);
}

TEST_CASE("single atom responds with the bare polarizability") {
    const auto h = build_hamiltonian(single_atom(Polarization::SigmaZ));
    for (double det : {-3.0, -0.4, 0.0, 0.7, 5.0}) {
        Eigen::VectorXcd drive(1);
        drive(0) = cdouble{0.3, -1.2};
        const auto x = solve_coupled_dipoles(h, drive, det);
        CHECK(std::abs(x(0) - polarizability(det) * drive(0)) < 1e-15);
    }
}

TEST_CASE("plane-wave Lorentzian of a single atom") {
    const auto atom = single_atom(Polarization::SigmaPlus);
    const auto h = build_hamiltonian(atom);
    const BeamField plane = circular_plane_wave(+1);
    const auto drive = projected_drive(plane, atom);
    const double sigma0 = single_atom_resonant_cross_section();
    CHECK(sigma0 == doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-14));
    for (double det : {0.0, 0.25, -0.5, 1.5, -4.0, 12.0}) {
        const auto x = solve_coupled_dipoles(h, drive, det);
        const double sigma = total_cross_section(x, drive, plane.norm_ref_sq);
        const double lorentz = sigma0 / (1.0 + 4.0 * det * det);
        CHECK(std::abs(sigma - lorentz) < 1e-10);
    }
}

TEST_CASE("dimer response peaks at the eigen-detunings") {
    AtomArray pair;
    pair.descriptor.side_count = 2;
    pair.descriptor.period_x = 0.2;
    pair.polarization = Polarization::SigmaZ;
    pair.positions = {{0.0, 0.0}, {0.2, 0.0}};
    const auto h = build_hamiltonian(pair);
    const auto states = diagonalize(h);

    // Drive asymmetrically so both modes couple.
    Eigen::VectorXcd drive(2);
    drive << 1.0, cdouble{0.4, 0.3};

    for (const auto& s : states) {
        // |x| along a fine local grid around the eigen-detuning.
        double best_det = 0.0, best = -1.0;
        for (int i = -100; i <= 100; ++i) {
            const double det = s.detuning + 0.02 * s.decay * i;
            const double mag = solve_coupled_dipoles(h, drive, det).norm();
            if (mag > best) {
                best = mag;
                best_det = det;
            }
        }
        CHECK(std::abs(best_det - s.detuning) <= 0.5 * s.decay);
    }
}

TEST_CASE("modal cross sections sum to the total") {
    const auto array = square_array(4, 0.35);
    const auto h = build_hamiltonian(array);
    const auto states = diagonalize(h);
    const BeamField beam = bessel_beam_field({.orbital_l = 1, .spin = 1});
    const auto drive = projected_drive(beam, array);
    for (double det : {-10.0, -2.0, 0.0, 1.5, 8.0}) {
        const auto x = solve_coupled_dipoles(h, drive, det);
        const double total = total_cross_section(x, drive, beam.norm_ref_sq);
        const auto modal = modal_cross_sections(x, states, drive, beam.norm_ref_sq);
        double sum = 0.0;
        for (double m : modal)
            sum += m;
        CHECK(std::abs(sum - total) < 1e-8 * std::max(std::abs(total), 1e-6));
    }
}

TEST_CASE("normalized spectra are invariant under beam amplitude scaling") {
    const auto array = square_array(3, 0.3);
    const auto h = build_hamiltonian(array);
    const auto states = diagonalize(h);
    std::vector<double> grid{-4.0, -1.0, 0.0, 2.0, 6.0};

    const auto a = scan_spectrum(h, states, bessel_beam_field({.orbital_l = 2, .spin = 1}), grid);
    const auto b = scan_spectrum(
        h, states, bessel_beam_field({.orbital_l = 2, .spin = 1, .numerical_aperture = 1.0,
                                      .pupil_ratio = 0.5, .amplitude = 3.7}),
        grid);
    for (size_t g = 0; g < grid.size(); ++g) {
        CHECK(a.total[g] == doctest::Approx(b.total[g]).epsilon(1e-9));
        for (int m = 0; m < a.modal.rows(); ++m)
            CHECK(a.modal(m, g) == doctest::Approx(b.modal(m, g)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("solver rejects mismatched drives") {
    const auto h = build_hamiltonian(square_array(3, 0.3));
    Eigen::VectorXcd bad(4);
    bad.setOnes();
    CHECK_THROWS_AS(solve_coupled_dipoles(h, bad, 0.0), SolveFailure);
}
