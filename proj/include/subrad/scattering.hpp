#ifndef SUBRAD_SCATTERING_HPP
#define SUBRAD_SCATTERING_HPP

#include <vector>

#include "subrad/beam.hpp"
#include "subrad/spectrum.hpp"

namespace subrad {

// Semiclassical atomic polarizability, units lambda0^3; pole at
// detuning = -i/2 so coupled-dipole resonances coincide with the
// eigenvalues of the effective Hamiltonian.
cdouble polarizability(double detuning);

// Drive constant kappa in (detuning*I - M) x = kappa * E0_par; fixed so a
// single atom responds as x = polarizability(detuning) * E0_par.
inline double drive_constant() { return -3.0 / (4.0 * k0 * k0 * k0); }

// Steady-state dipole amplitudes for a given projected drive.
// Throws SolveFailure if the residual cannot be pushed below 1e-10*|rhs|.
Eigen::VectorXcd solve_coupled_dipoles(const EffectiveHamiltonian& hamiltonian,
                                       const Eigen::VectorXcd& projected_drive, double detuning);

// Optical-theorem extinction cross section, units lambda0^2.
double total_cross_section(const Eigen::VectorXcd& amplitudes,
                           const Eigen::VectorXcd& projected_drive, double norm_ref_sq);

// Biorthogonal per-mode split of the total cross section; sums to the total.
// Throws DefectiveBasis near an exceptional point.
std::vector<double> modal_cross_sections(const Eigen::VectorXcd& amplitudes,
                                         const std::vector<CollectiveState>& states,
                                         const Eigen::VectorXcd& projected_drive,
                                         double norm_ref_sq);

struct ScatteringSpectrum {
    std::vector<double> detunings;
    std::vector<double> total;  // sigma_tot / sigma0
    Eigen::MatrixXd modal;      // states x grid, sigma_n / sigma0
    double sigma0 = 0.0;        // single-atom resonant cross section, lambda0^2
    std::string normalization;  // provenance of the |E|^2 reference
};

// Cross-section spectrum over a detuning grid (embarrassingly parallel).
ScatteringSpectrum scan_spectrum(const EffectiveHamiltonian& hamiltonian,
                                 const std::vector<CollectiveState>& states,
                                 const BeamField& beam, const std::vector<double>& detunings,
                                 int threads = 0);

// Resonant cross section of one atom at the beam's reference position;
// equals 3 lambda0^2 / (2 pi) and anchors all sigma/sigma0 ratios.
double single_atom_resonant_cross_section();

} // namespace subrad

#endif // SUBRAD_SCATTERING_HPP
