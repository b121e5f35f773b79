#include "subrad/scattering.hpp"

#include <cmath>
#include <future>
#include <thread>

namespace subrad {

cdouble polarizability(double detuning) {
    return -(3.0 / (2.0 * k0 * k0 * k0)) * 0.5 / cdouble{detuning, 0.5};
}

Eigen::VectorXcd solve_coupled_dipoles(const EffectiveHamiltonian& hamiltonian,
                                       const Eigen::VectorXcd& projected_drive, double detuning) {
    const int n = hamiltonian.size();
    if (projected_drive.size() != n)
        throw SolveFailure("drive vector does not match the array size");

    Eigen::MatrixXcd a = -hamiltonian.matrix;
    a.diagonal().array() += cdouble{detuning, 0.0};
    const Eigen::VectorXcd rhs = drive_constant() * projected_drive;

    Eigen::VectorXcd x = a.partialPivLu().solve(rhs);
    const double rhs_norm = rhs.norm();
    if ((a * x - rhs).norm() > 1e-10 * std::max(rhs_norm, 1e-300)) {
        x = a.fullPivLu().solve(rhs);
        if ((a * x - rhs).norm() > 1e-10 * std::max(rhs_norm, 1e-300))
            throw SolveFailure("coupled-dipole system is too ill-conditioned at detuning " +
                               std::to_string(detuning));
    }
    return x;
}

double total_cross_section(const Eigen::VectorXcd& amplitudes,
                           const Eigen::VectorXcd& projected_drive, double norm_ref_sq) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < amplitudes.size(); ++j)
        acc += (amplitudes(j) * std::conj(projected_drive(j))).imag();
    return 4.0 * kPi * k0 * acc / norm_ref_sq;
}

std::vector<double> modal_cross_sections(const Eigen::VectorXcd& amplitudes,
                                         const std::vector<CollectiveState>& states,
                                         const Eigen::VectorXcd& projected_drive,
                                         double norm_ref_sq) {
    const size_t n = states.size();
    if (static_cast<Eigen::Index>(n) != amplitudes.size())
        throw DefectiveBasis("modal split needs the complete eigenbasis");

    std::vector<double> sigma(n);
    for (size_t m = 0; m < n; ++m) {
        const Eigen::VectorXcd& psi = states[m].amplitudes;
        // Unconjugated bilinear form of the complex-symmetric problem.
        const cdouble bilinear = psi.transpose() * psi;
        if (std::abs(bilinear) < 1e-10)
            throw DefectiveBasis("bilinear norm below 1e-10 (near an exceptional point)");
        const cdouble coeff = (psi.transpose() * amplitudes).value() / bilinear;
        const cdouble dot = psi.dot(projected_drive); // conj(psi)^T drive
        // sum_j Im[c_m psi_j conj(drive_j)] = Im[c_m * conj(conj(psi)^T drive)]
        sigma[m] = 4.0 * kPi * k0 * (coeff * std::conj(dot)).imag() / norm_ref_sq;
    }
    return sigma;
}

double single_atom_resonant_cross_section() {
    return 4.0 * kPi * k0 * polarizability(0.0).imag();
}

ScatteringSpectrum scan_spectrum(const EffectiveHamiltonian& hamiltonian,
                                 const std::vector<CollectiveState>& states,
                                 const BeamField& beam, const std::vector<double>& detunings,
                                 int threads) {
    const int n = hamiltonian.size();
    const int grid = static_cast<int>(detunings.size());
    const Eigen::VectorXcd drive = projected_drive(beam, hamiltonian.array);
    const double ref = beam.norm_ref_sq;

    ScatteringSpectrum spectrum;
    spectrum.detunings = detunings;
    spectrum.total.resize(grid);
    spectrum.modal.resize(n, grid);
    spectrum.sigma0 = single_atom_resonant_cross_section();
    spectrum.normalization = beam.kind == "bessel"
                                 ? "|E|^2 at the |E_z| maximum of the incident beam"
                                 : "|E|^2 of the plane wave";

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, 16);

    auto work = [&](int begin, int end) {
        for (int g = begin; g < end; ++g) {
            const Eigen::VectorXcd x = solve_coupled_dipoles(hamiltonian, drive, detunings[g]);
            spectrum.total[g] = total_cross_section(x, drive, ref) / spectrum.sigma0;
            const auto modal = modal_cross_sections(x, states, drive, ref);
            for (int m = 0; m < n; ++m)
                spectrum.modal(m, g) = modal[m] / spectrum.sigma0;
        }
    };
    std::vector<std::future<void>> futures;
    const int chunk = (grid + n_threads - 1) / n_threads;
    for (int b = 0; b < grid; b += chunk)
        futures.push_back(std::async(std::launch::async, work, b, std::min(b + chunk, grid)));
    for (auto& f : futures)
        f.get();
    return spectrum;
}

} // namespace subrad
