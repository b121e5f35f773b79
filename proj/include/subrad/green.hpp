#ifndef SUBRAD_GREEN_HPP
#define SUBRAD_GREEN_HPP

#include <Eigen/Dense>

#include "subrad/geometry.hpp"
#include "subrad/types.hpp"

namespace subrad {

// Free-space dyadic Green's tensor at the transition frequency, projected on
// the dipole orientation and made dimensionless (lambda0 * e_d^* . G(R) . e_d).
// In-plane displacements only; the delta-function self term is never included.
//   SigmaZ      -> G_zz
//   SigmaPlus/- -> (G_xx + G_yy)/2   (identical for both circular tags)
// Throws ZeroDisplacement.
cdouble green_projected(Vec2 displacement, Polarization polarization);

// Effective non-Hermitian Hamiltonian of the single-excitation subspace in
// units of Gamma0, i.e. (H/hbar - omega0*I)/Gamma0. Complex symmetric with
// diagonal -i/2 and off-diagonal -(3*pi/k0) * green_projected(R_ij).
struct EffectiveHamiltonian {
    Eigen::MatrixXcd matrix;
    AtomArray array;

    int size() const { return static_cast<int>(matrix.rows()); }
};

EffectiveHamiltonian build_hamiltonian(const AtomArray& array);

} // namespace subrad

#endif // SUBRAD_GREEN_HPP
