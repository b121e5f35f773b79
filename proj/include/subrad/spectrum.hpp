#ifndef SUBRAD_SPECTRUM_HPP
#define SUBRAD_SPECTRUM_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subrad/green.hpp"

namespace subrad {

enum class Irrep { A1, A2, B1, B2, E, Unresolved };

const char* to_string(Irrep irrep);

struct Harmonic {
    int mx = 0;
    int my = 0;
    double weight = 0.0; // |c_{mx,my}|^2
};

// One collective eigenstate of the effective Hamiltonian. The eigenvalue is
// detuning - i*decay/2 (both in units of Gamma0).
struct CollectiveState {
    int index = 0;                 // ordinal after sorting by decay
    double detuning = 0.0;         // (omega_j - omega0)/Gamma0
    double decay = 0.0;            // Gamma_j/Gamma0
    Eigen::VectorXcd amplitudes;   // unit Euclidean norm
    Irrep irrep = Irrep::Unresolved;
    std::vector<Harmonic> dominant_harmonics; // top-3, grids only

    cdouble eigenvalue() const { return {detuning, -0.5 * decay}; }
};

// All eigenstates sorted ascending by decay rate (ties: detuning, then input
// order). Validates the eigen-residual, passivity and the decay sum rule.
// Throws EigenSolverFailure.
std::vector<CollectiveState> diagonalize(const EffectiveHamiltonian& hamiltonian);

// Standing-wave (quasi-Bloch) basis vector over an N x N grid, row-major in
// (n_y, n_x): value (2/(N+1)) sin(q0 mx nx) sin(q0 my ny) with q0 = pi/(N+1).
// Unit Euclidean norm. Throws IndexOutOfRange.
Eigen::VectorXd standing_wave_basis(int side_count, int mx, int my);

inline double discretization_wavevector(int side_count) { return kPi / (side_count + 1); }

// Symmetrized combination (psi(m1,m2) + sign*psi(m2,m1))/sqrt(2).
// Requires m1 != m2 and even m1+m2 (otherwise InvalidPair).
Eigen::VectorXd symmetrize(int side_count, int m1, int m2, int sign);

struct BlochDecomposition {
    Eigen::MatrixXcd coefficients; // c(mx-1, my-1), mx along rows
    double q0 = 0.0;               // pi/(N+1) of the x direction
    double q0_y = 0.0;

    double weight(int mx, int my) const {
        return std::norm(coefficients(mx - 1, my - 1));
    }
};

// Expansion of a state over the standing-wave basis (unconjugated inner
// product against the real basis). Grid arrays only; throws NotAGrid.
BlochDecomposition decompose(const CollectiveState& state, const AtomArray& array);
BlochDecomposition decompose(const Eigen::VectorXcd& amplitudes, const AtomArray& array);

std::vector<Harmonic> top_harmonics(const BlochDecomposition& decomposition, int count = 3);

// C4v label of a basis function psi(mx,my) or of a symmetrized pair
// (sign = +1/-1). For mx != my with even sum the label depends on sign.
Irrep classify_basis_irrep(int mx, int my, int sign = +1);

// --- Point-group machinery --------------------------------------------------

enum class PointGroup { C2v, C3v, C4v, C6v };

const char* to_string(PointGroup group);

// A group element realized as an exact site permutation: site i of the
// transformed array holds what site perm[i] held before.
struct SymmetryOp {
    std::string klass;         // conjugacy class label, e.g. "C4", "sigma_v"
    std::vector<int> permutation;
};

struct SiteGroup {
    PointGroup group;
    std::vector<SymmetryOp> ops; // first element is the identity
};

// Detects the point group of the array (C4v, C3v, C6v or C2v) and returns all
// elements as site permutations about the centroid.
SiteGroup point_group(const AtomArray& array);

// Irrep label from isotypic projector weights ||P_irrep psi||^2: the label is
// assigned when one weight exceeds 1 - tolerance, otherwise Unresolved
// (reported, never guessed). 2D irreps (E, E1, E2) all map to E.
Irrep classify_state_irrep(const CollectiveState& state, const AtomArray& array,
                           double character_tolerance = 1e-4);

// Projector weights per label, same order as the group's character table.
std::vector<std::pair<std::string, double>> irrep_weights(const Eigen::VectorXcd& amplitudes,
                                                          const SiteGroup& group);

// diagonalize + irrep labels + dominant harmonics in one pass.
std::vector<CollectiveState> spectrum_catalog(const AtomArray& array);
std::vector<CollectiveState> spectrum_catalog(const EffectiveHamiltonian& hamiltonian);

} // namespace subrad

#endif // SUBRAD_SPECTRUM_HPP
