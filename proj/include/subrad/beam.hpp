#ifndef SUBRAD_BEAM_HPP
#define SUBRAD_BEAM_HPP

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "subrad/geometry.hpp"

namespace subrad {

struct BeamParams {
    int orbital_l = 0;              // vortex charge of the pupil field
    int spin = 1;                   // +1 / -1 circular polarization
    double numerical_aperture = 1.0;
    double pupil_ratio = 0.5;       // pupil radius over Gaussian waist
    double amplitude = 1.0;         // arbitrary scale, cancels in ratios

    int total_j() const { return orbital_l + spin; }
    void validate() const;
};

// Focal-plane (z = 0) field sampler. The longitudinal component winds as
// e^{i J phi} with J = l + s and vanishes on axis for J != 0.
struct BeamField {
    std::function<Eigen::Vector3cd(double x, double y)> field;
    BeamParams params{};
    std::string kind;          // "bessel" or "plane"
    double peak_ez = 0.0;      // max |E_z| over radius (bessel)
    double peak_radius = 0.0;  // radius of that maximum
    double norm_ref_sq = 0.0;  // |E|^2 reference for cross sections

    Eigen::Vector3cd at(double x, double y) const { return field(x, y); }
};

// Aplanatic (Richards-Wolf style) focusing of a circularly polarized vortex
// beam with Gaussian pupil apodization exp(-beta^2 sin^2/sin^2_max).
// Throws QuadratureNotConverged.
BeamField bessel_beam_field(const BeamParams& params, double quadrature_tolerance = 1e-8);

// Normally incident circularly polarized plane wave (test/reference drive).
BeamField circular_plane_wave(int spin, double amplitude = 1.0);

// e_d^* . E0(r_j) with the beam axis on the array centroid.
Eigen::VectorXcd projected_drive(const BeamField& beam, const AtomArray& array);

} // namespace subrad

#endif // SUBRAD_BEAM_HPP
