#ifndef SUBRAD_DIPOLE_SUM_HPP
#define SUBRAD_DIPOLE_SUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "subrad/types.hpp"

namespace subrad {

// Quasi-momentum in units of 1/lambda0; the light circle is |k| = k0 = 2pi.
struct BlochVector {
    double kx = 0.0;
    double ky = 0.0;

    double norm() const;
    bool below_light_line() const; // guided side, |k| > k0
    BlochVector reduced(double ax, double ay) const;
};

enum class SumMethod { PoissonZ, DampedDirect };

// Lattice dipole sum C(k) = sum_{R != 0} G_proj(R) e^{i k.R} (units 1/lambda0).
struct DipoleSum {
    cdouble value{0.0, 0.0};
    SumMethod method = SumMethod::PoissonZ;
    // Truncation metadata.
    int m_range = 0;
    int n_range = 0;
    double tail_bound = 0.0;
    std::vector<double> eta_sequence; // damped-direct only, absolute units
    double extrapolation_error = 0.0;
    double r_max = 0.0;
};

struct PoissonOptions {
    double tolerance = 1e-10;     // absolute truncation target on C(k)
    double anomaly_margin = 1e-4; // in units of 2pi/a
    int max_n = 2000000;
};

struct DirectOptions {
    // Damping exponents, units of k0, strictly decreasing.
    std::vector<double> eta_over_k0 = {0.2, 0.1, 0.05, 0.025};
    double r_max = 0.0; // lambda0 units; 0 = automatic from the smallest eta
    int threads = 0;    // 0 = hardware default
};

// Analytic Poisson-resummed dipole sum for sigma_z polarization.
// Throws AnomalyProximity near diffraction-order thresholds and
// TruncationNotConverged if series limits are exhausted.
DipoleSum dipole_sum_poisson_z(BlochVector k, double ax, double ay,
                               const PoissonOptions& options = {});

// Abel-damped direct lattice sum, Richardson-extrapolated to zero damping.
// Works for every polarization; used as the cross-method oracle and as the
// sigma_+- engine. Throws ExtrapolationUnstable.
DipoleSum dipole_sum_damped_direct(BlochVector k, Polarization polarization, double ax, double ay,
                                   const DirectOptions& options = {});

struct DispersionSample {
    BlochVector k;
    double path_coord = 0.0;
    double detuning = 0.0; // d_omega(k)/Gamma0
    double decay = 0.0;    // Gamma(k)/Gamma0
    bool below_light_line = false;
    bool skipped = false; // anomaly-adjacent gap marker
};

DispersionSample dispersion_at(const DipoleSum& sum, BlochVector k);

// High-symmetry square-lattice points by letter: G, X, M.
BlochVector high_symmetry_point(char letter, double ax, double ay);

// Samples along e.g. "GXMG". sigma_z uses the Poisson sum, sigma_+- the
// damped direct sum; anomaly-adjacent samples are flagged skipped.
std::vector<DispersionSample> dispersion_path(double period, Polarization polarization,
                                              const std::string& path, int samples_per_segment,
                                              const PoissonOptions& poisson = {},
                                              const DirectOptions& direct = {});

// d^2(d_omega)/dk^2 at the M point along Gamma-M (lambda0^2 Gamma0 units).
double curvature_at_m(double period, Polarization polarization,
                      const PoissonOptions& poisson = {}, const DirectOptions& direct = {});

// Root of the M-point curvature as a function of the period (the quartic /
// flat-dispersion point); nullopt when the curvature never changes sign.
std::optional<double> find_flat_band_period(Polarization polarization, double period_lo,
                                            double period_hi, int scan_points = 25,
                                            double period_tolerance = 1e-4);

} // namespace subrad

#endif // SUBRAD_DIPOLE_SUM_HPP
