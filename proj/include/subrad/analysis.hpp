#ifndef SUBRAD_ANALYSIS_HPP
#define SUBRAD_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subrad/spectrum.hpp"

namespace subrad {

struct BranchPoint {
    double parameter = 0.0; // period or period ratio
    double detuning = 0.0;
    double decay = 0.0;
    Irrep irrep = Irrep::Unresolved;
    std::vector<Harmonic> harmonics;
    double overlap = 1.0; // |unconjugated overlap| with the previous point
};

struct TrackedBranch {
    std::string label;
    std::vector<BranchPoint> points; // ascending in parameter
    bool lost = false;
    double lost_at = 0.0;

    const BranchPoint& at_parameter(double value, double tol = 1e-9) const;
    int argmin_decay() const;
};

// Selects the seed state of a branch from an annotated catalog.
using StateSelector = std::function<int(const std::vector<CollectiveState>&)>;

// Most subradiant state, rank = 0 for the lowest decay.
StateSelector most_subradiant(int rank = 0);
// Most subradiant state with the given irrep whose dominant harmonic is
// {mx,my} (order-insensitive). Throws TrackingLost at seed time if absent.
StateSelector subradiant_with(Irrep irrep, int mx, int my);

struct SweepOptions {
    double overlap_threshold = 0.5;
    int threads = 0;
    int window = 4; // spectra held in flight
};

// Tracks seeded branches across a period sweep (descending internally,
// reported ascending). Grid geometry descriptor `base` supplies everything
// but the periods.
std::vector<TrackedBranch> period_sweep(const LatticeDescriptor& base, Polarization polarization,
                                        double period_lo, double period_hi, int samples,
                                        const std::vector<std::pair<std::string, StateSelector>>& seeds,
                                        const SweepOptions& options = {});

// Rectangular deformation at fixed period_x: parameter is a_y/a_x, tracked
// outward from ratio = 1 (which must be inside the range).
std::vector<TrackedBranch> deformation_sweep(int side_count, double period_x,
                                             Polarization polarization, double ratio_lo,
                                             double ratio_hi, int samples,
                                             const std::vector<std::pair<std::string, StateSelector>>& seeds,
                                             const SweepOptions& options = {});

struct OptimizeResult {
    double period = 0.0;
    double decay = 0.0;
    bool interior = true; // false: minimum sits on the range boundary
    TrackedBranch coarse; // the coarse-scan branch, for inspection
};

// Coarse scan (default step 0.002) followed by golden-section refinement of
// the branch decay rate; boundary minima are reported, not refined.
OptimizeResult optimize_period(const LatticeDescriptor& base, Polarization polarization,
                               const std::string& label, const StateSelector& seed,
                               double period_lo, double period_hi, double coarse_step = 0.002,
                               double refine_tolerance = 1e-4, const SweepOptions& options = {});

// Golden-section refinement of an already tracked branch (e.g. from a shared
// coarse sweep). `base` must regenerate the swept arrays from the parameter.
OptimizeResult refine_branch_minimum(const LatticeDescriptor& base, Polarization polarization,
                                     const TrackedBranch& coarse, double refine_tolerance = 1e-4,
                                     const SweepOptions& options = {});

struct PowerLawFit {
    double exponent = 0.0;
    double log10_prefactor = 0.0;
    double rms_residual_decades = 0.0;
    int points_used = 0;
    int points_excluded = 0;

    bool meaningful() const { return rms_residual_decades < 0.2; }
};

// Least squares in log10-log10; the first `exclude_first` entries (ordered as
// given, conventionally smallest N first) are dropped as pre-asymptotic.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                          int exclude_first = 2);

struct ScalingRow {
    int side_count = 0;
    int total_count = 0;
    double period = 0.0;
    double decay = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    PowerLawFit fit; // decay vs total_count
    std::string branch_label;
};

enum class PeriodMode { Fixed, OptimizedPerSize };

ScalingResult scaling_sweep(const LatticeDescriptor& base, Polarization polarization,
                            const std::vector<int>& side_counts, PeriodMode mode,
                            const std::string& branch_label, const StateSelector& seed,
                            double fixed_period = 0.4, double optimize_lo = 0.25,
                            double optimize_hi = 0.41, const SweepOptions& options = {});

struct CornerRow {
    int side_count = 0;
    double q0 = 0.0;
    double corner_nn = 0.0;       // |psi^(N,N)_(1,1)|
    double corner_antisym = 0.0;  // |psi^(N-2,N)-_(1,2)|
};

struct CornerAsymptotics {
    std::vector<CornerRow> rows;
    PowerLawFit fit_nn;      // vs q0, expected cubic
    PowerLawFit fit_antisym; // vs q0, expected quintic
};

// Closed-form corner amplitudes of the two marker states vs array size.
CornerAsymptotics corner_asymptotics(int n_min, int n_max, int exclude_first = 2);

} // namespace subrad

#endif // SUBRAD_ANALYSIS_HPP
