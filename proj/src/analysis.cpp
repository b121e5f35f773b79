#include "subrad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace subrad {

const BranchPoint& TrackedBranch::at_parameter(double value, double tol) const {
    for (const auto& p : points)
        if (std::abs(p.parameter - value) <= tol)
            return p;
    throw Error("branch has no point at parameter " + std::to_string(value));
}

int TrackedBranch::argmin_decay() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(points.size()); ++i)
        if (points[i].decay < points[best].decay)
            best = i;
    return best;
}

StateSelector most_subradiant(int rank) {
    return [rank](const std::vector<CollectiveState>& states) {
        if (rank < 0 || rank >= static_cast<int>(states.size()))
            throw TrackingLost("subradiance rank out of range");
        return rank; // states are sorted ascending by decay
    };
}

StateSelector subradiant_with(Irrep irrep, int mx, int my) {
    return [irrep, mx, my](const std::vector<CollectiveState>& states) {
        for (const auto& s : states) {
            if (s.irrep != irrep || s.dominant_harmonics.empty())
                continue;
            const auto& h = s.dominant_harmonics.front();
            if ((h.mx == mx && h.my == my) || (h.mx == my && h.my == mx))
                return s.index;
        }
        throw TrackingLost(std::string("no ") + to_string(irrep) + " state with dominant (" +
                           std::to_string(mx) + "," + std::to_string(my) + ")");
    };
}

namespace {

double unconjugated_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return std::abs((a.transpose() * b).value());
}

struct BranchCursor {
    TrackedBranch branch;
    Eigen::VectorXcd reference;
    bool active = true;
};

BranchPoint make_point(double parameter, const CollectiveState& s, double overlap) {
    return {parameter, s.detuning, s.decay, s.irrep, s.dominant_harmonics, overlap};
}

// Evaluates catalogs for a parameter list with a bounded number in flight,
// feeding them to the (sequential) tracker in order.
void pipeline_catalogs(const std::vector<double>& parameters,
                       const std::function<AtomArray(double)>& make_array,
                       const std::function<void(double, const std::vector<CollectiveState>&)>& consume,
                       const SweepOptions& options) {
    int n_threads = options.threads > 0 ? options.threads
                                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, 16);
    const int window = std::max(1, options.window);

    std::vector<std::future<std::vector<CollectiveState>>> inflight;
    size_t submitted = 0, consumed = 0;
    while (consumed < parameters.size()) {
        while (submitted < parameters.size() && inflight.size() < static_cast<size_t>(window)) {
            const double p = parameters[submitted++];
            inflight.push_back(std::async(std::launch::async, [p, &make_array] {
                return spectrum_catalog(make_array(p));
            }));
        }
        auto states = inflight.front().get();
        inflight.erase(inflight.begin());
        consume(parameters[consumed], states);
        ++consumed;
    }
}

std::vector<TrackedBranch> track_over(const std::vector<double>& parameters,
                                      const std::function<AtomArray(double)>& make_array,
                                      const std::vector<std::pair<std::string, StateSelector>>& seeds,
                                      const SweepOptions& options) {
    std::vector<BranchCursor> cursors;
    bool first = true;

    pipeline_catalogs(
        parameters, make_array,
        [&](double p, const std::vector<CollectiveState>& states) {
            if (first) {
                for (const auto& [label, select] : seeds) {
                    BranchCursor c;
                    c.branch.label = label;
                    const int idx = select(states);
                    c.branch.points.push_back(make_point(p, states[idx], 1.0));
                    c.reference = states[idx].amplitudes;
                    cursors.push_back(std::move(c));
                }
                first = false;
                return;
            }
            for (auto& c : cursors) {
                if (!c.active)
                    continue;
                int best = -1;
                double best_overlap = -1.0;
                for (const auto& s : states) {
                    const double o = unconjugated_overlap(c.reference, s.amplitudes);
                    if (o > best_overlap) {
                        best_overlap = o;
                        best = s.index;
                    }
                }
                if (best_overlap < options.overlap_threshold) {
                    c.active = false;
                    c.branch.lost = true;
                    c.branch.lost_at = p;
                    continue;
                }
                c.branch.points.push_back(make_point(p, states[best], best_overlap));
                c.reference = states[best].amplitudes;
            }
        },
        options);

    std::vector<TrackedBranch> out;
    for (auto& c : cursors) {
        std::sort(c.branch.points.begin(), c.branch.points.end(),
                  [](const BranchPoint& a, const BranchPoint& b) { return a.parameter < b.parameter; });
        out.push_back(std::move(c.branch));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int samples) {
    std::vector<double> v(samples);
    for (int i = 0; i < samples; ++i)
        v[i] = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
    return v;
}

} // namespace

std::vector<TrackedBranch> period_sweep(const LatticeDescriptor& base, Polarization polarization,
                                        double period_lo, double period_hi, int samples,
                                        const std::vector<std::pair<std::string, StateSelector>>& seeds,
                                        const SweepOptions& options) {
    if (!(period_lo > 0.1 && period_hi > period_lo))
        throw ConfigInvalid("period sweep range must be increasing and above 0.1");
    // Track downward from the weak-coupling end, where branch identities are
    // clean single harmonics.
    auto params = linspace(period_hi, period_lo, samples);
    auto make_array = [&](double a) {
        LatticeDescriptor d = base;
        d.period_x = a;
        d.period_y = base.kind == LatticeKind::Rectangular ? a : 0.0;
        return generate_array(d, polarization);
    };
    return track_over(params, make_array, seeds, options);
}

std::vector<TrackedBranch> deformation_sweep(int side_count, double period_x,
                                             Polarization polarization, double ratio_lo,
                                             double ratio_hi, int samples,
                                             const std::vector<std::pair<std::string, StateSelector>>& seeds,
                                             const SweepOptions& options) {
    if (!(ratio_lo < 1.0 && 1.0 < ratio_hi))
        throw ConfigInvalid("deformation range must contain ratio = 1");

    auto make_array = [&](double ratio) {
        LatticeDescriptor d;
        d.kind = LatticeKind::Rectangular;
        d.side_count = side_count;
        d.side_count_y = side_count;
        d.period_x = period_x;
        d.period_y = ratio * period_x;
        return generate_array(d, polarization);
    };

    // Seed at the square point and track outward in both directions so the
    // symmetry-protected branch identity is fixed where it is unambiguous.
    auto grid_up = linspace(1.0, ratio_hi, std::max(2, samples / 2 + 1));
    auto grid_down = linspace(1.0, ratio_lo, std::max(2, samples / 2 + 1));

    auto up = track_over(grid_up, make_array, seeds, options);
    auto down = track_over(grid_down, make_array, seeds, options);

    std::vector<TrackedBranch> merged;
    for (size_t b = 0; b < up.size(); ++b) {
        TrackedBranch m;
        m.label = up[b].label;
        m.lost = up[b].lost || down[b].lost;
        m.lost_at = up[b].lost ? up[b].lost_at : down[b].lost_at;
        m.points = down[b].points; // ascending, ends at ratio 1
        m.points.insert(m.points.end(), up[b].points.begin() + 1, up[b].points.end());
        merged.push_back(std::move(m));
    }
    return merged;
}

OptimizeResult optimize_period(const LatticeDescriptor& base, Polarization polarization,
                               const std::string& label, const StateSelector& seed,
                               double period_lo, double period_hi, double coarse_step,
                               double refine_tolerance, const SweepOptions& options) {
    const int samples = std::max(3, static_cast<int>(std::round((period_hi - period_lo) / coarse_step)) + 1);
    auto branches = period_sweep(base, polarization, period_lo, period_hi, samples,
                                 {{label, seed}}, options);
    return refine_branch_minimum(base, polarization, branches.front(), refine_tolerance, options);
}

OptimizeResult refine_branch_minimum(const LatticeDescriptor& base, Polarization polarization,
                                     const TrackedBranch& branch, double refine_tolerance,
                                     const SweepOptions& options) {
    if (branch.points.size() < 3)
        throw TrackingLost("coarse scan lost the branch immediately");

    OptimizeResult result;
    result.coarse = branch;
    const int imin = branch.argmin_decay();
    if (imin == 0 || imin + 1 == static_cast<int>(branch.points.size())) {
        // NoInteriorMinimum: report the boundary value as such.
        result.interior = false;
        result.period = branch.points[imin].parameter;
        result.decay = branch.points[imin].decay;
        return result;
    }

    // Golden-section refinement against the eigenvector at the coarse
    // minimum; every probe stays within one coarse step of it.
    auto make_array = [&](double a) {
        LatticeDescriptor d = base;
        d.period_x = a;
        d.period_y = base.kind == LatticeKind::Rectangular ? a : 0.0;
        return generate_array(d, polarization);
    };
    const auto ref_states = spectrum_catalog(make_array(branch.points[imin].parameter));
    int ref_idx = 0;
    double ref_best = -1.0;
    {
        // Re-identify the branch state at the coarse minimum by decay value.
        for (const auto& s : ref_states) {
            const double d = std::abs(s.decay - branch.points[imin].decay);
            if (ref_best < 0 || d < ref_best) {
                ref_best = d;
                ref_idx = s.index;
            }
        }
    }
    const Eigen::VectorXcd reference = ref_states[ref_idx].amplitudes;

    auto branch_decay = [&](double a) {
        const auto states = spectrum_catalog(make_array(a));
        int best = 0;
        double best_overlap = -1.0;
        for (const auto& s : states) {
            const double o = unconjugated_overlap(reference, s.amplitudes);
            if (o > best_overlap) {
                best_overlap = o;
                best = s.index;
            }
        }
        if (best_overlap < options.overlap_threshold)
            throw TrackingLost("branch identity lost during refinement at a=" + std::to_string(a));
        return states[best].decay;
    };

    double lo = branch.points[imin - 1].parameter;
    double hi = branch.points[imin + 1].parameter;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = branch_decay(c), fd = branch_decay(d);
    while (hi - lo > refine_tolerance) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = branch_decay(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = branch_decay(d);
        }
    }
    result.period = 0.5 * (lo + hi);
    result.decay = std::min(std::min(fc, fd), branch.points[imin].decay);
    result.interior = true;
    return result;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                          int exclude_first) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("power-law fit needs matched x/y with at least 2 points");
    const int skip = std::min<int>(exclude_first, static_cast<int>(x.size()) - 2);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = skip; i < x.size(); ++i) {
        const double lx = std::log10(x[i]);
        const double ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    PowerLawFit fit;
    fit.points_used = n;
    fit.points_excluded = skip;
    const double det = n * sxx - sx * sx;
    fit.exponent = (n * sxy - sx * sy) / det;
    fit.log10_prefactor = (sy * sxx - sx * sxy) / det;

    double rss = 0.0;
    for (size_t i = skip; i < x.size(); ++i) {
        const double r = std::log10(y[i]) - (fit.exponent * std::log10(x[i]) + fit.log10_prefactor);
        rss += r * r;
    }
    fit.rms_residual_decades = std::sqrt(rss / n);
    return fit;
}

ScalingResult scaling_sweep(const LatticeDescriptor& base, Polarization polarization,
                            const std::vector<int>& side_counts, PeriodMode mode,
                            const std::string& branch_label, const StateSelector& seed,
                            double fixed_period, double optimize_lo, double optimize_hi,
                            const SweepOptions& options) {
    if (side_counts.size() < 4)
        throw ConfigInvalid("scaling sweep needs at least 4 sizes");
    if (!std::is_sorted(side_counts.begin(), side_counts.end()))
        throw ConfigInvalid("size list must be ascending");

    ScalingResult result;
    result.branch_label = branch_label;
    for (int n : side_counts) {
        LatticeDescriptor d = base;
        d.side_count = n;
        if (d.side_count_y > 0)
            d.side_count_y = n;
        ScalingRow row;
        row.side_count = n;
        if (mode == PeriodMode::Fixed) {
            d.period_x = fixed_period;
            d.period_y = base.kind == LatticeKind::Rectangular ? fixed_period : 0.0;
            const AtomArray array = generate_array(d, polarization);
            const auto states = spectrum_catalog(array);
            const auto& s = states[seed(states)];
            row.total_count = array.total_count();
            row.period = fixed_period;
            row.decay = s.decay;
        } else {
            const auto opt =
                optimize_period(d, polarization, branch_label, seed, optimize_lo, optimize_hi,
                                0.002, 1e-4, options);
            row.total_count = d.total_count();
            row.period = opt.period;
            row.decay = opt.decay;
        }
        result.rows.push_back(row);
    }

    std::vector<double> x, y;
    for (const auto& r : result.rows) {
        x.push_back(static_cast<double>(r.total_count));
        y.push_back(r.decay);
    }
    result.fit = fit_power_law(x, y);
    return result;
}

CornerAsymptotics corner_asymptotics(int n_min, int n_max, int exclude_first) {
    if (n_min < 6 || (n_min % 2) != 0 || (n_max % 2) != 0 || n_max < n_min)
        throw ConfigInvalid("corner asymptotics needs even N with n_min >= 6");

    CornerAsymptotics out;
    std::vector<double> q, c_nn, c_anti;
    for (int n = n_min; n <= n_max; n += 2) {
        const double q0 = discretization_wavevector(n);
        CornerRow row;
        row.side_count = n;
        row.q0 = q0;
        row.corner_nn = (2.0 / kPi) * q0 * std::sin(q0) * std::sin(q0);
        row.corner_antisym =
            std::abs((std::sqrt(2.0) / kPi) * q0 *
                     (std::sin(q0) * std::sin(6.0 * q0) - std::sin(3.0 * q0) * std::sin(2.0 * q0)));
        out.rows.push_back(row);
        q.push_back(q0);
        c_nn.push_back(row.corner_nn);
        c_anti.push_back(row.corner_antisym);
    }
    out.fit_nn = fit_power_law(q, c_nn, exclude_first);
    out.fit_antisym = fit_power_law(q, c_anti, exclude_first);
    return out;
}

} // namespace subrad
