#include "subrad/dipole_sum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "subrad/polylog.hpp"

namespace subrad {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kZeta3 = 1.2020569031595942854;
const cdouble kI{0.0, 1.0};

// Causal branch: Re >= 0, and +i sqrt(|x|) on the propagating side.
cdouble causal_sqrt(double x) {
    return x >= 0.0 ? cdouble{std::sqrt(x), 0.0} : cdouble{0.0, std::sqrt(-x)};
}

double wrap_to_cell(double k, double g) {
    return k - g * std::round(k / g);
}

} // namespace

double BlochVector::norm() const { return std::hypot(kx, ky); }

bool BlochVector::below_light_line() const { return norm() > k0; }

BlochVector BlochVector::reduced(double ax, double ay) const {
    return {wrap_to_cell(kx, 2.0 * kPi / ax), wrap_to_cell(ky, 2.0 * kPi / ay)};
}

// --- Poisson-resummed sum (sigma_z) -------------------------------------------

DipoleSum dipole_sum_poisson_z(BlochVector k_in, double ax, double ay,
                               const PoissonOptions& options) {
    const BlochVector k = k_in.reduced(ax, ay);
    const double gx = 2.0 * kPi / ax;
    const double gy = 2.0 * kPi / ay;
    const double margin = options.anomaly_margin * std::max(gx, gy);

    // Rayleigh anomalies: a 1D diffraction order of the chain direction
    // (k0 +- kx on the reciprocal comb) or a 2D order crossing the light
    // circle. The resummed series has log singularities there.
    for (int eps : {-1, 1}) {
        const double q = k0 + eps * k.kx;
        if (std::abs(q - gx * std::round(q / gx)) < margin)
            throw AnomalyProximity("chain diffraction order within margin");
    }
    for (int m = static_cast<int>(std::floor((-k0 - k.kx) / gx)) - 1;
         m <= static_cast<int>(std::ceil((k0 - k.kx) / gx)) + 1; ++m) {
        const double kxm = k.kx + m * gx;
        if (std::abs(kxm) > k0 + 2.0 * margin)
            continue;
        for (int n = static_cast<int>(std::floor((-k0 - k.ky) / gy)) - 1;
             n <= static_cast<int>(std::ceil((k0 - k.ky) / gy)) + 1; ++n) {
            const double kyn = k.ky + n * gy;
            if (std::abs(std::hypot(kxm, kyn) - k0) < margin)
                throw AnomalyProximity("lattice diffraction order within margin");
        }
    }

    DipoleSum result;
    result.method = SumMethod::PoissonZ;

    // Self-row of the chain along x, resummed into polylogarithms.
    cdouble value{0.0, 0.0};
    const double k0ax = k0 * ax;
    for (int eps : {-1, 1}) {
        const double theta = ax * (k0 + eps * k.kx);
        value += (polylog_unit(1, theta) + (kI / k0ax) * polylog_unit(2, theta) -
                  polylog_unit(3, theta) / (k0ax * k0ax)) /
                 (4.0 * kPi * ax);
    }

    // Remaining rows, order by order in the x-direction reciprocal comb.
    // Evanescent orders (|k_x^(m)| > k0) give exponentially decaying
    // Macdonald-function rows; propagating orders are handled by the
    // analytically continued bracket below.
    const double tol = options.tolerance / 4.0;
    double tail = 0.0;
    std::vector<double> propagating;
    int m_hi = 0;
    for (int dir : {1, -1}) {
        for (int step = (dir == 1 ? 0 : 1);; ++step) {
            const int m = dir * step;
            const double kxm = k.kx + m * gx;
            const double p2 = kxm * kxm - k0 * k0;
            if (p2 <= 0.0) {
                propagating.push_back(kxm);
                continue;
            }
            const double p = std::sqrt(p2);
            if (p * ay > 45.0)
                break;
            m_hi = std::max(m_hi, std::abs(m));

            const double ratio = std::exp(-p * ay);
            cdouble row{0.0, 0.0};
            double envelope = 0.0;
            int n = 1;
            for (;; ++n) {
                if (n > options.max_n)
                    throw TruncationNotConverged("Macdonald row did not converge");
                const double arg = p * ay * n;
                const double b0 = std::cyl_bessel_k(0.0, arg);
                const double b1 = std::cyl_bessel_k(1.0, arg);
                row += (k0 * k0 * b0 - (p / (ay * n)) * b1) * std::cos(k.ky * ay * n);
                envelope = k0 * k0 * b0 + (p / (ay * n)) * b1;
                if (n >= 2 && envelope * ratio / (1.0 - ratio) < tol)
                    break;
            }
            result.n_range = std::max(result.n_range, n);
            tail += envelope * ratio / (1.0 - ratio);
            value += row / (kPi * ax * k0 * k0);
        }
    }
    result.m_range = m_hi;

    // Propagating x-orders: Poisson in y with the divergent pieces subtracted
    // term by term and reinstated analytically (log/gamma and zeta(3) parts).
    for (double kxm : propagating) {
        const double pm2 = kxm * kxm - k0 * k0; // negative here
        const double abs_pm = std::sqrt(-pm2);
        const double A = k0 * k0 + 0.5 * pm2;
        const double B =
            4.0 * k0 * k0 * (2.0 * k.ky * k.ky - pm2) + pm2 * (4.0 * k.ky * k.ky - pm2);

        cdouble brace = A * (std::log(abs_pm * ay / (4.0 * kPi)) + kEulerGamma) +
                        kI * (kPi / 2.0) * A;
        brace += -0.25 * pm2 - 0.5 * k.ky * k.ky - kPi * kPi / (3.0 * ay * ay);
        brace += kZeta3 * ay * ay / (32.0 * kPi * kPi) * B;

        const cdouble w0 = causal_sqrt(kxm * kxm + k.ky * k.ky - k0 * k0);
        brace += (kPi / ay) * (w0 + k0 * k0 / w0);

        // All orders propagate only for n below this; the 1/n^5 tail estimate
        // applies once everything is evanescent.
        const int n_open = static_cast<int>((k0 + std::abs(k.ky)) / gy) + 2;
        double prev = 0.0;
        int n = 1;
        for (;; ++n) {
            if (n > options.max_n)
                throw TruncationNotConverged("propagating-order sum did not converge");
            const double kyp = k.ky + n * gy;
            const double kym = k.ky - n * gy;
            const cdouble wp = causal_sqrt(kxm * kxm + kyp * kyp - k0 * k0);
            const cdouble wm = causal_sqrt(kxm * kxm + kym * kym - k0 * k0);
            const cdouble g = (kPi / ay) * (wp + wm + k0 * k0 / wp + k0 * k0 / wm) -
                              4.0 * kPi * kPi * n / (ay * ay) - k0 * k0 / n - 0.5 * pm2 / n -
                              ay * ay / (32.0 * kPi * kPi * n * n * n) * B;
            brace += g;
            const double mag = std::abs(g);
            if (n > n_open + 4 && std::max(mag, prev) * n / 4.0 < tol)
                break;
            prev = mag;
        }
        result.n_range = std::max(result.n_range, n);
        tail += std::abs(prev) * n / 4.0;
        value += brace / (2.0 * kPi * ax * k0 * k0);
    }

    result.value = value;
    result.tail_bound = tail;
    return result;
}

// --- Abel-damped direct sum ----------------------------------------------------

namespace {

struct DampingPlan {
    std::vector<double> eta;  // absolute, descending
    std::vector<int> power;   // eta[i] = power[i] * eta.back() when integral
    bool integral_ratios = true;
};

DampingPlan make_plan(const std::vector<double>& eta_over_k0) {
    if (eta_over_k0.size() < 3)
        throw Error("damping sequence needs at least 3 entries");
    DampingPlan plan;
    for (double e : eta_over_k0)
        plan.eta.push_back(e * k0);
    for (size_t i = 1; i < plan.eta.size(); ++i)
        if (plan.eta[i] >= plan.eta[i - 1] || plan.eta[i] <= 0.0)
            throw Error("damping sequence must be strictly decreasing and positive");
    const double base = plan.eta.back();
    for (double e : plan.eta) {
        const double ratio = e / base;
        const int p = static_cast<int>(std::lround(ratio));
        plan.power.push_back(p);
        if (std::abs(ratio - p) > 1e-12)
            plan.integral_ratios = false;
    }
    return plan;
}

// Neville extrapolation of (x_i, y_i) to x = 0; returns the diagonal.
std::vector<cdouble> neville_diagonal(const std::vector<double>& x, std::vector<cdouble> y) {
    const int n = static_cast<int>(x.size());
    std::vector<cdouble> diag;
    diag.push_back(y[n - 1]);
    for (int j = 1; j < n; ++j) {
        for (int i = n - 1; i >= j; --i)
            y[i] = (x[i - j] * y[i] - x[i] * y[i - 1]) / (x[i - j] - x[i]);
        diag.push_back(y[n - 1]);
    }
    return diag;
}

} // namespace

DipoleSum dipole_sum_damped_direct(BlochVector k_in, Polarization polarization, double ax,
                                   double ay, const DirectOptions& options) {
    const BlochVector k = k_in.reduced(ax, ay);
    const DampingPlan plan = make_plan(options.eta_over_k0);
    const size_t ne = plan.eta.size();

    const double r_max =
        options.r_max > 0.0 ? options.r_max : std::max(80.0, 22.0 / plan.eta.back());
    const int ni = static_cast<int>(std::ceil(r_max / ax));
    const int nj = static_cast<int>(std::ceil(r_max / ay));
    const bool z_pol = out_of_plane(polarization);

    int n_threads = options.threads > 0 ? options.threads
                                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, 16);

    auto sum_rows = [&](int j_begin, int j_end) {
        std::vector<cdouble> acc(ne, cdouble{0.0, 0.0});
        for (int j = j_begin; j < j_end; ++j) {
            const double y = j * ay;
            for (int i = -ni; i <= ni; ++i) {
                if (i == 0 && j == 0)
                    continue;
                const double x = i * ax;
                const double r = std::hypot(x, y);
                if (r > r_max)
                    continue;
                const double u = k0 * r;
                const double inv_u = 1.0 / u;
                const cdouble bracket =
                    z_pol ? cdouble{1.0 - inv_u * inv_u, inv_u}
                          : cdouble{0.5 * (1.0 + inv_u * inv_u), -0.5 * inv_u};
                const cdouble term =
                    bracket * std::polar(1.0 / (4.0 * kPi * r), u + k.kx * x + k.ky * y);
                if (plan.integral_ratios) {
                    const double w = std::exp(-plan.eta.back() * r);
                    for (size_t e = 0; e < ne; ++e) {
                        double damp = 1.0;
                        for (int p = 0; p < plan.power[e]; ++p)
                            damp *= w;
                        acc[e] += term * damp;
                    }
                } else {
                    for (size_t e = 0; e < ne; ++e)
                        acc[e] += term * std::exp(-plan.eta[e] * r);
                }
            }
        }
        return acc;
    };

    // Deterministic chunked reduction regardless of thread scheduling.
    std::vector<std::future<std::vector<cdouble>>> futures;
    const int total_rows = 2 * nj + 1;
    const int chunk = std::max(1, total_rows / (4 * n_threads));
    for (int j = -nj; j <= nj; j += chunk)
        futures.push_back(std::async(std::launch::async, sum_rows, j, std::min(j + chunk, nj + 1)));
    std::vector<cdouble> sums(ne, cdouble{0.0, 0.0});
    for (auto& f : futures) {
        const auto part = f.get();
        for (size_t e = 0; e < ne; ++e)
            sums[e] += part[e];
    }

    const auto diag = neville_diagonal(plan.eta, sums);
    std::vector<double> diffs;
    for (size_t j = 1; j < diag.size(); ++j)
        diffs.push_back(std::abs(diag[j] - diag[j - 1]));
    const double scale = std::max(1.0, std::abs(diag.back()));
    if (diffs.size() >= 2 && diffs.back() > 3.0 * diffs[diffs.size() - 2] &&
        diffs.back() > 1e-7 * scale)
        throw ExtrapolationUnstable("Richardson differences are not contracting");

    DipoleSum result;
    result.method = SumMethod::DampedDirect;
    result.value = diag.back();
    result.eta_sequence = plan.eta;
    result.extrapolation_error = diffs.empty() ? 0.0 : diffs.back();
    result.r_max = r_max;
    result.m_range = ni;
    result.n_range = nj;
    return result;
}

// --- Dispersion ----------------------------------------------------------------

DispersionSample dispersion_at(const DipoleSum& sum, BlochVector k) {
    DispersionSample s;
    s.k = k;
    s.detuning = -(3.0 * kPi / k0) * sum.value.real();
    s.decay = 1.0 - (6.0 * kPi / k0) * sum.value.imag();
    s.below_light_line = k.below_light_line();
    return s;
}

BlochVector high_symmetry_point(char letter, double ax, double ay) {
    switch (letter) {
    case 'G': return {0.0, 0.0};
    case 'X': return {kPi / ax, 0.0};
    case 'M': return {kPi / ax, kPi / ay};
    default: throw ConfigInvalid(std::string("unknown high-symmetry point: ") + letter);
    }
}

namespace {

DipoleSum sum_for(BlochVector k, Polarization pol, double ax, double ay,
                  const PoissonOptions& poisson, const DirectOptions& direct) {
    if (out_of_plane(pol))
        return dipole_sum_poisson_z(k, ax, ay, poisson);
    return dipole_sum_damped_direct(k, pol, ax, ay, direct);
}

} // namespace

std::vector<DispersionSample> dispersion_path(double period, Polarization polarization,
                                              const std::string& path, int samples_per_segment,
                                              const PoissonOptions& poisson,
                                              const DirectOptions& direct) {
    if (path.size() < 2)
        throw ConfigInvalid("path needs at least two high-symmetry points");
    if (samples_per_segment < 1)
        throw ConfigInvalid("samples_per_segment must be positive");

    std::vector<DispersionSample> out;
    double coord = 0.0;
    for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const BlochVector a = high_symmetry_point(path[seg], period, period);
        const BlochVector b = high_symmetry_point(path[seg + 1], period, period);
        const double len = std::hypot(b.kx - a.kx, b.ky - a.ky);
        const int last = (seg + 2 == path.size()) ? samples_per_segment : samples_per_segment - 1;
        for (int i = 0; i <= last; ++i) {
            const double t = static_cast<double>(i) / samples_per_segment;
            const BlochVector k{a.kx + t * (b.kx - a.kx), a.ky + t * (b.ky - a.ky)};
            DispersionSample s;
            try {
                s = dispersion_at(sum_for(k, polarization, period, period, poisson, direct), k);
            } catch (const AnomalyProximity&) {
                s.k = k;
                s.below_light_line = k.below_light_line();
                s.skipped = true;
                s.detuning = std::numeric_limits<double>::quiet_NaN();
                s.decay = std::numeric_limits<double>::quiet_NaN();
            }
            s.path_coord = coord + t * len;
            out.push_back(s);
        }
        coord += len;
    }
    return out;
}

double curvature_at_m(double period, Polarization polarization, const PoissonOptions& poisson,
                      const DirectOptions& direct) {
    const BlochVector m = high_symmetry_point('M', period, period);
    const double length = m.norm();
    const double h = 0.01 * length;
    const double ux = m.kx / length;
    const double uy = m.ky / length;

    auto detuning = [&](double t) {
        const BlochVector k{m.kx - t * ux, m.ky - t * uy};
        return dispersion_at(sum_for(k, polarization, period, period, poisson, direct), k)
            .detuning;
    };
    // The band is even about M along Gamma-M (periodicity + inversion), so a
    // one-sided stencil carries full 4th-order accuracy.
    const double f0 = detuning(0.0);
    const double f1 = detuning(h);
    const double f2 = detuning(2.0 * h);
    return (32.0 * f1 - 2.0 * f2 - 30.0 * f0) / (12.0 * h * h);
}

std::optional<double> find_flat_band_period(Polarization polarization, double period_lo,
                                            double period_hi, int scan_points,
                                            double period_tolerance) {
    if (!(period_lo > 0.1 && period_hi > period_lo))
        throw ConfigInvalid("flat-band search range must sit inside (0.1, inf)");

    auto kappa = [&](double a) { return curvature_at_m(a, polarization); };

    double prev_a = period_lo;
    double prev_k = kappa(prev_a);
    for (int i = 1; i < scan_points; ++i) {
        const double a = period_lo + (period_hi - period_lo) * i / (scan_points - 1);
        const double val = kappa(a);
        if (prev_k == 0.0)
            return prev_a;
        if (prev_k * val < 0.0) {
            double lo = prev_a, hi = a, flo = prev_k;
            while (hi - lo > period_tolerance) {
                const double mid = 0.5 * (lo + hi);
                const double fm = kappa(mid);
                if (fm == 0.0)
                    return mid;
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_a = a;
        prev_k = val;
    }
    return std::nullopt;
}

} // namespace subrad
