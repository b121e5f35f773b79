#include "subrad/beam.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace subrad {

namespace {

struct Quadrature {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
Quadrature gauss_legendre(int n) {
    static std::map<int, Quadrature> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    cache[n] = q;
    return q;
}

struct RadialIntegrals {
    cdouble co;    // co-polarized transverse component
    cdouble cross; // counter-rotating transverse component
    cdouble z;     // longitudinal component
};

// Cone-angle integrals of the focusing integrand at radius rho. The
// substitution theta = pi/2 - v^2 removes the sqrt(cos theta) endpoint
// singularity of the NA = 1 aperture, so fixed Gauss-Legendre converges
// spectrally under node doubling.
class ConeIntegrator {
public:
    ConeIntegrator(const BeamParams& params, double tolerance)
        : params_(params), tol_(tolerance) {
        const double theta_max = std::asin(std::clamp(params.numerical_aperture, 0.0, 1.0));
        v_lo_ = std::sqrt(kPi / 2.0 - theta_max);
        v_hi_ = std::sqrt(kPi / 2.0);
        sin_max_sq_ = std::sin(theta_max) * std::sin(theta_max);
    }

    RadialIntegrals integrate(double rho) const {
        RadialIntegrals prev{};
        for (int n = 32; n <= 2048; n *= 2) {
            RadialIntegrals cur = evaluate(rho, n);
            if (n > 32) {
                const double scale = std::abs(cur.co) + std::abs(cur.cross) + std::abs(cur.z) + 1e-300;
                const double change = std::abs(cur.co - prev.co) + std::abs(cur.cross - prev.cross) +
                                      std::abs(cur.z - prev.z);
                if (change <= tol_ * std::max(scale, 1e-12))
                    return cur;
            }
            prev = cur;
        }
        throw QuadratureNotConverged("focusing integral did not converge under node doubling");
    }

private:
    RadialIntegrals evaluate(double rho, int n) const {
        const Quadrature q = gauss_legendre(n);
        const int l = params_.orbital_l;
        const int s = params_.spin;
        RadialIntegrals acc{};
        for (int i = 0; i < n; ++i) {
            const double v = 0.5 * (v_hi_ - v_lo_) * (q.nodes[i] + 1.0) + v_lo_;
            const double theta = kPi / 2.0 - v * v;
            const double st = std::sin(theta);
            const double ct = std::cos(theta);
            const double apod = std::exp(-params_.pupil_ratio * params_.pupil_ratio * st * st /
                                         sin_max_sq_);
            // W(theta) dtheta = sin(theta) sqrt(cos(theta)) apod * 2 v dv
            const double w =
                q.weights[i] * 0.5 * (v_hi_ - v_lo_) * 2.0 * v * st * std::sqrt(ct) * apod;
            const double u = k0 * rho * st;
            acc.co += w * 0.5 * (1.0 + ct) * std::cyl_bessel_j(std::abs(l), u) * sign_j(l, u);
            acc.cross += w * 0.5 * (1.0 - ct) * std::cyl_bessel_j(std::abs(l + 2 * s), u) *
                         sign_j(l + 2 * s, u);
            acc.z += w * (st / std::sqrt(2.0)) * std::cyl_bessel_j(std::abs(l + s), u) *
                     sign_j(l + s, u);
        }
        return acc;
    }

    // J_{-m}(x) = (-1)^m J_m(x)
    static double sign_j(int order, double) { return order >= 0 ? 1.0 : (order % 2 == 0 ? 1.0 : -1.0); }

    BeamParams params_;
    double tol_;
    double v_lo_, v_hi_;
    double sin_max_sq_;
};

cdouble unit_phase(int quarter_turns, double phi, int winding) {
    // i^q * e^{i w phi}
    return std::polar(1.0, 0.5 * kPi * quarter_turns + winding * phi);
}

} // namespace

void BeamParams::validate() const {
    if (spin != 1 && spin != -1)
        throw ConfigInvalid("beam spin must be +1 or -1");
    if (!(numerical_aperture > 0.0 && numerical_aperture <= 1.0))
        throw ConfigInvalid("numerical aperture must lie in (0, 1]");
    if (!(pupil_ratio > 0.0))
        throw ConfigInvalid("pupil ratio must be positive");
}

BeamField bessel_beam_field(const BeamParams& params, double quadrature_tolerance) {
    params.validate();
    auto integrator = std::make_shared<ConeIntegrator>(params, quadrature_tolerance);

    const int l = params.orbital_l;
    const int s = params.spin;
    const int j = params.total_j();
    const double amp = params.amplitude;

    BeamField beam;
    beam.params = params;
    beam.kind = "bessel";
    beam.field = [integrator, l, s, j, amp](double x, double y) {
        const double rho = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        const RadialIntegrals ri = integrator->integrate(rho);

        const cdouble co = amp * ri.co * unit_phase(l, phi, l);
        const cdouble cross = -amp * ri.cross * unit_phase(l + 2 * s, phi, l + 2 * s);
        const cdouble ez = -amp * ri.z * unit_phase(j, phi, j);

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        Eigen::Vector3cd e;
        e(0) = (co + cross) * inv_sqrt2;
        e(1) = (co - cross) * inv_sqrt2 * cdouble{0.0, static_cast<double>(s)};
        e(2) = ez;
        return e;
    };

    // Peak |E_z| radius: coarse scan then golden-section refinement. The
    // first ring of J_J sets the scale.
    const double s_eff = std::max(0.3, 0.8 * params.numerical_aperture);
    const double guess =
        (std::abs(j) + 0.9 * std::cbrt(static_cast<double>(std::max(1, std::abs(j))))) /
        (k0 * s_eff);
    const double rho_hi = std::max(2.0, 2.5 * guess);
    auto ez_mag = [&](double rho) { return std::abs(amp * integrator->integrate(rho).z); };
    double best_r = 0.0, best = ez_mag(0.0);
    const int scan = 300;
    for (int i = 1; i <= scan; ++i) {
        const double r = rho_hi * i / scan;
        const double v = ez_mag(r);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    double lo = std::max(0.0, best_r - rho_hi / scan);
    double hi = std::min(rho_hi, best_r + rho_hi / scan);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = ez_mag(c), fd = ez_mag(d);
    while (hi - lo > 1e-6) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = ez_mag(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = ez_mag(d);
        }
    }
    beam.peak_radius = 0.5 * (lo + hi);
    beam.peak_ez = ez_mag(beam.peak_radius);
    beam.norm_ref_sq = beam.peak_ez * beam.peak_ez;
    if (!(beam.norm_ref_sq > 0.0))
        throw QuadratureNotConverged("vanishing longitudinal field; cannot normalize");
    return beam;
}

BeamField circular_plane_wave(int spin, double amplitude) {
    if (spin != 1 && spin != -1)
        throw ConfigInvalid("plane-wave spin must be +1 or -1");
    BeamField beam;
    beam.params.orbital_l = 0;
    beam.params.spin = spin;
    beam.kind = "plane";
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cdouble ex = amplitude * inv_sqrt2;
    const cdouble ey = amplitude * inv_sqrt2 * cdouble{0.0, static_cast<double>(spin)};
    beam.field = [ex, ey](double, double) {
        Eigen::Vector3cd e;
        e << ex, ey, cdouble{0.0, 0.0};
        return e;
    };
    beam.peak_ez = 0.0;
    beam.peak_radius = 0.0;
    beam.norm_ref_sq = amplitude * amplitude;
    return beam;
}

Eigen::VectorXcd projected_drive(const BeamField& beam, const AtomArray& array) {
    const Vec2 c = array.centroid();
    const int n = array.total_count();
    Eigen::VectorXcd drive(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3cd e = beam.at(array.positions[i].x - c.x, array.positions[i].y - c.y);
        switch (array.polarization) {
        case Polarization::SigmaZ:
            drive(i) = e(2);
            break;
        case Polarization::SigmaPlus:
            drive(i) = (e(0) - cdouble{0.0, 1.0} * e(1)) * inv_sqrt2;
            break;
        default:
            drive(i) = (e(0) + cdouble{0.0, 1.0} * e(1)) * inv_sqrt2;
            break;
        }
    }
    return drive;
}

} // namespace subrad
