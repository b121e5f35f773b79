#include "subrad/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "subrad/analysis.hpp"
#include "subrad/beam.hpp"
#include "subrad/dipole_sum.hpp"
#include "subrad/io.hpp"
#include "subrad/scattering.hpp"

namespace subrad::acceptance {

namespace {

using io::fmt;

struct Check {
    bool pass = true;
    std::string details;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!details.empty())
            details += "; ";
        details += (ok ? "" : "FAILED: ") + what;
    }
};

LatticeDescriptor square(int n, double a) {
    LatticeDescriptor d;
    d.kind = LatticeKind::Square;
    d.side_count = n;
    d.period_x = a;
    return d;
}

// ---- 1: decay-rate sum rule over randomized configurations -------------------

CriterionResult criterion_trace_sum_rule() {
    std::mt19937 rng(20240517u);
    std::uniform_real_distribution<double> period(0.15, 0.55);
    std::uniform_int_distribution<int> kind_pick(0, 4);
    std::uniform_int_distribution<int> pol_pick(0, 2);
    std::uniform_int_distribution<int> side(2, 7);

    Check c;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        LatticeDescriptor d;
        d.kind = static_cast<LatticeKind>(kind_pick(rng));
        d.side_count = side(rng);
        d.period_x = period(rng);
        if (d.kind == LatticeKind::Rectangular) {
            d.side_count_y = side(rng);
            d.period_y = period(rng);
        }
        const auto pol = static_cast<Polarization>(pol_pick(rng));
        const auto states = diagonalize(build_hamiltonian(generate_array(d, pol)));
        double sum = 0.0;
        for (const auto& s : states)
            sum += s.decay;
        worst = std::max(worst, std::abs(sum - states.size()) / states.size());
    }
    c.require(worst < 1e-8, "sum(Gamma)/Gamma0 = N_tot to 1e-8 over 50 random configs");
    c.details += " (worst rel err " + fmt(worst) + ")";
    return {1, "decay-rate sum rule", c.pass, c.details};
}

// ---- 2: dimer against the closed-form kernel ----------------------------------

CriterionResult criterion_dimer() {
    // Independent evaluation of the transverse kernel at R = 0.1.
    const double r = 0.1;
    const double u = k0 * r;
    const cdouble g_zz =
        std::exp(cdouble{0.0, u}) / (4.0 * kPi * r) * (1.0 + cdouble{0.0, 1.0} / u - 1.0 / (u * u));
    const double g_plus = 1.0 + (6.0 * kPi / k0) * g_zz.imag();
    const double g_minus = 1.0 - (6.0 * kPi / k0) * g_zz.imag();

    // A dimer: two atoms 0.1 apart.
    AtomArray dimer;
    dimer.descriptor = square(2, 0.1);
    dimer.polarization = Polarization::SigmaZ;
    dimer.positions = {{0.0, 0.0}, {0.0, 0.1}};

    const auto states = diagonalize(build_hamiltonian(dimer));
    Check c;
    c.require(std::abs(states[0].decay - g_minus) < 1e-10 &&
                  std::abs(states[1].decay - g_plus) < 1e-10,
              "dimer decay rates match closed form to 1e-10");
    c.require(std::abs(states[1].decay - 1.9225) < 5e-4 && std::abs(states[0].decay - 0.0775) < 5e-4,
              "values near {1.9225, 0.0775}");
    c.details += " (got {" + fmt(states[1].decay) + ", " + fmt(states[0].decay) + "})";
    return {2, "dimer closed-form oracle", c.pass, c.details};
}

// ---- 3: 12x12 period-sweep structure ------------------------------------------

CriterionResult criterion_sweep_structure() {
    const int n = 12;
    Check c;

    const std::vector<std::pair<std::string, StateSelector>> seeds = {
        {"B2", subradiant_with(Irrep::B2, n, n)},
        {"A2", subradiant_with(Irrep::A2, n, n - 2)},
    };
    auto branches = period_sweep(square(n, 0.4), Polarization::SigmaZ, 0.26, 0.45, 96, seeds);
    const auto& b2 = branches[0];
    const auto& a2 = branches[1];
    c.require(!b2.lost && !a2.lost, "sigma_z branches tracked over the full range");

    // Crossing of the two branches.
    double crossing = 0.0;
    for (size_t i = 0; i + 1 < b2.points.size(); ++i) {
        const double d0 = b2.points[i].decay - a2.points[i].decay;
        const double d1 = b2.points[i + 1].decay - a2.points[i + 1].decay;
        if (d0 >= 0.0 && d1 < 0.0)
            crossing = 0.5 * (b2.points[i].parameter + b2.points[i + 1].parameter);
    }
    c.require(std::abs(crossing - 0.36) <= 0.02,
              "branch crossing at 0.36 +- 0.02 (got " + fmt(crossing) + ")");
    c.require(b2.points.back().decay < a2.points.back().decay,
              "corner-dominated branch least lossy at the large-period end");

    const int ib = b2.argmin_decay();
    const int ia = a2.argmin_decay();
    const double min_b = b2.points[ib].parameter;
    const double min_a = a2.points[ia].parameter;
    c.require(ib > 0 && ib + 1 < static_cast<int>(b2.points.size()) &&
                  std::abs(min_b - 0.30) <= 0.02,
              "B2 interior minimum at 0.30 +- 0.02 (got " + fmt(min_b) + ")");
    c.require(ia > 0 && ia + 1 < static_cast<int>(a2.points.size()) &&
                  std::abs(min_a - 0.30) <= 0.02,
              "A2 interior minimum at 0.30 +- 0.02 (got " + fmt(min_a) + ")");

    // In-plane polarization: monotonic over the same range.
    auto pm = period_sweep(square(n, 0.4), Polarization::SigmaPlus, 0.26, 0.45, 96,
                           {{"rank0", most_subradiant(0)}, {"rank1", most_subradiant(1)}});
    for (const auto& branch : pm) {
        bool down = true, up = true;
        for (size_t i = 0; i + 1 < branch.points.size(); ++i) {
            const double g0 = branch.points[i].decay;
            const double g1 = branch.points[i + 1].decay;
            if (g1 > g0 * (1.0 + 1e-3))
                down = false;
            if (g1 < g0 * (1.0 - 1e-3))
                up = false;
        }
        c.require(down || up, "sigma_+- branch " + branch.label + " monotonic over (0.26, 0.45)");
    }
    return {3, "12x12 period-sweep structure", c.pass, c.details};
}

// ---- 4: Poisson vs damped-direct dispersion ------------------------------------

std::vector<BlochVector> guided_probes(double a) {
    std::vector<BlochVector> ks;
    const double m = kPi / a;
    for (int i = 0; i < 10; ++i) {
        const double t = 0.55 + 0.05 * i;
        ks.push_back({t * m, t * m});
    }
    for (double s : {0.15, 0.35, 0.55, 0.75, 0.95})
        ks.push_back({m, s * m});
    for (auto [u, v] : std::initializer_list<std::pair<double, double>>{
             {0.8, 0.5}, {0.9, 0.3}, {0.7, 0.7}, {0.95, 0.55}, {0.85, 0.75}})
        ks.push_back({u * m, v * m});
    return ks;
}

CriterionResult criterion_dispersion_consistency() {
    Check c;
    double worst_re = 0.0, worst_gamma = 0.0;
    for (double a : {0.28, 0.294, 0.35}) {
        for (const auto& k : guided_probes(a)) {
            if (!k.below_light_line())
                continue;
            const auto poisson = dipole_sum_poisson_z(k, a, a);
            const auto direct =
                dipole_sum_damped_direct(k, Polarization::SigmaZ, a, a);
            const double rel = std::abs(poisson.value.real() - direct.value.real()) /
                               std::max(std::abs(poisson.value.real()), 1e-3);
            worst_re = std::max(worst_re, rel);
            const double gp = std::abs(dispersion_at(poisson, k).decay);
            const double gd = std::abs(dispersion_at(direct, k).decay);
            worst_gamma = std::max({worst_gamma, gp, gd});
        }
    }
    c.require(worst_re < 1e-4, "Re C agreement 1e-4 at 20 guided probes x 3 periods (worst " +
                                   fmt(worst_re) + ")");
    c.require(worst_gamma < 1e-6,
              "Gamma(k)/Gamma0 < 1e-6 at guided probes, both methods (worst " + fmt(worst_gamma) +
                  ")");
    return {4, "dispersion method consistency", c.pass, c.details};
}

// ---- 5: flat-band period ---------------------------------------------------------

CriterionResult criterion_flat_band() {
    Check c;
    const auto z = find_flat_band_period(Polarization::SigmaZ, 0.25, 0.35);
    c.require(z.has_value() && std::abs(*z - 0.294) <= 0.003,
              "sigma_z quartic point at 0.294 +- 0.003 (got " + (z ? fmt(*z) : "none") + ")");
    const auto pm = find_flat_band_period(Polarization::SigmaPlus, 0.15, 0.45, 16);
    c.require(!pm.has_value(), "no sigma_+- curvature sign change over (0.15, 0.45)");
    return {5, "flat-band period", c.pass, c.details};
}

// ---- 6 & 7: size scaling -----------------------------------------------------------

StateSelector square_corner_branch(int n) { return subradiant_with(Irrep::B2, n, n); }
StateSelector square_antisym_branch(int n) { return subradiant_with(Irrep::A2, n, n - 2); }

CriterionResult criterion_scaling_fixed_period() {
    Check c;
    const std::vector<int> even{8, 10, 12, 14, 16, 18, 20};

    // The branch selectors depend on N, so assemble rows manually through
    // scaling_sweep per size family.
    auto run_square = [&](bool antisym) {
        std::vector<double> x, y;
        for (int n : even) {
            const auto states = spectrum_catalog(generate_array(square(n, 0.4), Polarization::SigmaZ));
            const int idx = (antisym ? square_antisym_branch(n) : square_corner_branch(n))(states);
            x.push_back(static_cast<double>(n) * n);
            y.push_back(states[idx].decay);
        }
        return fit_power_law(x, y);
    };
    const auto fit_a2 = run_square(true);
    const auto fit_b2 = run_square(false);
    c.require(std::abs(fit_a2.exponent + 5.0) <= 0.3,
              "square antisymmetric branch exponent -5 +- 0.3 (got " + fmt(fit_a2.exponent) + ")");
    c.require(std::abs(fit_b2.exponent + 3.0) <= 0.3,
              "square corner branch exponent -3 +- 0.3 (got " + fmt(fit_b2.exponent) + ")");

    auto run_most_subradiant = [&](LatticeKind kind, const std::vector<int>& sizes) {
        std::vector<double> x, y;
        for (int n : sizes) {
            LatticeDescriptor d;
            d.kind = kind;
            d.side_count = n;
            d.period_x = 0.4;
            const AtomArray array = generate_array(d, Polarization::SigmaZ);
            const auto states = spectrum_catalog(array);
            x.push_back(array.total_count());
            y.push_back(states[0].decay);
        }
        return fit_power_law(x, y);
    };
    const auto fit_diag =
        run_most_subradiant(LatticeKind::DiagonalSquare, {7, 8, 9, 10, 11, 12, 13, 14});
    const auto fit_tri =
        run_most_subradiant(LatticeKind::Triangle, {12, 14, 16, 18, 20, 22, 24, 26, 28});
    c.require(std::abs(fit_diag.exponent + 1.5) <= 0.3,
              "diagonal-square exponent -1.5 +- 0.3 (got " + fmt(fit_diag.exponent) + ")");
    c.require(std::abs(fit_tri.exponent + 1.5) <= 0.3,
              "triangle exponent -1.5 +- 0.3 (got " + fmt(fit_tri.exponent) + ")");
    return {6, "fixed-period scaling exponents", c.pass, c.details};
}

CriterionResult criterion_scaling_optimized() {
    Check c;
    const std::vector<int> even{8, 10, 12, 14, 16, 18, 20};
    std::vector<double> x, yb, ya;
    bool dominance = true;
    for (int n : even) {
        const LatticeDescriptor d = square(n, 0.4);
        // Shared coarse sweep for both branches; the 0.41 endpoint keeps the
        // fixed-period reference inside the scanned window.
        auto branches = period_sweep(d, Polarization::SigmaZ, 0.25, 0.41, 81,
                                     {{"B2", square_corner_branch(n)},
                                      {"A2", square_antisym_branch(n)}});
        const auto fixed_states = spectrum_catalog(generate_array(square(n, 0.4), Polarization::SigmaZ));
        const double fixed_b2 = fixed_states[square_corner_branch(n)(fixed_states)].decay;
        const double fixed_a2 = fixed_states[square_antisym_branch(n)(fixed_states)].decay;

        const auto opt_b2 = refine_branch_minimum(d, Polarization::SigmaZ, branches[0]);
        const auto opt_a2 = refine_branch_minimum(d, Polarization::SigmaZ, branches[1]);
        dominance = dominance && opt_b2.decay <= fixed_b2 * (1.0 + 1e-9) &&
                    opt_a2.decay <= fixed_a2 * (1.0 + 1e-9);
        x.push_back(static_cast<double>(n) * n);
        yb.push_back(opt_b2.decay);
        ya.push_back(opt_a2.decay);
    }
    const auto fit_b2 = fit_power_law(x, yb);
    const auto fit_a2 = fit_power_law(x, ya);
    c.require(std::abs(fit_b2.exponent + 3.0) <= 0.4,
              "optimized corner branch exponent -3 +- 0.4 (got " + fmt(fit_b2.exponent) + ")");
    c.require(std::abs(fit_a2.exponent + 5.0) <= 0.4,
              "optimized antisymmetric branch exponent -5 +- 0.4 (got " + fmt(fit_a2.exponent) + ")");
    c.require(dominance, "optimized losses never exceed the fixed-period losses");
    return {7, "optimized-period scaling", c.pass, c.details};
}

// ---- 8: 6x6 optimal periods ---------------------------------------------------------

CriterionResult criterion_optimal_periods() {
    Check c;
    const auto b2 = optimize_period(square(6, 0.4), Polarization::SigmaZ, "B2",
                                    square_corner_branch(6), 0.25, 0.33);
    const auto a2 = optimize_period(square(6, 0.4), Polarization::SigmaZ, "A2",
                                    square_antisym_branch(6), 0.25, 0.33);
    c.require(b2.interior && std::abs(b2.period - 0.281) <= 0.005,
              "corner-state optimum 0.281 +- 0.005 (got " + fmt(b2.period) + ")");
    c.require(a2.interior && std::abs(a2.period - 0.268) <= 0.005,
              "antisymmetric-state optimum 0.268 +- 0.005 (got " + fmt(a2.period) + ")");
    return {8, "6x6 optimal periods", c.pass, c.details};
}

// ---- 9: beam-selective scattering ---------------------------------------------------

struct PeakInfo {
    double value = 0.0;
    double center = 0.0;
};

PeakInfo refine_peak(const EffectiveHamiltonian& h, const std::vector<CollectiveState>& states,
                     const BeamField& beam, int mode, double around, double width) {
    std::vector<double> grid(241);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = around - width + 2.0 * width * i / (grid.size() - 1);
    const auto local = scan_spectrum(h, states, beam, grid);
    PeakInfo p;
    for (size_t g = 0; g < grid.size(); ++g) {
        if (local.modal(mode, g) > p.value) {
            p.value = local.modal(mode, g);
            p.center = grid[g];
        }
    }
    return p;
}

CriterionResult criterion_scattering() {
    Check c;

    // Single-atom anchor through the full machinery.
    {
        AtomArray atom;
        atom.descriptor = square(2, 0.4);
        atom.polarization = Polarization::SigmaZ;
        atom.positions = {{0.0, 0.0}};
        const auto h1 = build_hamiltonian(atom);
        const BeamParams bp{.orbital_l = 9, .spin = 1};
        const BeamField beam = bessel_beam_field(bp);
        Eigen::VectorXcd drive(1);
        drive(0) = beam.peak_ez; // atom sits at the |E_z| maximum
        const auto x = solve_coupled_dipoles(h1, drive, 0.0);
        const double sigma = total_cross_section(x, drive, beam.norm_ref_sq);
        c.require(std::abs(sigma - 3.0 / (2.0 * kPi)) < 1e-10,
                  "single-atom resonant cross section = 3 lambda0^2/(2 pi) (got " + fmt(sigma) +
                      ")");
    }

    struct Case {
        double period;
        int orbital;
        Irrep irrep;
        int mx, my;
        const char* label;
    };
    for (const Case& cs : {Case{0.281, 9, Irrep::B2, 6, 6, "corner"},
                           Case{0.268, 7, Irrep::A2, 6, 4, "antisymmetric"}}) {
        const AtomArray array = generate_array(square(6, cs.period), Polarization::SigmaZ);
        const auto h = build_hamiltonian(array);
        const auto states = spectrum_catalog(h);
        const int target = subradiant_with(cs.irrep, cs.mx, cs.my)(states);

        const BeamField beam = bessel_beam_field({.orbital_l = cs.orbital, .spin = 1});
        std::vector<double> grid(2001);
        for (size_t i = 0; i < grid.size(); ++i)
            grid[i] = -40.0 + 80.0 * i / (grid.size() - 1);
        const auto spec = scan_spectrum(h, states, beam, grid);

        double worst_sum = 0.0;
        for (size_t g = 0; g < grid.size(); ++g) {
            const double total = spec.total[g];
            const double modal_sum = spec.modal.col(g).sum();
            worst_sum = std::max(worst_sum,
                                 std::abs(modal_sum - total) / std::max(std::abs(total), 1e-12));
        }
        c.require(worst_sum < 1e-8, std::string(cs.label) + ": modal split sums to the total (worst " +
                                        fmt(worst_sum) + ")");

        // Largest narrow modal peak, each refined near its own resonance.
        int best_mode = -1;
        PeakInfo best{};
        for (const auto& s : states) {
            if (s.decay > 0.25)
                continue;
            const PeakInfo p =
                refine_peak(h, states, beam, s.index, s.detuning, std::max(2.0 * s.decay, 0.05));
            if (p.value > best.value) {
                best = p;
                best_mode = s.index;
            }
        }
        c.require(best_mode == target, std::string(cs.label) + ": dominant narrow peak is the " +
                                           to_string(cs.irrep) + " target state");
        if (best_mode == target) {
            c.require(std::abs(best.center - states[target].detuning) <= 0.5 * states[target].decay,
                      std::string(cs.label) + ": peak center within Gamma/2 of the eigen-detuning");
        }
    }
    return {9, "beam-selective scattering", c.pass, c.details};
}

// ---- 10: rectangular deformation ----------------------------------------------------

CriterionResult criterion_deformation() {
    Check c;
    const int n = 12;
    auto branches = deformation_sweep(n, 0.31, Polarization::SigmaZ, 0.96, 1.04, 81,
                                      {{"B2-like", subradiant_with(Irrep::B2, n, n)},
                                       {"A2-like", subradiant_with(Irrep::A2, n, n - 2)}});
    const auto& b2 = branches[0];
    const auto& a2 = branches[1];

    const double base_b2 = b2.at_parameter(1.0).decay;
    const double base_a2 = a2.at_parameter(1.0).decay;

    double a2_amp_1pct = 0.0;
    for (const auto& p : a2.points)
        if (std::abs(p.parameter - 1.0) <= 0.0100001)
            a2_amp_1pct = std::max(a2_amp_1pct, p.decay / base_a2);
    c.require(a2_amp_1pct >= 10.0, "antisymmetric branch losses grow >= 10x within 1% (got " +
                                       fmt(a2_amp_1pct) + "x)");

    double b2_max = 0.0, b2_min = 1e300;
    for (const auto& p : b2.points) {
        if (std::abs(p.parameter - 1.0) <= 0.0300001) {
            b2_max = std::max(b2_max, p.decay);
            b2_min = std::min(b2_min, p.decay);
        }
    }
    c.require(b2_max / base_b2 < 2.0 && base_b2 / b2_min < 2.0,
              "corner branch changes < 2x within 3% (span " + fmt(b2_max / b2_min) + "x)");
    return {10, "deformation sensitivity", c.pass, c.details};
}

// ---- 11: corner-amplitude asymptotics ------------------------------------------------

CriterionResult criterion_corner_asymptotics() {
    Check c;
    const auto corner = corner_asymptotics(8, 40);
    c.require(std::abs(corner.fit_nn.exponent - 3.0) <= 0.1,
              "corner amplitude power 3 +- 0.1 (got " + fmt(corner.fit_nn.exponent) + ")");
    c.require(std::abs(corner.fit_antisym.exponent - 5.0) <= 0.1,
              "next-to-corner amplitude power 5 +- 0.1 (got " + fmt(corner.fit_antisym.exponent) +
                  ")");
    return {11, "corner-amplitude asymptotics", c.pass, c.details};
}

// ---- 12: property suite ---------------------------------------------------------------

CriterionResult criterion_properties() {
    Check c;

    // Basis orthonormality.
    {
        const int n = 9;
        double worst = 0.0;
        for (int m1x = 1; m1x <= n; ++m1x)
            for (int m1y = 1; m1y <= n; ++m1y)
                for (int m2x = m1x; m2x <= n; ++m2x)
                    for (int m2y = (m2x == m1x ? m1y : 1); m2y <= n; ++m2y) {
                        const double dot = standing_wave_basis(n, m1x, m1y)
                                               .dot(standing_wave_basis(n, m2x, m2y));
                        const double expect = (m1x == m2x && m1y == m2y) ? 1.0 : 0.0;
                        worst = std::max(worst, std::abs(dot - expect));
                    }
        c.require(worst < 1e-10, "standing-wave basis orthonormal to 1e-10 (worst " + fmt(worst) +
                                     ")");
    }

    // Decomposition completeness on a real spectrum.
    {
        const AtomArray array = generate_array(square(6, 0.3), Polarization::SigmaZ);
        const auto states = diagonalize(build_hamiltonian(array));
        double worst = 0.0;
        for (const auto& s : states) {
            const auto dec = decompose(s, array);
            worst = std::max(worst, std::abs(dec.coefficients.squaredNorm() - 1.0));
        }
        c.require(worst < 1e-10, "sum |c|^2 = 1 to 1e-10 (worst " + fmt(worst) + ")");
    }

    // Irrep selection rule: antisymmetric labels have no diagonal harmonics.
    {
        const AtomArray array = generate_array(square(12, 0.4), Polarization::SigmaZ);
        const auto states = spectrum_catalog(array);
        double worst = 0.0;
        int checked = 0;
        for (const auto& s : states) {
            if (s.irrep != Irrep::A2 && s.irrep != Irrep::B1)
                continue;
            ++checked;
            const auto dec = decompose(s, array);
            for (int m = 1; m <= 12; ++m)
                worst = std::max(worst, std::abs(dec.coefficients(m - 1, m - 1)));
        }
        c.require(checked > 0 && worst < 1e-8,
                  "A2/B1 diagonal harmonics vanish below 1e-8 (worst " + fmt(worst) + ", " +
                      std::to_string(checked) + " states)");
    }

    // sigma_+ and sigma_- give identical spectra.
    {
        const auto plus = diagonalize(
            build_hamiltonian(generate_array(square(8, 0.35), Polarization::SigmaPlus)));
        const auto minus = diagonalize(
            build_hamiltonian(generate_array(square(8, 0.35), Polarization::SigmaMinus)));
        double worst = 0.0;
        for (size_t i = 0; i < plus.size(); ++i)
            worst = std::max({worst, std::abs(plus[i].decay - minus[i].decay),
                              std::abs(plus[i].detuning - minus[i].detuning)});
        c.require(worst < 1e-13, "sigma_+ and sigma_- spectra identical (worst " + fmt(worst) + ")");
    }

    // Determinism: identical state catalogs on repeated runs.
    {
        auto render = [] {
            const AtomArray array = generate_array(square(6, 0.31), Polarization::SigmaZ);
            const auto states = spectrum_catalog(array);
            std::ostringstream os;
            for (const auto& s : states)
                os << fmt(s.detuning) << ',' << fmt(s.decay) << ',' << to_string(s.irrep) << '\n';
            return os.str();
        };
        const std::string a = render(), b = render();
        c.require(io::fnv1a64(a) == io::fnv1a64(b) && a == b, "re-run produces hash-identical output");
    }
    return {12, "property suite", c.pass, c.details};
}

} // namespace

std::vector<int> all_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}; }

CriterionResult run_criterion(int id) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
    case 1: r = criterion_trace_sum_rule(); break;
    case 2: r = criterion_dimer(); break;
    case 3: r = criterion_sweep_structure(); break;
    case 4: r = criterion_dispersion_consistency(); break;
    case 5: r = criterion_flat_band(); break;
    case 6: r = criterion_scaling_fixed_period(); break;
    case 7: r = criterion_scaling_optimized(); break;
    case 8: r = criterion_optimal_periods(); break;
    case 9: r = criterion_scattering(); break;
    case 10: r = criterion_deformation(); break;
    case 11: r = criterion_corner_asymptotics(); break;
    case 12: r = criterion_properties(); break;
    default: throw ConfigInvalid("unknown acceptance criterion " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool run(const std::vector<int>& ids, std::ostream& out) {
    const std::vector<int> list = ids.empty() ? all_ids() : ids;
    bool all_pass = true;
    for (int id : list) {
        CriterionResult r;
        try {
            r = run_criterion(id);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.details = std::string("exception: ") + e.what();
        }
        all_pass = all_pass && r.pass;
        out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.name << "] "
            << r.details << " (" << fmt(r.seconds) << " s)\n";
        out.flush();
    }
    return all_pass;
}

} // namespace subrad::acceptance
