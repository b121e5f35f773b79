// subrad — command-line front end: spectra, dispersion, scattering and
// campaign-level sweeps for planar dipolar emitter arrays, with CSV/JSON
// artifacts and a hashed run manifest.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "subrad/acceptance.hpp"
#include "subrad/analysis.hpp"
#include "subrad/beam.hpp"
#include "subrad/dipole_sum.hpp"
#include "subrad/io.hpp"
#include "subrad/scattering.hpp"

namespace {

using namespace subrad;
using nlohmann::json;

struct GeometryOpts {
    std::string geometry = "square";
    int n = 12;
    int ny = 0;
    double period = 0.4;
    double period_y = 0.0;
    std::string pol = "z";

    LatticeDescriptor descriptor() const {
        LatticeDescriptor d;
        d.kind = lattice_kind_from_string(geometry);
        d.side_count = n;
        d.side_count_y = ny;
        d.period_x = period;
        d.period_y = period_y;
        return d;
    }
    Polarization polarization() const {
        if (pol == "z") return Polarization::SigmaZ;
        if (pol == "plus" || pol == "+") return Polarization::SigmaPlus;
        if (pol == "minus" || pol == "-") return Polarization::SigmaMinus;
        throw ConfigInvalid("polarization must be z, plus or minus");
    }
    json to_json() const {
        return {{"geometry", geometry}, {"n", n},           {"ny", ny},
                {"period", period},     {"period_y", period_y}, {"pol", pol}};
    }
};

void add_geometry_options(CLI::App* cmd, GeometryOpts& g, bool with_kind = true) {
    if (with_kind)
        cmd->add_option("--geometry", g.geometry,
                        "square|diagonal|rectangular|triangle|hexagon")
            ->capture_default_str();
    cmd->add_option("--n", g.n, "atoms per edge")->capture_default_str();
    cmd->add_option("--ny", g.ny, "rows (rectangular only; 0 = n)")->capture_default_str();
    cmd->add_option("--period", g.period, "lattice period, units of lambda0")
        ->capture_default_str();
    cmd->add_option("--period-y", g.period_y, "y period (rectangular only; 0 = period)")
        ->capture_default_str();
    cmd->add_option("--pol", g.pol, "dipole polarization: z|plus|minus")->capture_default_str();
}

std::string states_csv(const std::vector<CollectiveState>& states) {
    io::CsvBuilder csv({"index", "d_omega", "gamma", "irrep", "mx1", "my1", "w1", "mx2", "my2",
                        "w2", "mx3", "my3", "w3"});
    for (const auto& s : states) {
        csv.cell(s.index).cell(s.detuning).cell(s.decay).cell(to_string(s.irrep));
        for (int h = 0; h < 3; ++h) {
            if (h < static_cast<int>(s.dominant_harmonics.size())) {
                const auto& d = s.dominant_harmonics[h];
                csv.cell(d.mx).cell(d.my).cell(d.weight);
            } else {
                csv.cell(0).cell(0).cell(0.0);
            }
        }
        csv.end_row();
    }
    return csv.str();
}

json states_json(const AtomArray& array, const std::vector<CollectiveState>& states) {
    json j;
    j["n_tot"] = array.total_count();
    j["geometry"] = to_string(array.descriptor.kind);
    j["polarization"] = to_string(array.polarization);
    j["point_group"] = to_string(point_group(array).group);
    j["eigenvalues"] = json::array();
    for (const auto& s : states)
        j["eigenvalues"].push_back(
            {{"index", s.index}, {"d_omega", s.detuning}, {"gamma", s.decay},
             {"irrep", to_string(s.irrep)}});
    return j;
}

int measured_winding(const BeamField& beam) {
    const double r = beam.peak_radius > 0 ? beam.peak_radius : 0.5;
    const int samples = 256;
    double total = 0.0, prev = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double phi = 2.0 * kPi * i / samples;
        const cdouble ez = beam.at(r * std::cos(phi), r * std::sin(phi))(2);
        const double arg = std::arg(ez);
        if (i > 0) {
            double d = arg - prev;
            while (d > kPi)
                d -= 2.0 * kPi;
            while (d < -kPi)
                d += 2.0 * kPi;
            total += d;
        }
        prev = arg;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

json beam_json(const BeamField& beam) {
    const int winding = beam.kind == "bessel" ? measured_winding(beam) : 0;
    return {{"kind", beam.kind},
            {"l", beam.params.orbital_l},
            {"s", beam.params.spin},
            {"na", beam.params.numerical_aperture},
            {"beta", beam.params.pupil_ratio},
            {"peak_ez_radius", beam.peak_radius},
            {"winding_measured", winding},
            {"winding_expected", beam.params.total_j()},
            {"winding_ok", winding == beam.params.total_j()}};
}

StateSelector branch_selector(const std::string& name, int n) {
    if (name == "b2")
        return subradiant_with(Irrep::B2, n, n);
    if (name == "a2")
        return subradiant_with(Irrep::A2, n, n - 2);
    if (name == "most")
        return most_subradiant(0);
    throw ConfigInvalid("branch must be b2, a2 or most");
}

std::vector<double> parse_grid(const std::string& spec) {
    // "lo:hi:count"
    const auto c1 = spec.find(':');
    const auto c2 = spec.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw ConfigInvalid("grid must be lo:hi:count, got " + spec);
    const double lo = std::stod(spec.substr(0, c1));
    const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(spec.substr(c2 + 1));
    if (count < 2 || hi <= lo)
        throw ConfigInvalid("grid must have hi > lo and count >= 2");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * i / (count - 1);
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subrad: collective dipolar spectra, dispersion and scattering of planar "
                 "emitter arrays (normalized units: lambda0 = 1, Gamma0 = 1)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value run-configuration file; flags override");

    std::string out_dir = "out";
    int threads = 0;
    app.add_option("--out", out_dir, "output directory")
        ->envname("SUBRAD_OUT_DIR")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0 = hardware)")
        ->envname("SUBRAD_THREADS")
        ->capture_default_str();

    // ---- spectrum / modes ----
    GeometryOpts spec_g;
    int amplitudes = 0;
    bool dump_matrix = false;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenstate catalog of one array");
    add_geometry_options(cmd_spectrum, spec_g);
    cmd_spectrum->add_option("--amplitudes", amplitudes,
                             "write per-state amplitude files for the K most subradiant states");
    cmd_spectrum->add_flag("--dump-matrix", dump_matrix, "also write the Hamiltonian matrix");

    GeometryOpts modes_g;
    double gamma_max = 1e300;
    std::string irrep_filter;
    int top = 0;
    auto* cmd_modes = app.add_subcommand("modes", "filter/inspect eigenstates");
    add_geometry_options(cmd_modes, modes_g);
    cmd_modes->add_option("--gamma-max", gamma_max, "keep states with Gamma/Gamma0 below this");
    cmd_modes->add_option("--irrep", irrep_filter, "keep states with this irrep label");
    cmd_modes->add_option("--top", top, "keep only the K most subradiant survivors");

    // ---- dispersion ----
    GeometryOpts disp_g;
    std::string path = "GXMG";
    int samples = 200;
    auto* cmd_disp = app.add_subcommand("dispersion", "infinite-lattice band along a k path");
    add_geometry_options(cmd_disp, disp_g, false);
    cmd_disp->add_option("--path", path, "high-symmetry letters, e.g. GXMG")->capture_default_str();
    cmd_disp->add_option("--samples", samples, "samples per segment")->capture_default_str();

    GeometryOpts map_g;
    int grid_n = 81;
    auto* cmd_map = app.add_subcommand("dispersion-map", "band over the full Brillouin zone");
    add_geometry_options(cmd_map, map_g, false);
    cmd_map->add_option("--grid", grid_n, "samples per k axis")->capture_default_str();

    GeometryOpts fb_g;
    double fb_lo = 0.25, fb_hi = 0.35;
    auto* cmd_fb = app.add_subcommand("flat-band", "period with quartic dispersion at M");
    add_geometry_options(cmd_fb, fb_g, false);
    cmd_fb->add_option("--lo", fb_lo, "search range lower end")->capture_default_str();
    cmd_fb->add_option("--hi", fb_hi, "search range upper end")->capture_default_str();

    // ---- scaling / optimize ----
    GeometryOpts scal_g;
    std::string sizes = "8,10,12,14,16,18,20";
    std::string mode = "fixed";
    std::string branch = "a2";
    double opt_lo = 0.25, opt_hi = 0.41;
    auto* cmd_scaling = app.add_subcommand("scaling", "losses vs array size with power-law fit");
    add_geometry_options(cmd_scaling, scal_g);
    cmd_scaling->add_option("--sizes", sizes, "comma-separated side counts")->capture_default_str();
    cmd_scaling->add_option("--mode", mode, "fixed|optimized")->capture_default_str();
    cmd_scaling->add_option("--branch", branch, "b2|a2|most")->capture_default_str();
    cmd_scaling->add_option("--opt-lo", opt_lo, "optimization range lower end")->capture_default_str();
    cmd_scaling->add_option("--opt-hi", opt_hi, "optimization range upper end")->capture_default_str();

    GeometryOpts opt_g;
    std::string opt_branch = "b2";
    double po_lo = 0.25, po_hi = 0.33;
    auto* cmd_opt = app.add_subcommand("optimize-period", "period minimizing one branch's losses");
    add_geometry_options(cmd_opt, opt_g);
    cmd_opt->add_option("--branch", opt_branch, "b2|a2|most")->capture_default_str();
    cmd_opt->add_option("--lo", po_lo, "range lower end")->capture_default_str();
    cmd_opt->add_option("--hi", po_hi, "range upper end")->capture_default_str();

    // ---- scattering ----
    GeometryOpts scat_g;
    scat_g.n = 6;
    scat_g.period = 0.281;
    int beam_l = 9, beam_s = 1;
    double beam_na = 1.0, beam_beta = 0.5;
    std::string detunings = "-40:40:2000";
    int top_k = 6;
    auto* cmd_scatter = app.add_subcommand("scatter", "beam-driven cross-section spectrum");
    add_geometry_options(cmd_scatter, scat_g);
    cmd_scatter->add_option("--l", beam_l, "beam orbital number")->capture_default_str();
    cmd_scatter->add_option("--s", beam_s, "beam spin, +1|-1")->capture_default_str();
    cmd_scatter->add_option("--na", beam_na, "numerical aperture")->capture_default_str();
    cmd_scatter->add_option("--beta", beam_beta, "pupil/waist ratio")->capture_default_str();
    cmd_scatter->add_option("--detunings", detunings, "grid lo:hi:count")->capture_default_str();
    cmd_scatter->add_option("--top-k", top_k, "modal columns to keep")->capture_default_str();

    // ---- deformation ----
    int def_n = 12;
    double def_period = 0.31;
    std::string def_pol = "z";
    std::string ratios = "0.96:1.04:81";
    auto* cmd_deform = app.add_subcommand("deform", "rectangular deformation of a square array");
    cmd_deform->add_option("--n", def_n, "atoms per edge")->capture_default_str();
    cmd_deform->add_option("--period-x", def_period, "fixed x period")->capture_default_str();
    cmd_deform->add_option("--pol", def_pol, "z|plus|minus")->capture_default_str();
    cmd_deform->add_option("--ratios", ratios, "a_y/a_x grid lo:hi:count")->capture_default_str();

    // ---- corner asymptotics ----
    int ca_min = 8, ca_max = 40;
    auto* cmd_corner = app.add_subcommand("corner-asymptotics", "corner-amplitude scaling table");
    cmd_corner->add_option("--n-min", ca_min, "smallest even N")->capture_default_str();
    cmd_corner->add_option("--n-max", ca_max, "largest even N")->capture_default_str();

    // ---- check ----
    std::string criteria;
    auto* cmd_check = app.add_subcommand("check", "run acceptance criteria");
    cmd_check->add_option("--criteria", criteria, "comma-separated ids (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_check->parsed()) {
            std::vector<int> ids;
            if (!criteria.empty()) {
                std::stringstream ss(criteria);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    ids.push_back(std::stoi(tok));
            }
            return acceptance::run(ids, std::cout) ? 0 : 4;
        }

        io::RunWriter writer(out_dir);

        if (cmd_spectrum->parsed() || cmd_modes->parsed()) {
            const bool is_modes = cmd_modes->parsed();
            const GeometryOpts& g = is_modes ? modes_g : spec_g;
            const AtomArray array = generate_array(g.descriptor(), g.polarization());
            const auto hamiltonian = build_hamiltonian(array);
            auto states = spectrum_catalog(hamiltonian);

            json config = g.to_json();
            if (is_modes) {
                std::vector<CollectiveState> kept;
                for (const auto& s : states) {
                    if (s.decay > gamma_max)
                        continue;
                    if (!irrep_filter.empty() && irrep_filter != to_string(s.irrep))
                        continue;
                    kept.push_back(s);
                }
                if (top > 0 && static_cast<int>(kept.size()) > top)
                    kept.resize(top);
                writer.add("modes.csv", states_csv(kept));
                writer.add_json("modes.json", states_json(array, kept));
                config["gamma_max"] = gamma_max;
                config["irrep"] = irrep_filter;
                config["top"] = top;
                for (const auto& s : kept)
                    std::cout << s.index << "  d_omega=" << io::fmt(s.detuning)
                              << "  gamma=" << io::fmt(s.decay) << "  " << to_string(s.irrep)
                              << "\n";
                writer.finish("modes", config);
                return 0;
            }

            writer.add("states.csv", states_csv(states));
            writer.add_json("states.json", states_json(array, states));
            if (dump_matrix) {
                io::CsvBuilder csv({"i", "j", "re", "im"});
                for (int i = 0; i < hamiltonian.size(); ++i)
                    for (int j = 0; j < hamiltonian.size(); ++j) {
                        csv.cell(i).cell(j).cell(hamiltonian.matrix(i, j).real())
                            .cell(hamiltonian.matrix(i, j).imag());
                        csv.end_row();
                    }
                writer.add("hamiltonian.csv", csv.str());
            }
            for (int s = 0; s < std::min<int>(amplitudes, states.size()); ++s) {
                io::CsvBuilder csv({"site", "x", "y", "re", "im"});
                for (int i = 0; i < array.total_count(); ++i) {
                    csv.cell(i).cell(array.positions[i].x).cell(array.positions[i].y)
                        .cell(states[s].amplitudes(i).real()).cell(states[s].amplitudes(i).imag());
                    csv.end_row();
                }
                char name[32];
                std::snprintf(name, sizeof(name), "amp_%03d.csv", s);
                writer.add(name, csv.str());
            }
            config["amplitudes"] = amplitudes;
            config["dump_matrix"] = dump_matrix;
            writer.finish("spectrum", config);
            return 0;
        }

        if (cmd_disp->parsed()) {
            const auto pol = disp_g.polarization();
            const auto samples_list = dispersion_path(disp_g.period, pol, path, samples);
            io::CsvBuilder csv({"s", "kx", "ky", "d_omega", "gamma", "guided"});
            for (const auto& s : samples_list) {
                csv.cell(s.path_coord).cell(s.k.kx).cell(s.k.ky).cell(s.detuning).cell(s.decay)
                    .cell(s.below_light_line ? 1 : 0);
                csv.end_row();
            }
            writer.add("dispersion.csv", csv.str());
            json config = disp_g.to_json();
            config["path"] = path;
            config["samples"] = samples;
            writer.finish("dispersion", config);
            return 0;
        }

        if (cmd_map->parsed()) {
            const auto pol = map_g.polarization();
            const double g = kPi / map_g.period;
            io::CsvBuilder csv({"kx", "ky", "d_omega", "gamma", "guided"});
            for (int iy = 0; iy < grid_n; ++iy)
                for (int ix = 0; ix < grid_n; ++ix) {
                    const BlochVector k{-g + 2.0 * g * ix / (grid_n - 1),
                                        -g + 2.0 * g * iy / (grid_n - 1)};
                    double det = std::numeric_limits<double>::quiet_NaN();
                    double dec = det;
                    try {
                        const auto sum =
                            out_of_plane(pol)
                                ? dipole_sum_poisson_z(k, map_g.period, map_g.period)
                                : dipole_sum_damped_direct(k, pol, map_g.period, map_g.period);
                        const auto s = dispersion_at(sum, k);
                        det = s.detuning;
                        dec = s.decay;
                    } catch (const AnomalyProximity&) {
                    }
                    csv.cell(k.kx).cell(k.ky).cell(det).cell(dec)
                        .cell(k.below_light_line() ? 1 : 0);
                    csv.end_row();
                }
            writer.add("dispersion_map.csv", csv.str());
            json config = map_g.to_json();
            config["grid"] = grid_n;
            writer.finish("dispersion-map", config);
            return 0;
        }

        if (cmd_fb->parsed()) {
            const auto result = find_flat_band_period(fb_g.polarization(), fb_lo, fb_hi);
            json j{{"pol", fb_g.pol}, {"lo", fb_lo}, {"hi", fb_hi}};
            j["period"] = result ? json(*result) : json(nullptr);
            writer.add_json("flatband.json", j);
            std::cout << "flat-band period: " << (result ? io::fmt(*result) : "none") << "\n";
            writer.finish("flat-band", j);
            return 0;
        }

        if (cmd_scaling->parsed()) {
            std::vector<int> size_list;
            {
                std::stringstream ss(sizes);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    size_list.push_back(std::stoi(tok));
            }
            const auto pol = scal_g.polarization();
            io::CsvBuilder csv({"geometry", "n", "n_tot", "period", "gamma_min", "branch"});
            std::vector<double> x, y;
            for (int n : size_list) {
                LatticeDescriptor d = scal_g.descriptor();
                d.side_count = n;
                double period_used = scal_g.period;
                double decay;
                if (mode == "optimized") {
                    const auto opt = optimize_period(d, pol, branch, branch_selector(branch, n),
                                                     opt_lo, opt_hi);
                    period_used = opt.period;
                    decay = opt.decay;
                } else {
                    d.period_x = scal_g.period;
                    const auto states = spectrum_catalog(generate_array(d, pol));
                    decay = states[branch_selector(branch, n)(states)].decay;
                }
                const int n_tot = [&] {
                    LatticeDescriptor t = scal_g.descriptor();
                    t.side_count = n;
                    return t.total_count();
                }();
                csv.cell(scal_g.geometry).cell(n).cell(n_tot).cell(period_used).cell(decay)
                    .cell(branch);
                csv.end_row();
                x.push_back(n_tot);
                y.push_back(decay);
            }
            const auto fit = fit_power_law(x, y);
            writer.add("scaling.csv", csv.str());
            writer.add_json("scaling.json",
                            {{"exponent", fit.exponent},
                             {"log10_prefactor", fit.log10_prefactor},
                             {"rms_residual_decades", fit.rms_residual_decades},
                             {"points_used", fit.points_used},
                             {"points_excluded", fit.points_excluded},
                             {"meaningful", fit.meaningful()}});
            json config = scal_g.to_json();
            config["sizes"] = sizes;
            config["mode"] = mode;
            config["branch"] = branch;
            writer.finish("scaling", config);
            std::cout << "exponent " << io::fmt(fit.exponent) << " (rms "
                      << io::fmt(fit.rms_residual_decades) << " decades)\n";
            return 0;
        }

        if (cmd_opt->parsed()) {
            const auto result =
                optimize_period(opt_g.descriptor(), opt_g.polarization(), opt_branch,
                                branch_selector(opt_branch, opt_g.n), po_lo, po_hi);
            io::CsvBuilder csv({"period", "d_omega", "gamma", "irrep"});
            for (const auto& p : result.coarse.points) {
                csv.cell(p.parameter).cell(p.detuning).cell(p.decay).cell(to_string(p.irrep));
                csv.end_row();
            }
            writer.add("coarse.csv", csv.str());
            writer.add_json("optimize.json", {{"period_opt", result.period},
                                              {"gamma_min", result.decay},
                                              {"interior", result.interior}});
            json config = opt_g.to_json();
            config["branch"] = opt_branch;
            config["lo"] = po_lo;
            config["hi"] = po_hi;
            writer.finish("optimize-period", config);
            std::cout << "optimal period " << io::fmt(result.period) << " gamma "
                      << io::fmt(result.decay) << (result.interior ? "" : " (boundary)") << "\n";
            return 0;
        }

        if (cmd_scatter->parsed()) {
            const AtomArray array = generate_array(scat_g.descriptor(), scat_g.polarization());
            const auto hamiltonian = build_hamiltonian(array);
            const auto states = spectrum_catalog(hamiltonian);
            const BeamField beam = bessel_beam_field({.orbital_l = beam_l,
                                                      .spin = beam_s,
                                                      .numerical_aperture = beam_na,
                                                      .pupil_ratio = beam_beta});
            const auto grid = parse_grid(detunings);
            const auto spec = scan_spectrum(hamiltonian, states, beam, grid, threads);

            // Keep the K modal columns with the largest grid peaks.
            std::vector<std::pair<double, int>> rank;
            for (int m = 0; m < spec.modal.rows(); ++m)
                rank.push_back({spec.modal.row(m).maxCoeff(), m});
            std::sort(rank.begin(), rank.end(), std::greater<>());
            const int keep = std::min<int>(top_k, rank.size());

            std::vector<std::string> header{"d_omega", "sigma_total"};
            for (int m = 0; m < keep; ++m)
                header.push_back("sigma_mode_" + std::to_string(m + 1));
            io::CsvBuilder csv(header);
            for (size_t gidx = 0; gidx < grid.size(); ++gidx) {
                csv.cell(grid[gidx]).cell(spec.total[gidx]);
                for (int m = 0; m < keep; ++m)
                    csv.cell(spec.modal(rank[m].second, gidx));
                csv.end_row();
            }
            writer.add("spectrum.csv", csv.str());
            writer.add_json("beam.json", beam_json(beam));
            json modes_meta = json::array();
            for (int m = 0; m < keep; ++m) {
                const auto& s = states[rank[m].second];
                json h = json::array();
                for (const auto& d : s.dominant_harmonics)
                    h.push_back({{"mx", d.mx}, {"my", d.my}, {"w", d.weight}});
                modes_meta.push_back({{"column", "sigma_mode_" + std::to_string(m + 1)},
                                      {"state_index", s.index},
                                      {"d_omega", s.detuning},
                                      {"gamma", s.decay},
                                      {"irrep", to_string(s.irrep)},
                                      {"harmonics", h}});
            }
            writer.add_json("modes.json", modes_meta);
            json config = scat_g.to_json();
            config["l"] = beam_l;
            config["s"] = beam_s;
            config["na"] = beam_na;
            config["beta"] = beam_beta;
            config["detunings"] = detunings;
            config["top_k"] = top_k;
            writer.finish("scatter", config);
            return 0;
        }

        if (cmd_deform->parsed()) {
            const auto grid = parse_grid(ratios);
            GeometryOpts g;
            g.pol = def_pol;
            auto branches =
                deformation_sweep(def_n, def_period, g.polarization(), grid.front(), grid.back(),
                                  static_cast<int>(grid.size()),
                                  {{"B2-like", subradiant_with(Irrep::B2, def_n, def_n)},
                                   {"A2-like", subradiant_with(Irrep::A2, def_n, def_n - 2)}});
            io::CsvBuilder csv({"branch", "ratio", "d_omega", "gamma", "amplification", "overlap"});
            for (const auto& b : branches) {
                const double base = b.at_parameter(1.0).decay;
                for (const auto& p : b.points) {
                    csv.cell(b.label).cell(p.parameter).cell(p.detuning).cell(p.decay)
                        .cell(p.decay / base).cell(p.overlap);
                    csv.end_row();
                }
            }
            writer.add("deform.csv", csv.str());
            json config{{"n", def_n}, {"period_x", def_period}, {"pol", def_pol}, {"ratios", ratios}};
            writer.finish("deform", config);
            return 0;
        }

        if (cmd_corner->parsed()) {
            const auto result = corner_asymptotics(ca_min, ca_max);
            io::CsvBuilder csv({"n", "q0", "corner_nn", "corner_antisym"});
            for (const auto& r : result.rows) {
                csv.cell(r.side_count).cell(r.q0).cell(r.corner_nn).cell(r.corner_antisym);
                csv.end_row();
            }
            writer.add("corner.csv", csv.str());
            writer.add_json("corner.json",
                            {{"power_nn", result.fit_nn.exponent},
                             {"power_antisym", result.fit_antisym.exponent},
                             {"rms_nn", result.fit_nn.rms_residual_decades},
                             {"rms_antisym", result.fit_antisym.rms_residual_decades}});
            writer.finish("corner-asymptotics", {{"n_min", ca_min}, {"n_max", ca_max}});
            std::cout << "powers: " << io::fmt(result.fit_nn.exponent) << ", "
                      << io::fmt(result.fit_antisym.exponent) << "\n";
            return 0;
        }

        throw ConfigInvalid("no subcommand executed");
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const subrad::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
