// qdot — equilibria, normal modes and quantized spectra of two identical
// charged particles in an axially symmetric 3D parabolic trap with an r^-M
// repulsion, under a perpendicular magnetic field.
//
// Exit codes: 0 success, 2 config/usage error, 3 domain error,
// 4 verification failure.

#include <clocale>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdot/config_io.hpp"
#include "qdot/errors.hpp"
#include "qdot/reports.hpp"
#include "qdot/units.hpp"

namespace {

struct ConfigFlags {
    std::string path;
    double m_star_ratio = 0.067;
    double epsilon_r = 12.0;
    double g_star = 0.3;
    double hw_rho_mev = 0.0;
    double hw_z_mev = 0.0;
    double M = 1.0;
    double beta = 0.0;
};

void add_config_options(CLI::App* cmd, ConfigFlags& cf, bool required) {
    auto* path = cmd->add_option("--config", cf.path, "key-value config file");
    cmd->add_option("--m-star-ratio", cf.m_star_ratio, "m*/m_e");
    cmd->add_option("--epsilon-r", cf.epsilon_r, "relative permittivity");
    cmd->add_option("--g-star", cf.g_star, "|g*|");
    auto* hwr = cmd->add_option("--hw-rho-mev", cf.hw_rho_mev, "hbar omega_rho [meV]");
    cmd->add_option("--hw-z-mev", cf.hw_z_mev, "hbar omega_z [meV]");
    cmd->add_option("--M", cf.M, "interaction exponent");
    cmd->add_option("--beta", cf.beta, "dimensionless interaction strength override");
    if (required) {
        // either a config file or inline trap frequencies
        hwr->excludes(path);
    }
}

qdot::PhysicalConfig resolve_config(const ConfigFlags& cf) {
    if (!cf.path.empty())
        return qdot::load_config(cf.path);
    if (cf.hw_rho_mev <= 0.0)
        throw qdot::config_error(0, "either --config or --hw-rho-mev is required");
    qdot::PhysicalConfig cfg;
    cfg.material = qdot::MaterialSpec{cf.m_star_ratio, cf.epsilon_r, cf.g_star};
    cfg.trap = qdot::TrapSpec{cf.hw_rho_mev,
                              cf.hw_z_mev > 0.0 ? cf.hw_z_mev : cf.hw_rho_mev, cf.M,
                              cf.beta > 0.0 ? std::optional<double>(cf.beta) : std::nullopt};
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"two-particle trap spectra and equilibria"};
    app.require_subcommand(1);

    // convert
    ConfigFlags conv_cf;
    double conv_g4 = 0.0, conv_map = 0.0;
    auto* conv = app.add_subcommand("convert", "print the dimensionless scale set as JSON");
    add_config_options(conv, conv_cf, true);
    conv->add_option("--g4-a", conv_g4, "apply the mass/field rescaling with parameter a");
    conv->add_option("--map-M", conv_map, "map the interaction exponent via G7 first");

    // surface
    double sf_u = 0.0, sf_v = 0.0, sf_p = 0.0, sf_M = 1.0, sf_vstar = 0.0;
    std::string sf_grid = "rho:0.05:2.5:120,z:-2:2:120";
    bool sf_fig2 = false;
    auto* surf = app.add_subcommand("surface", "CSV of the reduced potential on a grid");
    surf->add_option("--u", sf_u)->required();
    surf->add_option("--v", sf_v, "trap anisotropy (grid variable in --fig2 mode)");
    surf->add_option("--p", sf_p)->required();
    surf->add_option("--M", sf_M);
    surf->add_option("--grid", sf_grid, "rho:lo:hi:n,z:lo:hi:n");
    surf->add_flag("--fig2", sf_fig2,
                   "emit (v,z,E) at fixed rho = rho_S(v*), p = p_max(u,v*,M)");
    surf->add_option("--vstar", sf_vstar, "v* for the --fig2 section");

    // phase-diagram
    std::string pd_u = "0:10:101", pd_p = "0:5:101";
    double pd_M = 1.0;
    std::vector<double> pd_contours;
    auto* pd = app.add_subcommand("phase-diagram",
                                  "CSV of E_S over (u,p) plus v* contour table");
    pd->add_option("--u", pd_u, "lo:hi:n");
    pd->add_option("--p", pd_p, "lo:hi:n");
    pd->add_option("--M", pd_M);
    pd->add_option("--vstar-contours", pd_contours, "v* values for boundary contours")
        ->delimiter(',');

    // eadd
    ConfigFlags ea_cf;
    std::string ea_b = "0:12:0.05";
    std::vector<double> ea_map;
    auto* ea = app.add_subcommand("eadd", "ground-state additional energy versus field");
    add_config_options(ea, ea_cf, true);
    ea->add_option("--B", ea_b, "lo:hi:step [Tesla]");
    ea->add_option("--map-M", ea_map, "emit one block per exponent via the G7 map")
        ->delimiter(',');

    // spectrum
    ConfigFlags sp_cf;
    std::string sp_b = "0:12:0.05";
    int sp_mmax = 12;
    auto* sp = app.add_subcommand("spectrum", "per-m additional-energy branches versus field");
    add_config_options(sp, sp_cf, true);
    sp->add_option("--B", sp_b, "lo:hi:step [Tesla]");
    sp->add_option("--m-max", sp_mmax, "largest relative orbital quantum number");

    // vstar
    double vs_u = 0.0, vs_p = 0.0, vs_M = 1.0;
    std::string vs_method = "bisect";
    bool vs_compare = false;
    auto* vs = app.add_subcommand("vstar", "auxiliary v* of the symmetric family");
    vs->add_option("--u", vs_u)->required();
    vs->add_option("--p", vs_p)->required();
    vs->add_option("--M", vs_M);
    vs->add_option("--method", vs_method, "bisect|closed|series");
    vs->add_flag("--compare", vs_compare, "print every applicable method with deltas");

    // modes
    double md_u = 0.0, md_v = 0.0, md_p = 0.0, md_M = 1.0;
    auto* md = app.add_subcommand("modes", "normal modes and stability at (u,v,p,M)");
    md->add_option("--u", md_u)->required();
    md->add_option("--v", md_v)->required();
    md->add_option("--p", md_p)->required();
    md->add_option("--M", md_M);

    // series
    double se_M = 1.0;
    int se_terms = 8;
    std::vector<double> se_coeffs;
    auto* se = app.add_subcommand("series", "inverse-branch coefficient table");
    se->add_option("--M", se_M);
    se->add_option("--terms", se_terms);
    se->add_option("--coeffs", se_coeffs, "invert an explicit coefficient list instead")
        ->delimiter(',');

    // verify (hidden)
    std::uint64_t vf_seed = 20240915;
    int vf_samples = 200;
    auto* vf = app.add_subcommand("verify", "run the randomized oracle suite");
    vf->group(""); // hidden from help
    vf->add_option("--seed", vf_seed);
    vf->add_option("--samples", vf_samples);

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace qdot::reports;
        if (conv->parsed()) {
            std::cout << convert_json(resolve_config(conv_cf),
                                      conv_g4 > 0.0 ? std::optional<double>(conv_g4)
                                                    : std::nullopt,
                                      conv_map > 0.0 ? std::optional<double>(conv_map)
                                                     : std::nullopt);
        } else if (surf->parsed()) {
            if (sf_fig2) {
                if (sf_vstar <= 0.0)
                    throw qdot::config_error(0, "--fig2 requires --vstar");
                const SurfaceGrid g = parse_grid(sf_grid);
                // in the section the first grid axis runs over v
                std::cout << surface_section_csv(sf_u, sf_vstar, sf_M, g.rho, g.z);
            } else {
                if (sf_v <= 0.0)
                    throw qdot::config_error(0, "surface requires --v > 0");
                std::cout << surface_csv(sf_u, sf_v, sf_p, sf_M, parse_grid(sf_grid));
            }
        } else if (pd->parsed()) {
            std::cout << phase_diagram_csv(parse_range(pd_u), parse_range(pd_p), pd_M,
                                           pd_contours);
        } else if (ea->parsed()) {
            std::cout << eadd_csv(resolve_config(ea_cf), parse_step_range(ea_b), ea_map);
        } else if (sp->parsed()) {
            std::cout << spectrum_csv(resolve_config(sp_cf), parse_step_range(sp_b), sp_mmax);
        } else if (vs->parsed()) {
            std::cout << vstar_json(vs_p, vs_u, vs_M, vs_method, vs_compare);
        } else if (md->parsed()) {
            std::cout << modes_json(md_u, md_v, md_p, md_M);
        } else if (se->parsed()) {
            if (!se_coeffs.empty())
                std::cout << series_table_coeffs(se_coeffs);
            else
                std::cout << series_table(se_M, se_terms);
        } else if (vf->parsed()) {
            return run_verify(std::cout, vf_seed, vf_samples);
        }
    } catch (const qdot::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
