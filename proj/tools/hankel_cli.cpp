// Command-line front end: every run is fully described by its flags, all
// numeric output is written with 17 significant digits, and results are
// wrapped in a JSON envelope with built-in checks.
//
// Exit codes: 0 success, 1 usage/runtime error, 2 a built-in check failed.

#include "hankel/floquet.hpp"
#include "hankel/io.hpp"
#include "hankel/measures.hpp"
#include "hankel/operators.hpp"
#include "hankel/parallel.hpp"
#include "hankel/rkph.hpp"
#include "hankel/specfun.hpp"
#include "hankel/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;
using namespace hankel;

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;

struct Envelope {
    json config;
    json outputs = json::object();
    json checks = json::array();
    bool all_pass = true;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void check(const std::string& name, double value, double tol, bool pass) {
        checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
    void note(const std::string& key, const json& v) { outputs[key] = v; }

    int finish(const std::string& command) const {
        const double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        json env{{"command", command}, {"version", kVersion}, {"config", config},
                 {"wall_ms", wall_ms}, {"outputs", outputs},  {"checks", checks},
                 {"pass", all_pass}};
        std::cout << env.dump(2) << std::endl;
        return all_pass ? 0 : 2;
    }
};

rkph::DistributionSpec parse_dist(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            args.push_back(std::stod(rest.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (kind == "twopoint" && args.size() == 3)
        return rkph::DistributionSpec::two_point(args[0], args[1], args[2]);
    if (kind == "uniform" && args.size() == 2)
        return rkph::DistributionSpec::uniform(args[0], args[1]);
    if (kind == "point" && args.size() == 1)
        return rkph::DistributionSpec::point_mass(args[0]);
    throw CLI::ValidationError(
        "--dist expects twopoint:a,b,p | uniform:lo,hi | point:v, got '" + text + "'");
}

json dist_json(const rkph::DistributionSpec& d) {
    return {{"name", d.name()}, {"kappa_min", d.kappa_min()}, {"kappa_max", d.kappa_max()}};
}

measures::AtomicMeasure lattice_measure(double tau, double reach) {
    std::vector<measures::Atom> atoms;
    const auto range = static_cast<long>(std::ceil(reach / tau)) + 1;
    for (long n = -range; n <= range; ++n)
        atoms.push_back({tau * static_cast<double>(n), 1.0});
    return measures::AtomicMeasure(std::move(atoms), measures::Axis::SigmaLine);
}

measures::AtomicMeasure alternating_measure(double tau, double reach) {
    std::vector<measures::Atom> atoms;
    const auto range = static_cast<long>(std::ceil(reach / tau)) + 1;
    for (long n = -range; n <= range; ++n) {
        atoms.push_back({tau * static_cast<double>(n), 1.0});
        atoms.push_back({tau * (static_cast<double>(n) + 0.5), -1.0});
    }
    return measures::AtomicMeasure(std::move(atoms), measures::Axis::SigmaLine, true);
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

int cmd_carleman(double m, double dx, const std::string& out) {
    Envelope env;
    env.config = {{"M", m}, {"dx", dx}, {"out", out}};
    const operators::KernelSpec spec = operators::CarlemanKernel{};
    const auto curve =
        spectra::ids_from_section(spec, 'a', m, dx, spectra::default_lambda_grid(1.0));
    io::write_ids_csv(curve, out);
    double sup = 0.0;
    for (std::size_t i = 0; i < curve.lambda.size(); ++i) {
        if (curve.lambda[i] < 0.5 || curve.lambda[i] > 2.8) continue;
        sup = std::max(sup, std::abs(curve.value[i] - spectra::carleman_ids(curve.lambda[i])));
    }
    env.note("csv", out);
    env.note("sup_distance_to_closed_form", sup);
    if (m >= 80.0)
        env.check("carleman closed-form distance on [0.5, 2.8]", sup, 0.01, sup <= 0.01);
    return env.finish("carleman");
}

int cmd_flatband(double tau) {
    Envelope env;
    env.config = {{"tau", tau}};
    const auto r = floquet::flat_pair_Estar(tau);
    env.note("e_star_flat_level", r.e_star);
    env.note("d14_series_constant", r.d14_constant);
    env.note("max_rel_deviation_over_k", r.max_rel_deviation);
    env.note("modulus", r.params.k);
    env.check("flat-band constancy over k", r.max_rel_deviation, 1e-10,
              r.max_rel_deviation <= 1e-10);
    return env.finish("flatband");
}

int cmd_bands(const std::string& model, double tau, int kcount, int nfib, const std::string& out,
              const std::string& edges_path) {
    Envelope env;
    env.config = {{"model", model}, {"tau", tau}, {"kcount", kcount}, {"nfib", nfib},
                  {"out", out},     {"edges", edges_path}};
    const floquet::FourierData data = (model == "flat")
                                          ? floquet::flat_pair_data(tau, 2 * nfib)
                                          : floquet::single_band_data(tau, 2 * nfib);
    const auto bs = floquet::band_structure(data, kcount, nfib);
    io::write_band_csv(bs, out);
    if (!edges_path.empty()) {
        std::ofstream f(edges_path);
        f << io::band_edges_json(bs).dump(2) << '\n';
    }
    env.note("csv", out);
    env.note("bands", static_cast<int>(bs.bands.size()));
    env.note("truncation_shift", bs.truncation_shift);
    env.note("smoothness_weight", data.smoothness_weight());
    if (!bs.notes.empty()) env.note("notes", bs.notes);
    env.check("fiber truncation shift", bs.truncation_shift, 1e-10, bs.truncation_shift < 1e-10);
    return env.finish("bands");
}

int cmd_ids(const std::string& model, char scheme, double m, double dx, const std::string& out) {
    Envelope env;
    env.config = {{"model", model}, {"scheme", std::string(1, scheme)}, {"M", m}, {"dx", dx},
                  {"out", out}};
    operators::KernelSpec spec = operators::CarlemanKernel{};
    double c_h = 1.0;
    if (model == "single") {
        spec = operators::MeasureKernel{lattice_measure(2.0 * kPi, m + 60.0)};
        c_h = operators::kernel_bound(spec);
    } else if (model == "flat") {
        spec = operators::MeasureKernel{alternating_measure(2.0 * kPi, m + 60.0)};
    } else if (model != "carleman") {
        throw CLI::ValidationError("--model must be carleman|single|flat");
    }
    const auto curve =
        spectra::ids_from_section(spec, scheme, m, dx, spectra::default_lambda_grid(c_h));
    io::write_ids_csv(curve, out);
    env.note("csv", out);
    env.note("value_at_grid_bottom", curve.value.front());
    return env.finish("ids");
}

int cmd_szego(const std::string& model, double m, double dx, double lo, double hi) {
    Envelope env;
    env.config = {{"model", model}, {"M", m}, {"dx", dx}, {"phi_lo", lo}, {"phi_hi", hi}};
    operators::KernelSpec spec = operators::CarlemanKernel{};
    if (model == "single") spec = operators::MeasureKernel{lattice_measure(2.0, m + 100.0)};
    const spectra::SmoothBump phi{lo, hi};
    const auto t = spectra::szego_triple(spec, m, dx, phi);
    const double d = std::max({std::abs(t.restricted_kernel - t.projected),
                               std::abs(t.restricted_kernel - t.restricted_measure),
                               std::abs(t.projected - t.restricted_measure)});
    env.note("trace_restricted_kernel", t.restricted_kernel);
    env.note("trace_projected", t.projected);
    env.note("trace_restricted_measure", t.restricted_measure);
    env.note("max_pairwise_difference", d);
    return env.finish("szego");
}

int cmd_rkph(double tau, int sites, int replicas, const std::string& dist_text,
             std::uint64_t seed, int grid_points, const std::string& out,
             const std::string& manifest_path) {
    Envelope env;
    const auto dist = parse_dist(dist_text);
    env.config = {{"tau", tau},   {"N", sites},          {"R", replicas}, {"dist", dist_text},
                  {"seed", seed}, {"grid", grid_points}, {"out", out}};
    const auto support = rkph::spectrum_support(dist, tau);
    rkph::RkphConfig cfg;
    cfg.tau = tau;
    cfg.sites = sites;
    cfg.replicas = replicas;
    cfg.dist = dist;
    cfg.seed = seed;
    const double pad = 0.05 * (support.sigma_max - support.sigma_min);
    cfg.lambda_grid = uniform_grid(std::max(support.sigma_min - pad, 1e-6),
                                   support.sigma_max + pad, grid_points);
    const auto mc = rkph::mc_ids(cfg);
    io::write_histogram_csv(mc, out);
    if (!manifest_path.empty()) {
        const json manifest{{"tau", tau},
                            {"N", sites},
                            {"dist", dist_json(dist)},
                            {"R", replicas},
                            {"seed", seed},
                            {"kappa_min", dist.kappa_min()},
                            {"kappa_max", dist.kappa_max()},
                            {"sigma_min", support.sigma_min},
                            {"sigma_max", support.sigma_max}};
        std::ofstream f(manifest_path);
        f << manifest.dump(2) << '\n';
    }
    env.note("csv", out);
    env.note("total_mass", mc.total_mass);
    json intervals = json::array();
    for (const auto& iv : support.intervals) intervals.push_back({iv.first, iv.second});
    env.note("spectrum_support", intervals);
    const double expected_mass =
        static_cast<double>(2 * sites + 1) / (2.0 * tau * static_cast<double>(sites));
    env.check("total mass (2N+1)/(2 tau N)", mc.total_mass, 0.0, mc.total_mass == expected_mass);
    return env.finish("rkph");
}

int cmd_lifshitz(double tau, int sites, int replicas, const std::string& dist_text,
                 std::uint64_t seed) {
    Envelope env;
    const auto dist = parse_dist(dist_text);
    env.config = {{"tau", tau}, {"N", sites}, {"R", replicas}, {"dist", dist_text}, {"seed", seed}};
    const auto support = rkph::spectrum_support(dist, tau);
    const double width = support.sigma_max - support.sigma_min;
    rkph::RkphConfig cfg;
    cfg.tau = tau;
    cfg.sites = sites;
    cfg.replicas = replicas;
    cfg.dist = dist;
    cfg.seed = seed;
    for (int i = 0; i < 160; ++i)
        cfg.lambda_grid.push_back(support.sigma_max -
                                  0.5 * width * std::pow(10.0, -3.5 * (159 - i) / 159.0));
    const auto mc = rkph::mc_ids(cfg);
    const double slope =
        rkph::lifshitz_slope(mc.mean, support.sigma_max, 0.005 * width, 0.1 * width);
    env.note("slope_top_edge", slope);
    env.note("fit_window", json::array({0.005 * width, 0.1 * width}));
    env.check("lifshitz slope bracket [-0.9, -0.25]", slope, 0.0,
              slope >= -0.9 && slope <= -0.25);
    return env.finish("lifshitz");
}

int cmd_wegner(double tau, int sites, int replicas, const std::string& dist_text,
               std::uint64_t seed) {
    Envelope env;
    const auto dist = parse_dist(dist_text);
    env.config = {{"tau", tau}, {"N", sites}, {"R", replicas}, {"dist", dist_text}, {"seed", seed}};
    const auto support = rkph::spectrum_support(dist, tau);
    rkph::RkphConfig cfg;
    cfg.tau = tau;
    cfg.sites = sites;
    cfg.replicas = replicas;
    cfg.dist = dist;
    cfg.seed = seed;
    const double pad = 0.05 * (support.sigma_max - support.sigma_min);
    cfg.lambda_grid =
        uniform_grid(std::max(support.sigma_min - pad, 1e-6), support.sigma_max + pad, 80);
    const auto mc = rkph::mc_ids(cfg);
    const double ratio = rkph::wegner_ratio(mc.mean, dist);
    env.note("wegner_ratio", ratio);
    env.check("wegner ratio <= 1.1", ratio, 1.1, ratio <= 1.1);
    return env.finish("wegner");
}

int cmd_localize(double tau_wide, double tau_narrow, int sites, int replicas,
                 const std::string& dist_text, std::uint64_t seed) {
    Envelope env;
    const auto dist = parse_dist(dist_text);
    env.config = {{"tau_wide", tau_wide}, {"tau_narrow", tau_narrow}, {"N", sites},
                  {"R", replicas},        {"dist", dist_text},        {"seed", seed}};
    rkph::RkphConfig cfg;
    cfg.sites = sites;
    cfg.replicas = replicas;
    cfg.dist = dist;
    cfg.seed = seed;
    double wide = 0.0, narrow = 0.0;
    for (int rep = 0; rep < replicas; ++rep) {
        const auto kappa = rkph::sample_weights(cfg, rep);
        wide += rkph::participation_stats(
                    spectra::eig_sym(rkph::window_matrix(kappa, tau_wide), true))
                    .mean_ipr;
        narrow += rkph::participation_stats(
                      spectra::eig_sym(rkph::window_matrix(kappa, tau_narrow), true))
                      .mean_ipr;
    }
    wide /= replicas;
    narrow /= replicas;
    env.note("mean_ipr_wide", wide);
    env.note("mean_ipr_narrow", narrow);
    env.note("ratio", wide / narrow);
    env.check("IPR ratio >= 3", wide / narrow, 3.0, wide >= 3.0 * narrow);
    return env.finish("localize");
}

int cmd_carleson(const std::string& measure_path) {
    Envelope env;
    env.config = {{"measure", measure_path}};
    const auto m = io::load_measure(measure_path);
    const auto* atoms = std::get_if<measures::AtomicMeasure>(&m);
    if (!atoms) throw CLI::ValidationError("carleson expects an atomic sigma measure");
    const double carleson = measures::carleson_constant(*atoms);
    const auto Sigma = measures::pushforward_sigma_to_Sigma(*atoms);
    const double local = measures::local_bound_constant(Sigma);
    env.note("carleson_constant", carleson);
    env.note("local_bound_constant", local);
    const double e = std::exp(1.0);
    env.check("local <= e * carleson", local, e * carleson, local <= e * carleson * (1 + 1e-12));
    env.check("carleson <= local/(1-1/e)", carleson, local / (1.0 - 1.0 / e),
              carleson <= local / (1.0 - 1.0 / e) * (1 + 1e-12));
    return env.finish("carleson");
}

int cmd_selftest() {
    Envelope env;
    env.config = json::object();
    auto approx = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
    env.check("Gamma(1/2)^2 = pi", specfun::gamma_abs2_half_line(0.0), 1e-14,
              approx(specfun::gamma_abs2_half_line(0.0), kPi, 1e-14));
    env.check("K(0) = pi/2", specfun::elliptic_K(0.0), 1e-15,
              approx(specfun::elliptic_K(0.0), kPi / 2.0, 1e-15));
    const auto sym = specfun::modulus_from_period(2.0 * kPi);
    env.check("dn(0) = 1", specfun::jacobi_dn(0.0, sym), 1e-13,
              approx(specfun::jacobi_dn(0.0, sym), 1.0, 1e-13));
    env.check("beta(0) = 1/e", operators::beta_profile(0.0), 1e-15,
              approx(operators::beta_profile(0.0), std::exp(-1.0), 1e-15));
    env.check("gram_overlap(a,a) = 1/2", operators::gram_overlap(1.3, 1.3), 1e-15,
              approx(operators::gram_overlap(1.3, 1.3), 0.5, 1e-15));
    const auto proj = operators::atom_section(
        measures::AtomicMeasure({{0.0, 2.0}}, measures::Axis::SigmaLine), 5.0);
    env.check("projection section eigenvalue 1", proj.matrix(0, 0), 1e-15,
              approx(proj.matrix(0, 0), 1.0, 1e-15));
    env.check("carleman_ids(pi) = 0", spectra::carleman_ids(kPi), 0.0,
              spectra::carleman_ids(kPi) == 0.0);
    const auto one = rkph::window_matrix({2.0}, 2.0);
    env.check("single-site window eigenvalue kappa/2", one(0, 0), 1e-15,
              approx(one(0, 0), 1.0, 1e-15));
    return env.finish("selftest");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hankel_lab: spectra, band structures, IDS curves and random ensembles of "
                 "Hankel integral operators"};
    app.require_subcommand(1);

    int workers = 0;
    app.add_option("--workers", workers, "cap worker threads (0 = env/auto)")
        ->capture_default_str();

    double m = 40.0, dx = 0.05, tau = 2.0 * kPi;
    std::string out = "out.csv", aux_path, model = "carleman", dist_text = "twopoint:1,2,0.5";
    std::string measure_path, scheme = "a";
    int kcount = 64, nfib = 12, sites = 256, replicas = 50, grid_points = 120;
    std::uint64_t seed = 0;
    double philo = 1.0, phihi = 3.0, tau_wide = 12.0, tau_narrow = 1.0;

    auto* carleman = app.add_subcommand("carleman", "Carleman IDS vs the closed form");
    carleman->add_option("--M", m)->capture_default_str();
    carleman->add_option("--dx", dx)->capture_default_str();
    carleman->add_option("--out", out)->capture_default_str();
    carleman->add_option("--seed", seed)->capture_default_str();

    auto* bands = app.add_subcommand("bands", "Floquet-Bloch band structure");
    bands->add_option("--model", model, "single|flat")->capture_default_str();
    bands->add_option("--tau", tau)->capture_default_str();
    bands->add_option("--kcount", kcount)->capture_default_str();
    bands->add_option("--nfib", nfib)->capture_default_str();
    bands->add_option("--out", out)->capture_default_str();
    bands->add_option("--edges", aux_path, "edges JSON path");
    bands->add_option("--seed", seed)->capture_default_str();

    auto* flatband = app.add_subcommand("flatband", "flat-band level and constancy check");
    flatband->add_option("--tau", tau)->capture_default_str();
    flatband->add_option("--seed", seed)->capture_default_str();

    auto* ids = app.add_subcommand("ids", "eigenvalue-counting IDS of a finite section");
    ids->add_option("--model", model, "carleman|single|flat")->capture_default_str();
    ids->add_option("--scheme", scheme, "a|b")->capture_default_str();
    ids->add_option("--M", m)->capture_default_str();
    ids->add_option("--dx", dx)->capture_default_str();
    ids->add_option("--out", out)->capture_default_str();
    ids->add_option("--seed", seed)->capture_default_str();

    auto* szego = app.add_subcommand("szego", "three-way normalized trace comparison");
    szego->add_option("--model", model, "carleman|single")->capture_default_str();
    szego->add_option("--M", m)->capture_default_str();
    szego->add_option("--dx", dx)->capture_default_str();
    szego->add_option("--phi-lo", philo)->capture_default_str();
    szego->add_option("--phi-hi", phihi)->capture_default_str();
    szego->add_option("--seed", seed)->capture_default_str();

    auto* rkph_cmd = app.add_subcommand("rkph", "Monte-Carlo IDS of the random ensemble");
    rkph_cmd->add_option("--tau", tau)->capture_default_str();
    rkph_cmd->add_option("--N", sites)->capture_default_str();
    rkph_cmd->add_option("--R", replicas)->capture_default_str();
    rkph_cmd->add_option("--dist", dist_text)->capture_default_str();
    rkph_cmd->add_option("--seed", seed)->capture_default_str();
    rkph_cmd->add_option("--grid", grid_points)->capture_default_str();
    rkph_cmd->add_option("--out", out)->capture_default_str();
    rkph_cmd->add_option("--manifest", aux_path, "run manifest JSON path");

    auto* lifshitz = app.add_subcommand("lifshitz", "top-edge tail slope");
    lifshitz->add_option("--tau", tau)->capture_default_str();
    lifshitz->add_option("--N", sites)->capture_default_str();
    lifshitz->add_option("--R", replicas)->capture_default_str();
    lifshitz->add_option("--dist", dist_text)->capture_default_str();
    lifshitz->add_option("--seed", seed)->capture_default_str();

    auto* wegner = app.add_subcommand("wegner", "IDS density bound check");
    wegner->add_option("--tau", tau)->capture_default_str();
    wegner->add_option("--N", sites)->capture_default_str();
    wegner->add_option("--R", replicas)->capture_default_str();
    wegner->add_option("--dist", dist_text)->capture_default_str();
    wegner->add_option("--seed", seed)->capture_default_str();

    auto* localize = app.add_subcommand("localize", "paired-seed IPR comparison");
    localize->add_option("--tau-wide", tau_wide)->capture_default_str();
    localize->add_option("--tau-narrow", tau_narrow)->capture_default_str();
    localize->add_option("--N", sites)->capture_default_str();
    localize->add_option("--R", replicas)->capture_default_str();
    localize->add_option("--dist", dist_text)->capture_default_str();
    localize->add_option("--seed", seed)->capture_default_str();

    auto* carleson = app.add_subcommand("carleson", "Carleson / local-bound equivalence");
    carleson->add_option("--measure", measure_path, "measure literal JSON")->required();
    carleson->add_option("--seed", seed)->capture_default_str();

    auto* selftest = app.add_subcommand("selftest", "quick identity checks");
    selftest->add_option("--seed", seed)->capture_default_str();

    for (auto* sub : {carleman, bands, flatband, ids, szego, rkph_cmd, lifshitz, wegner, localize,
                      carleson, selftest})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage errors exit 1 regardless of CLI11's own codes
    }
    if (workers > 0) hankel::worker_cap() = workers;

    try {
        if (app.got_subcommand(carleman)) return cmd_carleman(m, dx, out);
        if (app.got_subcommand(bands))
            return cmd_bands(model == "carleman" ? "single" : model, tau, kcount, nfib, out,
                             aux_path);
        if (app.got_subcommand(flatband)) return cmd_flatband(tau);
        if (app.got_subcommand(ids)) return cmd_ids(model, scheme.empty() ? 'a' : scheme[0], m, dx, out);
        if (app.got_subcommand(szego)) return cmd_szego(model, m, dx, philo, phihi);
        if (app.got_subcommand(rkph_cmd))
            return cmd_rkph(tau, sites, replicas, dist_text, seed, grid_points, out, aux_path);
        if (app.got_subcommand(lifshitz)) return cmd_lifshitz(tau, sites, replicas, dist_text, seed);
        if (app.got_subcommand(wegner)) return cmd_wegner(tau, sites, replicas, dist_text, seed);
        if (app.got_subcommand(localize))
            return cmd_localize(tau_wide, tau_narrow, sites, replicas, dist_text, seed);
        if (app.got_subcommand(carleson)) return cmd_carleson(measure_path);
        if (app.got_subcommand(selftest)) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
