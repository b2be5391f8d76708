// pybind11 surface over the core library: special functions, measures,
// finite sections, IDS curves, band structures and the random ensemble.

#include "hankel/floquet.hpp"
#include "hankel/measures.hpp"
#include "hankel/operators.hpp"
#include "hankel/parallel.hpp"
#include "hankel/rkph.hpp"
#include "hankel/specfun.hpp"
#include "hankel/spectra.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hankel;

namespace {

measures::AtomicMeasure make_atomic(const std::vector<std::pair<double, double>>& atoms,
                                    const std::string& axis, bool is_signed) {
    std::vector<measures::Atom> a;
    a.reserve(atoms.size());
    for (const auto& [p, w] : atoms) a.push_back({p, w});
    const auto ax = axis == "sigma" ? measures::Axis::SigmaHalfLine : measures::Axis::SigmaLine;
    return measures::AtomicMeasure(std::move(a), ax, is_signed);
}

operators::KernelSpec spec_from_name(const std::string& name,
                                     const measures::AtomicMeasure* sigma) {
    if (name == "carleman") return operators::CarlemanKernel{};
    if (name == "measure") {
        if (!sigma) throw std::invalid_argument("measure spec needs an atomic measure");
        return operators::MeasureKernel{*sigma};
    }
    throw std::invalid_argument("unknown kernel spec: " + name);
}

py::dict curve_dict(const spectra::IdsCurve& c) {
    py::dict d;
    d["lambda"] = c.lambda;
    d["value"] = c.value;
    d["scheme"] = std::string(1, c.scheme);
    d["window_length"] = c.window_length;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical workbench for spectra and densities of states of Hankel integral operators";

    // --- special functions ---
    m.def("log_gamma", &specfun::log_gamma, py::arg("z"));
    m.def("gamma_abs2_half_line", &specfun::gamma_abs2_half_line, py::arg("u"));
    m.def("beta_half_line", &specfun::beta_half_line, py::arg("a"), py::arg("b"));
    m.def("lattice_sech_sum", &specfun::lattice_sech_sum, py::arg("tau"), py::arg("k"),
          py::arg("alternating") = false);
    m.def("elliptic_K", &specfun::elliptic_K, py::arg("k"));

    py::class_<specfun::EllipticParams>(m, "EllipticParams")
        .def_readonly("k", &specfun::EllipticParams::k)
        .def_readonly("k_prime", &specfun::EllipticParams::k_prime)
        .def_readonly("K", &specfun::EllipticParams::K)
        .def_readonly("K_prime", &specfun::EllipticParams::K_prime)
        .def_readonly("nome", &specfun::EllipticParams::nome);
    m.def("modulus_from_period", &specfun::modulus_from_period, py::arg("tau"));
    m.def("jacobi_dn", &specfun::jacobi_dn, py::arg("u"), py::arg("params"));
    m.def("jacobi_cn", &specfun::jacobi_cn, py::arg("u"), py::arg("params"));

    // --- measures ---
    py::class_<measures::AtomicMeasure>(m, "AtomicMeasure")
        .def(py::init(&make_atomic), py::arg("atoms"), py::arg("axis") = "Sigma",
             py::arg("is_signed") = false)
        .def_property_readonly("atoms",
                               [](const measures::AtomicMeasure& am) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& a : am.atoms())
                                       out.emplace_back(a.position, a.weight);
                                   return out;
                               })
        .def_property_readonly("is_signed", &measures::AtomicMeasure::is_signed)
        .def("__len__", &measures::AtomicMeasure::size);
    m.def("pushforward_sigma_to_Sigma",
          py::overload_cast<const measures::AtomicMeasure&>(&measures::pushforward_sigma_to_Sigma),
          py::arg("sigma"));
    m.def("carleson_constant", &measures::carleson_constant, py::arg("sigma"));
    m.def("local_bound_constant",
          py::overload_cast<const measures::AtomicMeasure&>(&measures::local_bound_constant),
          py::arg("Sigma"));
    m.def("support_density", &measures::support_density, py::arg("Sigma"), py::arg("half_width"));
    m.def("blaschke_kernel_test", [](const measures::AtomicMeasure& s) {
        const auto r = measures::blaschke_kernel_test(s);
        return py::make_tuple(r.sum, r.kernel_infinite);
    });

    // --- operators / sections ---
    m.def("beta_profile", &operators::beta_profile, py::arg("xi"));
    m.def("gram_overlap", &operators::gram_overlap, py::arg("a"), py::arg("b"));
    m.def(
        "hankel_kernel_xy",
        [](const std::string& spec, double x, double y, const measures::AtomicMeasure* sigma) {
            return operators::hankel_kernel_xy(spec_from_name(spec, sigma), x, y);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("sigma") = nullptr);
    m.def(
        "nystrom_section",
        [](const std::string& spec, double half_width, double spacing,
           const measures::AtomicMeasure* sigma) {
            return operators::nystrom_section(spec_from_name(spec, sigma), {half_width, spacing})
                .matrix;
        },
        py::arg("spec"), py::arg("half_width"), py::arg("spacing"), py::arg("sigma") = nullptr);
    m.def(
        "atom_section",
        [](const measures::AtomicMeasure& sigma, double half_width, double center) {
            return operators::atom_section(sigma, half_width, center).matrix;
        },
        py::arg("sigma"), py::arg("half_width"), py::arg("center") = 0.0);

    // --- spectra ---
    m.def(
        "eig_sym",
        [](const Eigen::MatrixXd& a, bool vectors) {
            const auto s = spectra::eig_sym(a, vectors);
            return py::make_tuple(s.eigenvalues,
                                  vectors ? py::cast(*s.vectors) : py::none().cast<py::object>(),
                                  s.residual);
        },
        py::arg("matrix"), py::arg("vectors") = false);
    m.def("carleman_ids", &spectra::carleman_ids, py::arg("lambda_"));
    m.def(
        "ids_from_section",
        [](const std::string& spec, const std::string& scheme, double half_width, double spacing,
           const std::vector<double>& grid, const measures::AtomicMeasure* sigma) {
            return curve_dict(spectra::ids_from_section(spec_from_name(spec, sigma), scheme.at(0),
                                                        half_width, spacing, grid));
        },
        py::arg("spec"), py::arg("scheme"), py::arg("half_width"), py::arg("spacing"),
        py::arg("lambda_grid"), py::arg("sigma") = nullptr);

    // --- floquet ---
    m.def("single_band_E0", &floquet::single_band_E0, py::arg("tau"), py::arg("k"));
    m.def("single_band_edges", [](double tau) {
        const auto e = floquet::single_band_edges(tau);
        return py::make_tuple(e.e_min, e.e_max);
    });
    m.def("flat_pair_estar", [](double tau) {
        const auto r = floquet::flat_pair_Estar(tau);
        py::dict d;
        d["e_star"] = r.e_star;
        d["d14_constant"] = r.d14_constant;
        d["max_rel_deviation"] = r.max_rel_deviation;
        return d;
    });
    m.def(
        "fiber_matrix",
        [](double tau, double k, int n_fib) {
            return floquet::fiber_matrix(floquet::single_band_data(tau, 2 * n_fib), k, n_fib);
        },
        py::arg("tau"), py::arg("k"), py::arg("n_fib") = 12,
        "single-band lattice fiber at quasimomentum k");
    m.def(
        "band_structure",
        [](const std::string& model, double tau, int k_count, int n_fib) {
            const auto data = model == "flat" ? floquet::flat_pair_data(tau, 2 * n_fib)
                                              : floquet::single_band_data(tau, 2 * n_fib);
            const auto bs = floquet::band_structure(data, k_count, n_fib);
            py::list bands;
            for (const auto& b : bs.bands) {
                py::dict d;
                d["values"] = b.values;
                d["flat"] = b.flat;
                d["edge_min"] = b.edge_min;
                d["edge_max"] = b.edge_max;
                d["sign"] = b.sign;
                bands.append(d);
            }
            py::dict out;
            out["k_grid"] = bs.k_grid;
            out["bands"] = bands;
            out["truncation_shift"] = bs.truncation_shift;
            return out;
        },
        py::arg("model"), py::arg("tau"), py::arg("k_count") = 64, py::arg("n_fib") = 12);

    // --- rkph ---
    py::class_<rkph::DistributionSpec>(m, "DistributionSpec")
        .def_static("two_point", &rkph::DistributionSpec::two_point, py::arg("a"), py::arg("b"),
                    py::arg("p"))
        .def_static("uniform", &rkph::DistributionSpec::uniform, py::arg("lo"), py::arg("hi"))
        .def_static("point_mass", &rkph::DistributionSpec::point_mass, py::arg("value"))
        .def_property_readonly("kappa_min", &rkph::DistributionSpec::kappa_min)
        .def_property_readonly("kappa_max", &rkph::DistributionSpec::kappa_max)
        .def("__repr__", &rkph::DistributionSpec::name);
    m.def(
        "sample_weights",
        [](double tau, int sites, const rkph::DistributionSpec& dist, std::uint64_t seed,
           int replica, int replicas) {
            rkph::RkphConfig cfg;
            cfg.tau = tau;
            cfg.sites = sites;
            cfg.dist = dist;
            cfg.seed = seed;
            cfg.replicas = replicas;
            return rkph::sample_weights(cfg, replica);
        },
        py::arg("tau"), py::arg("sites"), py::arg("dist"), py::arg("seed") = 0,
        py::arg("replica") = 0, py::arg("replicas") = 1);
    m.def("window_matrix", &rkph::window_matrix, py::arg("weights"), py::arg("tau"));
    m.def(
        "mc_ids",
        [](double tau, int sites, const rkph::DistributionSpec& dist, int replicas,
           std::uint64_t seed, const std::vector<double>& grid) {
            rkph::RkphConfig cfg;
            cfg.tau = tau;
            cfg.sites = sites;
            cfg.dist = dist;
            cfg.replicas = replicas;
            cfg.seed = seed;
            cfg.lambda_grid = grid;
            const auto mc = rkph::mc_ids(cfg);
            py::dict d = curve_dict(mc.mean);
            d["stderr"] = mc.standard_error;
            d["total_mass"] = mc.total_mass;
            return d;
        },
        py::arg("tau"), py::arg("sites"), py::arg("dist"), py::arg("replicas"), py::arg("seed"),
        py::arg("lambda_grid"));
    m.def("spectrum_support", [](const rkph::DistributionSpec& dist, double tau) {
        const auto s = rkph::spectrum_support(dist, tau);
        return py::make_tuple(s.intervals, s.sigma_min, s.sigma_max);
    });
    m.def(
        "participation_mean",
        [](const Eigen::MatrixXd& a) {
            return rkph::participation_stats(spectra::eig_sym(a, true)).mean_ipr;
        },
        py::arg("matrix"));

    m.def("set_workers", [](int n) { hankel::worker_cap() = n; }, py::arg("n"));
}
