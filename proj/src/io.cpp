#include "hankel/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hankel::io {

using nlohmann::json;

namespace {

std::string axis_name(measures::Axis a) {
    return a == measures::Axis::SigmaHalfLine ? "sigma" : "Sigma";
}

measures::Axis axis_from_name(const std::string& s) {
    if (s == "sigma") return measures::Axis::SigmaHalfLine;
    if (s == "Sigma") return measures::Axis::SigmaLine;
    throw std::invalid_argument("measure literal: axis must be \"sigma\" or \"Sigma\"");
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json measure_to_json(const measures::Measure& m) {
    json j;
    if (const auto* a = std::get_if<measures::AtomicMeasure>(&m)) {
        j["axis"] = axis_name(a->axis());
        if (a->is_signed()) j["signed"] = true;
        json atoms = json::array();
        for (const auto& atom : a->atoms()) atoms.push_back({atom.position, atom.weight});
        j["atoms"] = atoms;
    } else {
        const auto& d = std::get<measures::DensityMeasure>(m);
        j["axis"] = axis_name(d.axis);
        j["grid"] = {{"start", d.start}, {"step", d.step}, {"n", d.values.size()}};
        j["values"] = d.values;
    }
    return j;
}

measures::Measure measure_from_json(const json& j) {
    const auto axis = axis_from_name(j.at("axis").get<std::string>());
    if (j.contains("atoms")) {
        std::vector<measures::Atom> atoms;
        for (const auto& item : j.at("atoms"))
            atoms.push_back({item.at(0).get<double>(), item.at(1).get<double>()});
        const bool is_signed = j.value("signed", false);
        return measures::AtomicMeasure(std::move(atoms), axis, is_signed);
    }
    if (j.contains("grid")) {
        measures::DensityMeasure d;
        d.axis = axis;
        d.start = j.at("grid").at("start").get<double>();
        d.step = j.at("grid").at("step").get<double>();
        d.values = j.at("values").get<std::vector<double>>();
        if (d.values.size() != j.at("grid").at("n").get<std::size_t>())
            throw std::invalid_argument("measure literal: grid n does not match values length");
        d.validate();
        return d;
    }
    throw std::invalid_argument("measure literal: expected \"atoms\" or \"grid\"");
}

measures::Measure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open measure file: " + path);
    json j;
    in >> j;
    return measure_from_json(j);
}

void write_ids_csv(const spectra::IdsCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "lambda,ids,scheme,M\n";
    const double m = curve.window_length / 2.0;
    for (std::size_t i = 0; i < curve.lambda.size(); ++i)
        out << format_double(curve.lambda[i]) << ',' << format_double(curve.value[i]) << ','
            << curve.scheme << ',' << format_double(m) << '\n';
}

void write_histogram_csv(const rkph::McIds& mc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "lambda,ids_mean,ids_stderr,replicas\n";
    for (std::size_t i = 0; i < mc.mean.lambda.size(); ++i)
        out << format_double(mc.mean.lambda[i]) << ',' << format_double(mc.mean.value[i]) << ','
            << format_double(mc.standard_error[i]) << ',' << mc.replicas << '\n';
}

void write_band_csv(const floquet::BandStructure& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "k,band_index,E,flat\n";
    for (std::size_t bi = 0; bi < b.bands.size(); ++bi)
        for (std::size_t j = 0; j < b.k_grid.size(); ++j)
            out << format_double(b.k_grid[j]) << ',' << bi << ','
                << format_double(b.bands[bi].values[j]) << ',' << (b.bands[bi].flat ? 1 : 0)
                << '\n';
}

json band_edges_json(const floquet::BandStructure& b) {
    json bands = json::array();
    for (const auto& band : b.bands)
        bands.push_back({{"min", band.edge_min},
                         {"max", band.edge_max},
                         {"flat", band.flat},
                         {"sign", band.sign}});
    return json{{"tau", b.tau}, {"bands", bands}};
}

} // namespace hankel::io
