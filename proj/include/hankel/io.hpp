#pragma once

#include "hankel/floquet.hpp"
#include "hankel/measures.hpp"
#include "hankel/rkph.hpp"
#include "hankel/spectra.hpp"

#include <json.hpp>

#include <string>

namespace hankel::io {

/// Measure literal: {"axis": "sigma"|"Sigma", "atoms": [[pos, w], ...]} or
/// {"axis": ..., "grid": {"start":, "step":, "n":}, "values": [...]};
/// optional "signed": true for atomic measures.
nlohmann::json measure_to_json(const measures::Measure& m);
measures::Measure measure_from_json(const nlohmann::json& j);
measures::Measure load_measure(const std::string& path);

std::string format_double(double v); // 17 significant digits

/// CSV "lambda,ids,scheme,M"
void write_ids_csv(const spectra::IdsCurve& curve, const std::string& path);

/// CSV "lambda,ids_mean,ids_stderr,replicas"
void write_histogram_csv(const rkph::McIds& mc, const std::string& path);

/// CSV "k,band_index,E,flat"
void write_band_csv(const floquet::BandStructure& b, const std::string& path);

/// {tau, bands: [{min, max, flat, sign}]}
nlohmann::json band_edges_json(const floquet::BandStructure& b);

} // namespace hankel::io
