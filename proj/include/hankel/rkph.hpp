#pragma once

#include "hankel/spectra.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hankel::rkph {

/// Single-site weight distribution with compact support on (0, inf).
struct DistributionSpec {
    enum class Kind { TwoPoint, Uniform, PointMass };

    Kind kind = Kind::PointMass;
    double a = 1.0, b = 1.0; // TwoPoint values / Uniform lo, hi
    double p = 0.5;          // TwoPoint: probability of a

    static DistributionSpec two_point(double a, double b, double p);
    static DistributionSpec uniform(double lo, double hi);
    static DistributionSpec point_mass(double value);

    double kappa_min() const;
    double kappa_max() const;
    std::optional<double> density_bound() const; // rho_max, absolutely continuous only
    std::string name() const;
    void validate() const;
};

struct RkphConfig {
    double tau = 2.0;
    int sites = 32; // window n in [-sites, sites]
    DistributionSpec dist;
    int replicas = 1;
    std::uint64_t seed = 0;
    std::vector<double> lambda_grid;
};

/// Deterministic i.i.d. draw for (seed, replica): per-replica stream seeds
/// come from a 64-bit mix, so runs reproduce for any worker count.
std::vector<double> sample_weights(const RkphConfig& cfg, int replica);

/// K^(1/2) Gamma K^(1/2) with Gamma[i][j] = 1/2 sech(tau (i-j)/2).
/// Positive definite for positive weights; nonzero spectrum equals that of
/// the windowed rank-one sum.
Eigen::MatrixXd window_matrix(const std::vector<double>& weights, double tau);

struct McIds {
    spectra::IdsCurve mean;
    std::vector<double> standard_error;
    double total_mass = 0.0; // (2N+1)/(2 tau N), exact
    int replicas = 0;
    std::vector<std::vector<double>> per_replica; // filled when keep_replicas
};

/// Monte-Carlo IDS: per-replica eigenvalue counting normalized by the
/// window length 2*tau*N, then a deterministic in-order average.
McIds mc_ids(const RkphConfig& cfg, bool keep_replicas = false);

struct SpectrumSupport {
    std::vector<std::pair<double, double>> intervals; // disjoint, ascending
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

/// Product set supp(P0) * [E_min, E_max], merged into disjoint intervals.
SpectrumSupport spectrum_support(const DistributionSpec& dist, double tau);

/// Least-squares slope of log(-log nu(edge - delta)) against log(delta)
/// over delta in [delta_lo, delta_hi]. Fails with fewer than 4 usable
/// points.
double lifshitz_slope(const spectra::IdsCurve& curve, double edge, double delta_lo,
                      double delta_hi);

/// max over the grid of lambda * density / (rho_max * kappa_max), with the
/// density from centered differences of the averaged curve.
double wegner_ratio(const spectra::IdsCurve& curve, const DistributionSpec& dist);

struct ParticipationStats {
    double mean_ipr = 0.0;
    std::vector<double> ipr;
};

/// Inverse participation ratios of the (unit) eigenvectors.
ParticipationStats participation_stats(const spectra::Spectrum& spec);

} // namespace hankel::rkph
