#include "hankel/rkph.hpp"

#include "hankel/floquet.hpp"
#include "hankel/parallel.hpp"
#include "hankel/rng.hpp"
#include "hankel/specfun.hpp"

#include <Eigen/Eigenvalues>

#ifdef EIGEN_USE_LAPACKE
#include <lapacke.h>
#endif

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel::rkph {

DistributionSpec DistributionSpec::two_point(double a, double b, double p) {
    DistributionSpec d;
    d.kind = Kind::TwoPoint;
    d.a = std::min(a, b);
    d.b = std::max(a, b);
    d.p = (a <= b) ? p : 1.0 - p;
    d.validate();
    return d;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
    DistributionSpec d;
    d.kind = Kind::Uniform;
    d.a = lo;
    d.b = hi;
    d.validate();
    return d;
}

DistributionSpec DistributionSpec::point_mass(double value) {
    DistributionSpec d;
    d.kind = Kind::PointMass;
    d.a = d.b = value;
    d.validate();
    return d;
}

void DistributionSpec::validate() const {
    if (!(kappa_min() > 0.0) || !(kappa_max() >= kappa_min()) || !std::isfinite(kappa_max()))
        throw std::invalid_argument("DistributionSpec: support must satisfy 0 < kappa_min <= kappa_max < inf");
    if (kind == Kind::TwoPoint && !(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("DistributionSpec: probability outside [0,1]");
    if (kind == Kind::Uniform && !(b > a))
        throw std::invalid_argument("DistributionSpec: uniform needs lo < hi");
}

double DistributionSpec::kappa_min() const { return a; }
double DistributionSpec::kappa_max() const { return b; }

std::optional<double> DistributionSpec::density_bound() const {
    if (kind == Kind::Uniform) return 1.0 / (b - a);
    return std::nullopt;
}

std::string DistributionSpec::name() const {
    switch (kind) {
        case Kind::TwoPoint:
            return "twopoint(" + std::to_string(a) + "," + std::to_string(b) + ";p=" + std::to_string(p) + ")";
        case Kind::Uniform:
            return "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
        default:
            return "point(" + std::to_string(a) + ")";
    }
}

std::vector<double> sample_weights(const RkphConfig& cfg, int replica) {
    if (replica < 0 || replica >= cfg.replicas)
        throw std::invalid_argument("sample_weights: replica index out of range");
    cfg.dist.validate();
    SplitMix64 rng(SplitMix64::mix(cfg.seed, static_cast<std::uint64_t>(replica)));
    const std::size_t n = static_cast<std::size_t>(2 * cfg.sites + 1);
    std::vector<double> w(n);
    for (double& v : w) {
        const double u = rng.next_double();
        switch (cfg.dist.kind) {
            case DistributionSpec::Kind::TwoPoint: v = (u < cfg.dist.p) ? cfg.dist.a : cfg.dist.b; break;
            case DistributionSpec::Kind::Uniform: v = cfg.dist.a + u * (cfg.dist.b - cfg.dist.a); break;
            default: v = cfg.dist.a; break;
        }
    }
    return w;
}

Eigen::MatrixXd window_matrix(const std::vector<double>& weights, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("window_matrix: tau must be positive");
    const auto n = static_cast<Eigen::Index>(weights.size());
    if (n == 0) return {};
    std::vector<double> sq(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("window_matrix: all weights must be positive");
        sq[i] = std::sqrt(weights[i]);
    }
    std::vector<double> toeplitz(weights.size());
    for (std::size_t d = 0; d < weights.size(); ++d)
        toeplitz[d] = 0.5 * specfun::sech(0.5 * tau * static_cast<double>(d));
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = sq[static_cast<std::size_t>(i)] * sq[static_cast<std::size_t>(j)] *
                             toeplitz[static_cast<std::size_t>(j - i)];
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

namespace {

/// All eigenvalues of the sech-Gram window, ascending. The Gram entries
/// are below double roundoff past tau*|i-j| > 83, so the matrix is banded
/// in exact arithmetic terms; a banded solver cuts the per-replica cost by
/// an order of magnitude at rKPH sizes.
std::vector<double> window_eigenvalues(const std::vector<double>& kappa, double tau) {
    const auto n = static_cast<int>(kappa.size());
#ifdef EIGEN_USE_LAPACKE
    int kd = 0;
    while (kd + 1 < n && specfun::sech(0.5 * tau * (kd + 1)) > 1e-18) ++kd;
    if (kd + 1 < n) {
        std::vector<double> sq(kappa.size());
        for (std::size_t i = 0; i < kappa.size(); ++i) {
            if (!(kappa[i] > 0.0))
                throw std::invalid_argument("window eigensolve: all weights must be positive");
            sq[i] = std::sqrt(kappa[i]);
        }
        std::vector<double> ab(static_cast<std::size_t>(kd + 1) * static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < n; ++j)
            for (int d = 0; d <= kd && j + d < n; ++d)
                ab[static_cast<std::size_t>(j) * static_cast<std::size_t>(kd + 1) +
                   static_cast<std::size_t>(d)] =
                    sq[static_cast<std::size_t>(j + d)] * sq[static_cast<std::size_t>(j)] * 0.5 *
                    specfun::sech(0.5 * tau * d);
        std::vector<double> w(static_cast<std::size_t>(n));
        const int info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), kd + 1,
                                       w.data(), nullptr, n);
        if (info != 0)
            throw std::runtime_error("window eigensolve: dsbev failed, info=" + std::to_string(info));
        return w;
    }
#endif
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(window_matrix(kappa, tau),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("window eigensolve failed");
    std::vector<double> w(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i)
        w[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return w;
}

} // namespace

McIds mc_ids(const RkphConfig& cfg, bool keep_replicas) {
    if (cfg.sites < 1 || cfg.replicas < 1)
        throw std::invalid_argument("mc_ids: need sites >= 1 and replicas >= 1");
    if (cfg.lambda_grid.empty())
        throw std::invalid_argument("mc_ids: empty lambda grid");
    const double window_length = 2.0 * cfg.tau * static_cast<double>(cfg.sites);
    const std::size_t g = cfg.lambda_grid.size();
    const auto r = static_cast<std::size_t>(cfg.replicas);

    std::vector<std::vector<double>> curves(r);
    parallel_for(r, [&](std::size_t rep) {
        const auto eigs = window_eigenvalues(sample_weights(cfg, static_cast<int>(rep)), cfg.tau);
        std::vector<double> curve(g);
        for (std::size_t i = 0; i < g; ++i) {
            double c = 0.0;
            for (double e : eigs)
                if (e > cfg.lambda_grid[i]) c += 1.0;
            curve[i] = c / window_length;
        }
        curves[rep] = std::move(curve);
    });

    McIds out;
    out.replicas = cfg.replicas;
    out.total_mass = static_cast<double>(2 * cfg.sites + 1) / window_length;
    out.mean.lambda = cfg.lambda_grid;
    out.mean.scheme = 'b';
    out.mean.model = "rkph " + cfg.dist.name();
    out.mean.window_length = window_length;
    out.mean.value.assign(g, 0.0);
    out.standard_error.assign(g, 0.0);
    // deterministic reduction in replica order
    for (std::size_t rep = 0; rep < r; ++rep)
        for (std::size_t i = 0; i < g; ++i) out.mean.value[i] += curves[rep][i];
    for (std::size_t i = 0; i < g; ++i) out.mean.value[i] /= static_cast<double>(r);
    if (r > 1) {
        for (std::size_t rep = 0; rep < r; ++rep)
            for (std::size_t i = 0; i < g; ++i) {
                const double d = curves[rep][i] - out.mean.value[i];
                out.standard_error[i] += d * d;
            }
        for (std::size_t i = 0; i < g; ++i)
            out.standard_error[i] =
                std::sqrt(out.standard_error[i] / (static_cast<double>(r) * (static_cast<double>(r) - 1.0)));
    }
    if (keep_replicas) out.per_replica = std::move(curves);
    return out;
}

SpectrumSupport spectrum_support(const DistributionSpec& dist, double tau) {
    dist.validate();
    const auto edges = floquet::single_band_edges(tau);
    const double e_min = edges.e_min;
    const double e_max = edges.e_max;
    std::vector<std::pair<double, double>> scaled;
    switch (dist.kind) {
        case DistributionSpec::Kind::TwoPoint:
            scaled = {{dist.a * e_min, dist.a * e_max}, {dist.b * e_min, dist.b * e_max}};
            break;
        case DistributionSpec::Kind::Uniform:
            // continuous support: the scaled intervals sweep out one interval
            scaled = {{dist.a * e_min, dist.b * e_max}};
            break;
        default:
            scaled = {{dist.a * e_min, dist.a * e_max}};
            break;
    }
    std::sort(scaled.begin(), scaled.end());
    SpectrumSupport out;
    for (const auto& iv : scaled) {
        if (!out.intervals.empty() && iv.first <= out.intervals.back().second)
            out.intervals.back().second = std::max(out.intervals.back().second, iv.second);
        else
            out.intervals.push_back(iv);
    }
    out.sigma_min = dist.kappa_min() * e_min;
    out.sigma_max = dist.kappa_max() * e_max;
    return out;
}

double lifshitz_slope(const spectra::IdsCurve& curve, double edge, double delta_lo,
                      double delta_hi) {
    if (!(delta_lo > 0.0) || !(delta_hi > delta_lo))
        throw std::invalid_argument("lifshitz_slope: need 0 < delta_lo < delta_hi");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.lambda.size(); ++i) {
        const double delta = edge - curve.lambda[i];
        if (delta < delta_lo || delta > delta_hi) continue;
        const double v = curve.value[i];
        if (!(v > 0.0)) continue;
        const double inner = -std::log(v);
        if (!(inner > 0.0)) continue;
        xs.push_back(std::log(delta));
        ys.push_back(std::log(inner));
    }
    if (xs.size() < 4)
        throw std::runtime_error("lifshitz_slope: fewer than 4 usable points in the fit window");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

double wegner_ratio(const spectra::IdsCurve& curve, const DistributionSpec& dist) {
    const auto rho = dist.density_bound();
    if (!rho)
        throw std::invalid_argument("wegner_ratio: distribution has no density bound");
    const double bound = *rho * dist.kappa_max();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < curve.lambda.size(); ++i) {
        const double dl = curve.lambda[i + 1] - curve.lambda[i - 1];
        const double density = -(curve.value[i + 1] - curve.value[i - 1]) / dl;
        worst = std::max(worst, curve.lambda[i] * density / bound);
    }
    return worst;
}

ParticipationStats participation_stats(const spectra::Spectrum& spec) {
    if (!spec.vectors)
        throw std::invalid_argument("participation_stats: spectrum carries no eigenvectors");
    const auto& v = *spec.vectors;
    ParticipationStats out;
    out.ipr.resize(static_cast<std::size_t>(v.cols()));
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        double s = 0.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double x = v(r, c) * v(r, c);
            s += x * x;
        }
        out.ipr[static_cast<std::size_t>(c)] = s;
        out.mean_ipr += s;
    }
    if (!out.ipr.empty()) out.mean_ipr /= static_cast<double>(out.ipr.size());
    return out;
}

} // namespace hankel::rkph
