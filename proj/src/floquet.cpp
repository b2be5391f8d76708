#include "hankel/floquet.hpp"

#include "hankel/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel::floquet {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::complex<double> gamma_factor_inv(double tau, int n) {
    // 1 / Gamma(1 - i 2 pi n / tau); the Gamma factor never vanishes.
    const std::complex<double> z(1.0, -2.0 * kPi * static_cast<double>(n) / tau);
    return std::exp(-specfun::log_gamma(z));
}

} // namespace

void FourierData::enforce_reality() {
    for (int m = 1; m <= n_max; ++m) {
        const auto plus = coeff[static_cast<std::size_t>(m + n_max)];
        const auto minus = coeff[static_cast<std::size_t>(-m + n_max)];
        const auto sym = 0.5 * (plus + std::conj(minus));
        coeff[static_cast<std::size_t>(m + n_max)] = sym;
        coeff[static_cast<std::size_t>(-m + n_max)] = std::conj(sym);
    }
    coeff[static_cast<std::size_t>(n_max)] =
        std::complex<double>(coeff[static_cast<std::size_t>(n_max)].real(), 0.0);
}

double FourierData::smoothness_weight() const {
    double s = 0.0;
    for (int m = -n_max; m <= n_max; ++m)
        s += std::abs(at(m)) * std::sqrt(1.0 + std::abs(static_cast<double>(m)));
    return s;
}

FourierData fourier_coeffs(const std::vector<double>& samples, double tau, int n_max) {
    if (!(tau > 0.0)) throw std::domain_error("fourier_coeffs: tau must be positive");
    if (n_max < 0) throw std::invalid_argument("fourier_coeffs: n_max must be >= 0");
    const std::size_t count = samples.size();
    if (count < static_cast<std::size_t>(std::max(4 * n_max, 1)))
        throw std::invalid_argument("fourier_coeffs: need at least 4*n_max samples");
    FourierData out;
    out.tau = tau;
    out.n_max = n_max;
    out.kind = FourierData::Kind::Symbol;
    out.coeff.assign(static_cast<std::size_t>(2 * n_max + 1), {0.0, 0.0});
    const double inv = 1.0 / static_cast<double>(count);
    for (int m = -n_max; m <= n_max; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < count; ++j) {
            const double ang = -2.0 * kPi * static_cast<double>(m) * static_cast<double>(j) * inv;
            acc += samples[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out.coeff[static_cast<std::size_t>(m + n_max)] = acc * inv;
    }
    out.enforce_reality();
    double top = 0.0;
    double biggest = 0.0;
    for (int m = -n_max; m <= n_max; ++m) biggest = std::max(biggest, std::abs(out.at(m)));
    top = std::max(std::abs(out.at(n_max)), std::abs(out.at(-n_max)));
    out.aliasing_warning = (n_max > 0 && top > 1e-3 * biggest);
    return out;
}

FourierData sigma_tilde(const FourierData& symbol) {
    if (symbol.kind != FourierData::Kind::Symbol)
        throw std::invalid_argument("sigma_tilde: input must carry symbol coefficients");
    FourierData out = symbol;
    out.kind = FourierData::Kind::MeasureSigma;
    for (int m = -symbol.n_max; m <= symbol.n_max; ++m)
        out.coeff[static_cast<std::size_t>(m + symbol.n_max)] =
            symbol.at(m) * gamma_factor_inv(symbol.tau, m);
    return out;
}

FourierData symbol_from_sigma(const FourierData& sigma) {
    if (sigma.kind != FourierData::Kind::MeasureSigma)
        throw std::invalid_argument("symbol_from_sigma: input must carry measure coefficients");
    FourierData out = sigma;
    out.kind = FourierData::Kind::Symbol;
    for (int m = -sigma.n_max; m <= sigma.n_max; ++m)
        out.coeff[static_cast<std::size_t>(m + sigma.n_max)] =
            sigma.at(m) / gamma_factor_inv(sigma.tau, m);
    return out;
}

FourierData single_band_data(double tau, int n_max) {
    FourierData out;
    out.tau = tau;
    out.n_max = n_max;
    out.kind = FourierData::Kind::MeasureSigma;
    out.coeff.assign(static_cast<std::size_t>(2 * n_max + 1), {1.0 / tau, 0.0});
    return out;
}

FourierData flat_pair_data(double tau, int n_max) {
    FourierData out;
    out.tau = tau;
    out.n_max = n_max;
    out.kind = FourierData::Kind::MeasureSigma;
    out.coeff.resize(static_cast<std::size_t>(2 * n_max + 1));
    for (int m = -n_max; m <= n_max; ++m) {
        const double v = (m % 2 == 0) ? 0.0 : 2.0 / tau;
        out.coeff[static_cast<std::size_t>(m + n_max)] = {v, 0.0};
    }
    return out;
}

Eigen::MatrixXcd fiber_matrix(const FourierData& data, double k, int n_fib, FiberRoute route) {
    if (n_fib < 0) throw std::invalid_argument("fiber_matrix: n_fib must be >= 0");
    const double cell = kPi / data.tau;
    if (std::abs(k) > cell * (1.0 + 1e-9))
        throw std::domain_error("fiber_matrix: k outside the dual period cell");
    const int dim = 2 * n_fib + 1;
    Eigen::MatrixXcd h(dim, dim);
    const double step = 2.0 * kPi / data.tau;

    if (route == FiberRoute::GammaProduct) {
        const FourierData conv = (data.kind == FourierData::Kind::Symbol) ? sigma_tilde(data) : data;
        std::vector<std::complex<double>> gam(static_cast<std::size_t>(dim));
        for (int n = -n_fib; n <= n_fib; ++n) {
            const double a = step * static_cast<double>(n) + k;
            gam[static_cast<std::size_t>(n + n_fib)] =
                std::exp(specfun::log_gamma(std::complex<double>(0.5, a)));
        }
        for (int n = -n_fib; n <= n_fib; ++n)
            for (int m = n; m <= n_fib; ++m) {
                const auto v = std::conj(gam[static_cast<std::size_t>(n + n_fib)]) *
                               conv.at(n - m) * gam[static_cast<std::size_t>(m + n_fib)];
                h(n + n_fib, m + n_fib) = v;
                h(m + n_fib, n + n_fib) = std::conj(v);
            }
    } else {
        const FourierData conv =
            (data.kind == FourierData::Kind::MeasureSigma) ? symbol_from_sigma(data) : data;
        for (int n = -n_fib; n <= n_fib; ++n)
            for (int m = n; m <= n_fib; ++m) {
                const double an = step * static_cast<double>(n) + k;
                const double am = step * static_cast<double>(m) + k;
                const auto v = specfun::beta_half_line(an, am) * conv.at(n - m);
                h(n + n_fib, m + n_fib) = v;
                h(m + n_fib, n + n_fib) = std::conj(v);
            }
    }
    return h;
}

double single_band_E0(double tau, double k) {
    return (kPi / tau) * specfun::lattice_sech_sum(tau, k, false);
}

BandEdges single_band_edges(double tau) {
    return {single_band_E0(tau, kPi / tau), single_band_E0(tau, 0.0)};
}

FlatPairResult flat_pair_Estar(double tau) {
    FlatPairResult r{};
    r.params = specfun::modulus_from_period(tau);
    r.d14_constant = r.params.K * r.params.k_prime / (kPi * kPi);
    r.e_star = kPi * r.d14_constant;
    double worst = 0.0;
    for (int j = 0; j < 64; ++j) {
        const double k = (static_cast<double>(j) + 0.5) * (kPi / tau) / 64.0;
        const double f = specfun::lattice_sech_sum(tau, k, false);
        const double g = specfun::lattice_sech_sum(tau, k, true);
        const double e = std::sqrt(std::max(f * f - g * g, 0.0)) / tau;
        worst = std::max(worst, std::abs(e - r.d14_constant) / r.d14_constant);
    }
    r.max_rel_deviation = worst;
    return r;
}

namespace {

Eigen::VectorXd fiber_eigs(const FourierData& data, double k, int n_fib) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fiber_matrix(data, k, n_fib),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("band_structure: fiber eigensolve failed");
    return es.eigenvalues();
}

struct SignSplit {
    std::vector<double> pos; // descending
    std::vector<double> neg; // ascending
};

SignSplit split_by_sign(const Eigen::VectorXd& eigs, double floor) {
    SignSplit s;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (eigs(i) > floor) s.pos.push_back(eigs(i));
        else if (eigs(i) < -floor) s.neg.push_back(eigs(i));
    }
    std::sort(s.pos.begin(), s.pos.end(), std::greater<>());
    std::sort(s.neg.begin(), s.neg.end());
    return s;
}

} // namespace

BandStructure band_structure(const FourierData& data, int k_count, int n_fib, double flat_tol,
                             double discard_floor) {
    if (k_count < 16) throw std::invalid_argument("band_structure: k_count must be >= 16");
    BandStructure out;
    out.tau = data.tau;
    out.n_fib = n_fib;
    if (data.n_max < 2 * n_fib)
        out.notes.push_back("coefficient window n_max=" + std::to_string(data.n_max) +
                            " truncated below 2*n_fib=" + std::to_string(2 * n_fib) +
                            "; missing entries treated as zero");
    const double cell = kPi / data.tau;
    out.k_grid.resize(static_cast<std::size_t>(k_count));
    for (int j = 0; j < k_count; ++j)
        out.k_grid[static_cast<std::size_t>(j)] =
            (static_cast<double>(j) + 0.5) * cell / static_cast<double>(k_count);

    std::vector<Eigen::VectorXd> spectra_by_k(out.k_grid.size());
    parallel_for(out.k_grid.size(),
                 [&](std::size_t j) { spectra_by_k[j] = fiber_eigs(data, out.k_grid[j], n_fib); });

    // truncation diagnostic: doubling test at the first grid point
    {
        const auto once = split_by_sign(spectra_by_k.front(), 0.0);
        const auto twice_raw = fiber_eigs(data, out.k_grid.front(), 2 * n_fib);
        const auto twice = split_by_sign(twice_raw, 0.0);
        double shift = 0.0;
        for (std::size_t i = 0; i < std::min(once.pos.size(), twice.pos.size()); ++i)
            shift = std::max(shift, std::abs(once.pos[i] - twice.pos[i]));
        for (std::size_t i = 0; i < std::min(once.neg.size(), twice.neg.size()); ++i)
            shift = std::max(shift, std::abs(once.neg[i] - twice.neg[i]));
        out.truncation_shift = shift;
    }

    double global_max = 0.0;
    for (const auto& e : spectra_by_k)
        if (e.size() > 0) global_max = std::max(global_max, e.cwiseAbs().maxCoeff());
    const double floor = discard_floor * global_max;

    std::vector<SignSplit> split(out.k_grid.size());
    for (std::size_t j = 0; j < out.k_grid.size(); ++j) split[j] = split_by_sign(spectra_by_k[j], floor);

    const std::size_t n_pos = split.front().pos.size();
    const std::size_t n_neg = split.front().neg.size();
    for (const auto& s : split)
        if (s.pos.size() != n_pos || s.neg.size() != n_neg)
            throw std::runtime_error(
                "band_structure: branch count changes across the k-grid; increase n_fib or k_count");

    const auto edge_lo = split_by_sign(fiber_eigs(data, 1e-6, n_fib), floor);
    const auto edge_hi = split_by_sign(fiber_eigs(data, cell - 1e-6, n_fib), floor);
    if (edge_lo.pos.size() < n_pos || edge_hi.pos.size() < n_pos || edge_lo.neg.size() < n_neg ||
        edge_hi.neg.size() < n_neg)
        throw std::runtime_error("band_structure: edge evaluation lost a branch");

    auto make_band = [&](bool positive, std::size_t idx) {
        Band b{};
        b.values.resize(out.k_grid.size());
        for (std::size_t j = 0; j < out.k_grid.size(); ++j)
            b.values[j] = positive ? split[j].pos[idx] : split[j].neg[idx];
        b.value_at_zero = positive ? edge_lo.pos[idx] : edge_lo.neg[idx];
        b.value_at_pi = positive ? edge_hi.pos[idx] : edge_hi.neg[idx];
        double lo = std::min(b.value_at_zero, b.value_at_pi);
        double hi = std::max(b.value_at_zero, b.value_at_pi);
        double mean = 0.0;
        for (double v : b.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v;
        }
        mean /= static_cast<double>(b.values.size());
        b.edge_min = lo;
        b.edge_max = hi;
        b.flat = (hi - lo) <= flat_tol * std::max(1.0, std::abs(mean));
        b.sign = positive ? 1 : -1;
        return b;
    };
    for (std::size_t i = 0; i < n_pos; ++i) out.bands.push_back(make_band(true, i));
    for (std::size_t i = 0; i < n_neg; ++i) out.bands.push_back(make_band(false, i));

    for (const Band& f : out.bands) {
        if (!f.flat) continue;
        for (const Band& n : out.bands) {
            if (n.flat) continue;
            if (f.edge_min >= n.edge_min && f.edge_max <= n.edge_max)
                out.notes.push_back("flat band at " + std::to_string(f.edge_min) +
                                    " tangent to a non-flat band; not resolved");
        }
    }
    return out;
}

namespace {

/// Lebesgue measure of {k in (0, pi/tau) : E(k) > lambda} for a monotone
/// branch, by linear inverse interpolation on the sampled values extended
/// by the extrapolated edge samples.
double level_measure(const BandStructure& bs, const Band& b, double lambda) {
    const double cell = kPi / bs.tau;
    std::vector<double> kk;
    std::vector<double> ee;
    kk.reserve(b.values.size() + 2);
    ee.reserve(b.values.size() + 2);
    kk.push_back(0.0);
    ee.push_back(b.value_at_zero);
    for (std::size_t j = 0; j < b.values.size(); ++j) {
        kk.push_back(bs.k_grid[j]);
        ee.push_back(b.values[j]);
    }
    kk.push_back(cell);
    ee.push_back(b.value_at_pi);

    double above = 0.0;
    for (std::size_t j = 0; j + 1 < kk.size(); ++j) {
        const double e0 = ee[j], e1 = ee[j + 1];
        const double dk = kk[j + 1] - kk[j];
        if (e0 > lambda && e1 > lambda) {
            above += dk;
        } else if (e0 > lambda || e1 > lambda) {
            const double f = (lambda - e0) / (e1 - e0); // crossing fraction in [0,1]
            above += (e0 > lambda) ? f * dk : (1.0 - f) * dk;
        }
    }
    return above;
}

} // namespace

spectra::IdsCurve ids_from_bands(const BandStructure& b, const std::vector<double>& lambda_grid) {
    spectra::IdsCurve out;
    out.lambda = lambda_grid;
    out.window_length = 0.0;
    out.scheme = 'f';
    out.model = "bands";
    out.value.resize(lambda_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        const double lambda = lambda_grid[i];
        if (!(lambda > 0.0))
            throw std::invalid_argument("ids_from_bands: lambda grid must be positive");
        double v = 0.0;
        for (const Band& band : b.bands) {
            if (band.flat) {
                if (0.5 * (band.edge_min + band.edge_max) > lambda) v += 1.0 / b.tau;
            } else {
                v += level_measure(b, band, lambda) / kPi;
            }
        }
        out.value[i] = v;
    }
    return out;
}

int gap_labels(const BandStructure& b, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("gap_labels: lambda must be positive");
    int above = 0;
    for (const Band& band : b.bands) {
        if (lambda >= band.edge_min && lambda <= band.edge_max)
            throw std::invalid_argument("gap_labels: lambda lies inside a band");
        if (band.edge_min > lambda) ++above;
    }
    const auto ids = ids_from_bands(b, {lambda});
    if (std::abs(ids.value.front() * b.tau - static_cast<double>(above)) > 1e-9)
        throw std::runtime_error("gap_labels: counting and fiber IDS disagree in a gap");
    return above;
}

} // namespace hankel::floquet
