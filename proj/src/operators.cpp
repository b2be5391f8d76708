#include "hankel/operators.hpp"

#include "hankel/parallel.hpp"
#include "hankel/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel::operators {

namespace {

constexpr std::size_t kNodeCap = 8192;
constexpr double kTailCutoff = 80.0; // sech(40) < 1e-17

double periodic_symbol(const PeriodicKernel& p, double xi) {
    if (p.samples.empty()) throw std::invalid_argument("PeriodicKernel: no samples");
    const double n = static_cast<double>(p.samples.size());
    double pos = std::fmod(xi / p.tau, 1.0);
    if (pos < 0.0) pos += 1.0;
    const double g = pos * n;
    const auto i0 = static_cast<std::size_t>(g) % p.samples.size();
    const std::size_t i1 = (i0 + 1) % p.samples.size();
    const double frac = g - std::floor(g);
    return p.samples[i0] * (1.0 - frac) + p.samples[i1] * frac;
}

double log_add_exp(double x, double y) {
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(-std::abs(x - y)));
}

double measure_kernel_xy(const measures::Measure& Sigma, double x, double y) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, measures::AtomicMeasure>) {
                double s = 0.0;
                for (const auto& a : m.atoms())
                    s += a.weight * beta_profile(x - a.position) * beta_profile(y - a.position);
                return s;
            } else {
                double s = 0.0;
                for (std::size_t j = 0; j < m.values.size(); ++j) {
                    const double xi = m.node(j);
                    s += m.step * m.values[j] * beta_profile(x - xi) * beta_profile(y - xi);
                }
                return s;
            }
        },
        Sigma);
}

} // namespace

double beta_profile(double xi) {
    return std::exp(-std::exp(xi) + 0.5 * xi);
}

double gram_overlap(double a, double b) {
    return 0.5 * specfun::sech(0.5 * (a - b));
}

double hankel_kernel_xy(const KernelSpec& spec, double x, double y) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CarlemanKernel>) {
                return 0.5 * specfun::sech(0.5 * (x - y));
            } else if constexpr (std::is_same_v<T, PeriodicKernel>) {
                return periodic_symbol(s, log_add_exp(x, y)) * 0.5 * specfun::sech(0.5 * (y - x));
            } else if constexpr (std::is_same_v<T, MeasureKernel>) {
                return measure_kernel_xy(s.Sigma, x, y);
            } else {
                throw std::invalid_argument("hankel_kernel_xy: rKPH samples have no pointwise kernel here; use atom_section/window_matrix");
            }
        },
        spec);
}

double laplace_kernel_check(const measures::AtomicMeasure& Sigma, double t) {
    if (Sigma.axis() != measures::Axis::SigmaLine)
        throw std::domain_error("laplace_kernel_check: expected a Sigma measure on the line");
    if (!(t > 0.0)) throw std::domain_error("laplace_kernel_check: t must be positive");
    double s = 0.0;
    for (const auto& a : Sigma.atoms()) {
        const double em = std::exp(-a.position);
        s += a.weight * std::exp(-t * em) * em;
    }
    return s;
}

double kernel_bound(const KernelSpec& spec) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CarlemanKernel>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, PeriodicKernel>) {
                double m = 0.0;
                for (double v : s.samples) m = std::max(m, std::abs(v));
                if (s.bound > 0.0 && m > s.bound * (1.0 + 1e-12))
                    throw std::invalid_argument("PeriodicKernel: samples exceed the declared bound");
                return s.bound > 0.0 ? s.bound : m;
            } else {
                // sup_t t*h(t) by a log sweep over the support range;
                // each atom's term peaks at t = e^xi.
                std::vector<double> positions;
                double tau = 1.0;
                measures::AtomicMeasure atoms;
                if constexpr (std::is_same_v<T, RkphKernel>) {
                    std::vector<measures::Atom> as;
                    const long N = (static_cast<long>(s.weights.size()) - 1) / 2;
                    for (std::size_t i = 0; i < s.weights.size(); ++i)
                        as.push_back({s.tau * static_cast<double>(static_cast<long>(i) - N), s.weights[i]});
                    atoms = measures::AtomicMeasure(std::move(as), measures::Axis::SigmaLine);
                    (void)tau;
                } else {
                    if (std::holds_alternative<measures::DensityMeasure>(s.Sigma)) {
                        const auto& d = std::get<measures::DensityMeasure>(s.Sigma);
                        double m = 0.0;
                        for (double v : d.values) m = std::max(m, v);
                        return m; // t*h(t) <= sup S for absolutely continuous Sigma
                    }
                    atoms = std::get<measures::AtomicMeasure>(s.Sigma);
                }
                if (atoms.size() == 0) return 0.0;
                const double lo = atoms.atoms().front().position - 3.0;
                const double hi = atoms.atoms().back().position + 3.0;
                double best = 0.0;
                const int steps = 600;
                for (int i = 0; i <= steps; ++i) {
                    const double xi = lo + (hi - lo) * static_cast<double>(i) / steps;
                    const double t = std::exp(xi);
                    best = std::max(best, t * laplace_kernel_check(atoms, t));
                }
                return best;
            }
        },
        spec);
}

std::string spec_name(const KernelSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CarlemanKernel>) return "carleman";
            else if constexpr (std::is_same_v<T, PeriodicKernel>) return "periodic";
            else if constexpr (std::is_same_v<T, MeasureKernel>) return "measure";
            else return "rkph";
        },
        spec);
}

std::size_t GridWindow::count() const {
    if (!(half_width > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("GridWindow: half_width and spacing must be positive");
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / spacing - 1e-9));
    return std::max<std::size_t>(n, 2);
}

double GridWindow::node(std::size_t i) const {
    const double n = static_cast<double>(count());
    return (static_cast<double>(i) - 0.5 * (n - 1.0)) * spacing;
}

SymmetricSection nystrom_section(const KernelSpec& spec, const GridWindow& window) {
    const std::size_t n = window.count();
    if (n > kNodeCap)
        throw std::runtime_error("nystrom_section: node count " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(kNodeCap));
    SymmetricSection out;
    out.scheme = 'a';
    out.half_width = window.half_width;
    out.spacing = window.spacing;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = window.node(i);
    out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    auto& A = out.matrix;
    const auto& x = out.labels;

    // Atomic-measure kernels factor through the finite atom list, so the
    // section is spacing * B W B^T with B[i][a] = beta(x_i - xi_a); one
    // GEMM instead of n^2 atom sums.
    if (const auto* mk = std::get_if<MeasureKernel>(&spec)) {
        if (const auto* am = std::get_if<measures::AtomicMeasure>(&mk->Sigma)) {
            const auto m = static_cast<Eigen::Index>(am->size());
            Eigen::MatrixXd b(static_cast<Eigen::Index>(n), m);
            Eigen::VectorXd w(m);
            for (Eigen::Index a = 0; a < m; ++a) {
                const auto& atom = am->atoms()[static_cast<std::size_t>(a)];
                w(a) = atom.weight * window.spacing;
                for (std::size_t i = 0; i < n; ++i)
                    b(static_cast<Eigen::Index>(i), a) = beta_profile(x[i] - atom.position);
            }
            A.noalias() = b * w.asDiagonal() * b.transpose();
            A = ((A + A.transpose()) * 0.5).eval();
            return out;
        }
    }

    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = (x[j] - x[i] > kTailCutoff)
                                 ? 0.0
                                 : window.spacing * hankel_kernel_xy(spec, x[i], x[j]);
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    });
    return out;
}

SymmetricSection atom_section(const measures::AtomicMeasure& Sigma, double half_width,
                              double center) {
    if (Sigma.axis() != measures::Axis::SigmaLine)
        throw std::domain_error("atom_section: expected a Sigma measure on the line");
    std::vector<double> pos;
    std::vector<double> w;
    for (const auto& a : Sigma.atoms()) {
        if (a.position >= center - half_width && a.position < center + half_width) {
            pos.push_back(a.position);
            w.push_back(a.weight);
        }
    }
    const std::size_t n = pos.size();
    if (n > kNodeCap)
        throw std::runtime_error("atom_section: atom count exceeds cap " + std::to_string(kNodeCap));
    SymmetricSection out;
    out.scheme = 'b';
    out.half_width = half_width;
    out.labels = pos;
    out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (n == 0) return out;

    Eigen::MatrixXd gamma(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                gram_overlap(pos[i], pos[j]);
    });

    const bool all_positive = std::all_of(w.begin(), w.end(), [](double v) { return v > 0.0; });
    if (all_positive) {
        // sqrt of the product keeps diagonal entries w_i * Gamma_ii exact
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j)
                out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    std::sqrt(w[i] * w[j]) *
                    gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        });
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("atom_section: Gram eigendecomposition failed");
        const double lmax = es.eigenvalues().maxCoeff();
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < -1e-10 * std::max(lmax, 1.0))
            throw std::runtime_error("atom_section: Gram matrix indefinite beyond tolerance, cond ~ " +
                                     std::to_string(lmax / std::abs(lmin)));
        Eigen::VectorXd roots = es.eigenvalues().cwiseMax(1e-13 * lmax).cwiseSqrt();
        Eigen::MatrixXd root = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
        Eigen::VectorXd wv(n);
        for (std::size_t i = 0; i < n; ++i) wv(static_cast<Eigen::Index>(i)) = w[i];
        Eigen::MatrixXd b = root * wv.asDiagonal() * root;
        out.matrix = 0.5 * (b + b.transpose());
    }
    // symmetry is structural for the positive route; enforce exactly anyway
    out.matrix = ((out.matrix + out.matrix.transpose()) * 0.5).eval();
    return out;
}

} // namespace hankel::operators
