#include "hankel/spectra.hpp"

#include "hankel/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel::spectra {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Spectrum eig_sym(const Eigen::MatrixXd& A, bool want_vectors) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("eig_sym: matrix must be square");
    Spectrum s;
    if (A.rows() == 0) {
        s.eigenvalues.resize(0);
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.compute(A, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_sym: eigensolver failed to converge");
    s.eigenvalues = es.eigenvalues();
    if (want_vectors) {
        s.vectors = es.eigenvectors();
        const double norm = std::max(s.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
        const Eigen::MatrixXd resid = A * (*s.vectors) - (*s.vectors) * s.eigenvalues.asDiagonal();
        s.residual = resid.colwise().norm().maxCoeff() / norm;
    }
    return s;
}

double IdsCurve::at(double x) const {
    auto it = std::upper_bound(lambda.begin(), lambda.end(), x);
    if (it == lambda.begin()) return value.empty() ? 0.0 : value.front();
    const auto idx = static_cast<std::size_t>(std::distance(lambda.begin(), it)) - 1;
    return value[idx];
}

std::vector<double> default_lambda_grid(double c_h, int points) {
    if (!(c_h > 0.0)) throw std::invalid_argument("default_lambda_grid: C_h must be positive");
    const double hi = kPi * c_h;
    const double lo = 0.02 * hi;
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    return grid;
}

namespace {

operators::SymmetricSection build_section(const operators::KernelSpec& spec, char scheme,
                                          double half_width, double spacing) {
    if (scheme == 'a')
        return operators::nystrom_section(spec, {half_width, spacing});
    if (scheme != 'b')
        throw std::invalid_argument("ids_from_section: scheme must be 'a' or 'b'");
    if (const auto* mk = std::get_if<operators::MeasureKernel>(&spec)) {
        if (const auto* atoms = std::get_if<measures::AtomicMeasure>(&mk->Sigma))
            return operators::atom_section(*atoms, half_width);
        // Absolutely continuous measure: quadrature Gram on the restricted window.
        const auto& d = std::get<measures::DensityMeasure>(mk->Sigma);
        d.validate();
        operators::GridWindow w{half_width, spacing};
        const std::size_t n = w.count();
        operators::SymmetricSection out;
        out.scheme = 'b';
        out.half_width = half_width;
        out.spacing = spacing;
        out.labels.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.labels[i] = w.node(i);
        auto density_at = [&](double xi) {
            const double pos = (xi - d.start) / d.step;
            if (pos <= 0.0) return d.values.front();
            if (pos >= static_cast<double>(d.values.size() - 1)) return d.values.back();
            const auto i0 = static_cast<std::size_t>(pos);
            const double f = pos - static_cast<double>(i0);
            return d.values[i0] * (1.0 - f) + d.values[i0 + 1] * f;
        };
        out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const double si = std::sqrt(density_at(out.labels[i]) * spacing);
            for (std::size_t j = i; j < n; ++j) {
                const double sj = std::sqrt(density_at(out.labels[j]) * spacing);
                const double v = si * sj * operators::gram_overlap(out.labels[i], out.labels[j]);
                out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                out.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
        }
        return out;
    }
    if (const auto* ck = std::get_if<operators::CarlemanKernel>(&spec)) {
        (void)ck;
        measures::DensityMeasure lebesgue;
        lebesgue.axis = measures::Axis::SigmaLine;
        lebesgue.start = -half_width;
        lebesgue.step = 2.0 * half_width;
        lebesgue.values = {1.0, 1.0};
        operators::KernelSpec as_measure = operators::MeasureKernel{lebesgue};
        return build_section(as_measure, 'b', half_width, spacing);
    }
    throw std::invalid_argument("ids_from_section: scheme 'b' needs a measure-backed spec");
}

double count_above(const Eigen::VectorXd& eigs, double lambda) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (eigs(i) > lambda) c += 1.0;
    return c;
}

} // namespace

IdsCurve ids_from_section(const operators::KernelSpec& spec, char scheme, double half_width,
                          double spacing, const std::vector<double>& lambda_grid) {
    for (double l : lambda_grid)
        if (!(l > 0.0))
            throw std::invalid_argument("ids_from_section: lambda grid must be positive");
    const auto section = build_section(spec, scheme, half_width, spacing);
    const auto spec_eigs = eig_sym(section.matrix).eigenvalues;
    IdsCurve out;
    out.lambda = lambda_grid;
    out.window_length = 2.0 * half_width;
    out.scheme = scheme;
    out.model = operators::spec_name(spec);
    out.value.resize(lambda_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i)
        out.value[i] = count_above(spec_eigs, lambda_grid[i]) / out.window_length;
    return out;
}

double carleman_ids(double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("carleman_ids: lambda must be positive");
    if (lambda >= kPi) return 0.0;
    const double r = kPi / lambda;
    return (1.0 / (kPi * kPi)) * std::log(r + std::sqrt(r * r - 1.0));
}

namespace {

// C^inf step: 0 at u<=0, 1 at u>=1.
double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

} // namespace

double SmoothBump::operator()(double t) const {
    if (t <= lo || t >= hi) return 0.0;
    if (t < plateau_lo) return smooth_step((t - lo) / (plateau_lo - lo));
    if (t > plateau_hi) return smooth_step((hi - t) / (hi - plateau_hi));
    return 1.0;
}

SzegoTriple szego_triple(const operators::KernelSpec& spec, double half_width, double spacing,
                         const SmoothBump& phi) {
    SzegoTriple out{};
    const double norm = 2.0 * half_width;

    // (1/2M) Tr phi(chi_M H chi_M)
    {
        const auto a = build_section(spec, 'a', half_width, spacing);
        const auto eigs = eig_sym(a.matrix).eigenvalues;
        double t = 0.0;
        for (Eigen::Index i = 0; i < eigs.size(); ++i) t += phi(eigs(i));
        out.restricted_kernel = t / norm;
    }

    // (1/2M) Tr(chi_M phi(H) chi_M) via a reference window; the kernel's
    // exponential off-diagonal decay keeps the truncation error negligible.
    {
        const double ref = half_width + 40.0;
        const auto a = build_section(spec, 'a', ref, spacing);
        const auto s = eig_sym(a.matrix, true);
        const auto& v = *s.vectors;
        Eigen::VectorXd phis(s.eigenvalues.size());
        for (Eigen::Index i = 0; i < phis.size(); ++i) phis(i) = phi(s.eigenvalues(i));
        double t = 0.0;
        for (std::size_t i = 0; i < a.labels.size(); ++i) {
            if (std::abs(a.labels[i]) >= half_width) continue;
            const auto row = v.row(static_cast<Eigen::Index>(i));
            t += (row.array().square() * phis.transpose().array()).sum();
        }
        out.projected = t / norm;
    }

    // (1/2M) Tr phi(H^(M))
    {
        const auto b = build_section(spec, 'b', half_width, spacing);
        const auto eigs = eig_sym(b.matrix).eigenvalues;
        double t = 0.0;
        for (Eigen::Index i = 0; i < eigs.size(); ++i) t += phi(eigs(i));
        out.restricted_measure = t / norm;
    }
    return out;
}

Moments moment_check(const operators::KernelSpec& spec, double half_width, double spacing) {
    const auto a = operators::nystrom_section(spec, {half_width, spacing});
    Moments m{};
    m.first = a.matrix.trace() / (2.0 * half_width);
    m.second = a.matrix.squaredNorm() / (2.0 * half_width);
    // the normalized traces are capped by C_h^2 resp. C_h/2 (positive
    // case); 5% slack absorbs quadrature error of the section
    const double c_h = operators::kernel_bound(spec);
    if (m.second > c_h * c_h * 1.05)
        throw std::runtime_error("moment_check: second moment " + std::to_string(m.second) +
                                 " exceeds C_h^2 = " + std::to_string(c_h * c_h));
    const bool positive =
        std::holds_alternative<operators::CarlemanKernel>(spec) ||
        (std::holds_alternative<operators::MeasureKernel>(spec) &&
         std::visit(
             [](const auto& mm) {
                 if constexpr (std::is_same_v<std::decay_t<decltype(mm)>,
                                              measures::AtomicMeasure>)
                     return !mm.is_signed();
                 else
                     return true;
             },
             std::get<operators::MeasureKernel>(spec).Sigma));
    if (positive && m.first > 0.5 * c_h * 1.05)
        throw std::runtime_error("moment_check: first moment " + std::to_string(m.first) +
                                 " exceeds C_h/2 = " + std::to_string(0.5 * c_h));
    return m;
}

} // namespace hankel::spectra
