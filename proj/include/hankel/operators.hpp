#pragma once

#include "hankel/measures.hpp"

#include <Eigen/Core>

#include <string>
#include <variant>
#include <vector>

namespace hankel::operators {

/// Kernel families the workbench understands. The Carleman kernel is the
/// constant-symbol case; Periodic carries symbol samples over one period;
/// MeasureKernel is a positive (or signed-atomic) operator given by its
/// line measure; RkphKernel is a sampled random window and only enters
/// through the Gram construction, never pointwise.
struct CarlemanKernel {};

struct PeriodicKernel {
    double tau = 1.0;
    std::vector<double> samples; // P on a uniform grid over [0, tau)
    double bound = 0.0;          // declared sup|P|; 0 means "derive from samples"
};

struct MeasureKernel {
    measures::Measure Sigma; // on the line axis
};

struct RkphKernel {
    std::vector<double> weights; // kappa(n), n = -N..N
    double tau = 1.0;
};

using KernelSpec = std::variant<CarlemanKernel, PeriodicKernel, MeasureKernel, RkphKernel>;

/// Midpoint grid on [-half_width, half_width].
struct GridWindow {
    double half_width;
    double spacing;

    std::size_t count() const;
    double node(std::size_t i) const;
};

/// Dense real symmetric finite section with provenance.
struct SymmetricSection {
    Eigen::MatrixXd matrix;
    char scheme = 'a';          // 'a' = kernel restriction, 'b' = measure restriction
    double half_width = 0.0;    // normalization window
    double spacing = 0.0;       // grid spacing for scheme 'a'
    std::vector<double> labels; // grid nodes or atom positions per row
};

/// beta(xi) = exp(-e^xi) * e^(xi/2).
double beta_profile(double xi);

/// Transplanted kernel value at (x, y). Not defined for RkphKernel.
double hankel_kernel_xy(const KernelSpec& spec, double x, double y);

/// Laplace-representation kernel function h(t) for an atomic line measure.
double laplace_kernel_check(const measures::AtomicMeasure& Sigma, double t);

/// Overlap of two translated beta profiles: 1/2 * sech((a-b)/2).
double gram_overlap(double a, double b);

/// sup|P|-type norm constant C_h for a spec (operator norm <= pi*C_h).
/// Exact for Carleman/Periodic, numeric sweep of t*h(t) for measures.
double kernel_bound(const KernelSpec& spec);

std::string spec_name(const KernelSpec& spec);

/// Scheme (a): A[i][j] = spacing * K(x_i, x_j) on the midpoint grid.
/// Entries with |x_i - x_j| > 80 are set to zero (below roundoff of the
/// sech envelope). Node count is capped at 8192.
SymmetricSection nystrom_section(const KernelSpec& spec, const GridWindow& window);

/// Scheme (b): restrict the measure to [center-M, center+M), build the
/// Gram matrix Gamma of the translated profiles and return a symmetric
/// matrix with the nonzero spectrum of the restricted operator:
/// W^(1/2) Gamma W^(1/2) for positive weights, Gamma^(1/2) W Gamma^(1/2)
/// in the signed case (square root by eigendecomposition with eigenvalue
/// floor 1e-13 * max).
SymmetricSection atom_section(const measures::AtomicMeasure& Sigma, double half_width,
                              double center = 0.0);

} // namespace hankel::operators
