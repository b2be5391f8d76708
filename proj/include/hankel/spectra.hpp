#pragma once

#include "hankel/operators.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace hankel::spectra {

struct Spectrum {
    Eigen::VectorXd eigenvalues; // ascending
    std::optional<Eigen::MatrixXd> vectors;
    double residual = 0.0; // max_i ||A v_i - l_i v_i|| / ||A||, when vectors present
};

/// Full symmetric eigensolve. Deterministic for identical input;
/// convergence failures are reported, never truncated.
Spectrum eig_sym(const Eigen::MatrixXd& A, bool want_vectors = false);

struct IdsCurve {
    std::vector<double> lambda;  // strictly increasing, > 0
    std::vector<double> value;   // estimated nu((lambda, inf)), nonincreasing
    double window_length = 0.0;  // the 2M (or 2*tau*N) normalization
    char scheme = 'a';
    std::string model;

    /// value at the largest grid lambda <= x (staircase interpolation)
    double at(double x) const;
};

/// Geometric default grid resolving the log singularity near zero:
/// 120 points from 0.02*pi*C_h to pi*C_h.
std::vector<double> default_lambda_grid(double c_h, int points = 120);

/// Eigenvalue-counting IDS from a finite section:
/// nu((lambda,inf)) ~ #{eig > lambda} / (2M). Scheme 'a' uses the Nystrom
/// section, scheme 'b' the measure-restricted one.
IdsCurve ids_from_section(const operators::KernelSpec& spec, char scheme, double half_width,
                          double spacing, const std::vector<double>& lambda_grid);

/// Closed form for the Carleman IDS distribution function, in the
/// trace-consistent normalization (first moment 1/2, second moment 1):
/// nu((lambda,inf)) = (1/pi^2) * log(pi/lambda + sqrt(pi^2/lambda^2 - 1)).
double carleman_ids(double lambda);

/// C^inf bump supported on (lo, hi): rises from 0 at lo to 1 at
/// plateau_lo, stays at 1 through plateau_hi, falls back to 0 at hi.
/// The two-argument form degenerates the plateau to the midpoint.
struct SmoothBump {
    double lo;
    double plateau_lo;
    double plateau_hi;
    double hi;

    SmoothBump(double lo_, double hi_)
        : lo(lo_), plateau_lo(0.5 * (lo_ + hi_)), plateau_hi(plateau_lo), hi(hi_) {}
    SmoothBump(double lo_, double plateau_lo_, double plateau_hi_, double hi_)
        : lo(lo_), plateau_lo(plateau_lo_), plateau_hi(plateau_hi_), hi(hi_) {}

    double operator()(double t) const;
};

struct SzegoTriple {
    double restricted_kernel; // (1/2M) Tr phi(chi_M H chi_M)
    double projected;         // (1/2M) Tr (chi_M phi(H) chi_M), large-window reference
    double restricted_measure; // (1/2M) Tr phi(H^(M))
};

/// The three normalized traces compared by the finite-section theory.
/// The projected trace uses a reference section of half-width M + 40 and
/// applies phi through the eigendecomposition.
SzegoTriple szego_triple(const operators::KernelSpec& spec, double half_width, double spacing,
                         const SmoothBump& phi);

struct Moments {
    double first;  // (1/2M) Tr(chi_M H chi_M)
    double second; // (1/2M) Tr(chi_M H^2 chi_M)
};

Moments moment_check(const operators::KernelSpec& spec, double half_width, double spacing);

} // namespace hankel::spectra
