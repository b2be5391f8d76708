#pragma once

#include "hankel/spectra.hpp"
#include "hankel/specfun.hpp"

#include <Eigen/Core>

#include <complex>
#include <string>
#include <vector>

namespace hankel::floquet {

/// Fourier data of a tau-periodic model: either symbol coefficients or the
/// coefficients of the periodic line measure. Indexed m in [-n_max, n_max];
/// reality of the underlying function is enforced (c[-m] = conj(c[m])).
struct FourierData {
    enum class Kind { Symbol, MeasureSigma };

    double tau = 1.0;
    int n_max = 0;
    std::vector<std::complex<double>> coeff; // size 2*n_max + 1
    Kind kind = Kind::Symbol;
    bool aliasing_warning = false;

    std::complex<double> at(int m) const {
        if (m < -n_max || m > n_max) return {0.0, 0.0};
        return coeff[static_cast<std::size_t>(m + n_max)];
    }
    void enforce_reality();
    /// Partial sum of |c_m| (1+|m|)^(1/2), the smoothness weight; reported
    /// so heavy truncation tails can be flagged.
    double smoothness_weight() const;
};

/// Trapezoidal Fourier coefficients of uniform symbol samples over one
/// period. Requires at least 4*n_max samples; sets the aliasing flag when
/// the top coefficient is not small against the largest one.
FourierData fourier_coeffs(const std::vector<double>& samples, double tau, int n_max);

/// Measure coefficients from symbol coefficients (divide by
/// Gamma(1 - i 2 pi n / tau)) and the inverse map.
FourierData sigma_tilde(const FourierData& symbol);
FourierData symbol_from_sigma(const FourierData& sigma);

/// Lattice of unit point masses at tau*n: Sigma-coefficients all 1/tau.
FourierData single_band_data(double tau, int n_max);
/// Alternating-sign lattice: Sigma-coefficients (1 - (-1)^n)/tau.
FourierData flat_pair_data(double tau, int n_max);

enum class FiberRoute { GammaProduct, BetaFactor };

/// Fiber matrix h(k) of size (2*n_fib+1)^2, Hermitian. The two assembly
/// routes (gamma products against measure coefficients vs Beta factors
/// against symbol coefficients) agree to ~1e-11 and are cross-checkable.
Eigen::MatrixXcd fiber_matrix(const FourierData& data, double k, int n_fib,
                              FiberRoute route = FiberRoute::GammaProduct);

/// Nonzero eigenvalue of the single-band fiber, via the lattice sech sum.
double single_band_E0(double tau, double k);

struct BandEdges {
    double e_min;
    double e_max;
};
BandEdges single_band_edges(double tau);

/// Flat-band data of the alternating-sign lattice. The sech-series
/// expression sqrt(F(k)^2 - G(k)^2)/tau is constant in k and equals
/// K k'/pi^2 (d14_constant); the fiber spectrum sits at +-pi times that
/// value, e_star = K k'/pi, as the rank-two eigenvalue computation and the
/// Gram-section route both give. Both constants are reported.
struct FlatPairResult {
    double e_star;             // flat-band level K * k' / pi
    double d14_constant;       // series constant K * k' / pi^2 = e_star / pi
    double max_rel_deviation;  // spread of the series expression over a k-grid
    specfun::EllipticParams params;
};
FlatPairResult flat_pair_Estar(double tau);

struct Band {
    std::vector<double> values; // on the interior k-grid
    double value_at_zero;       // extrapolated edge samples
    double value_at_pi;
    double edge_min;
    double edge_max;
    bool flat;
    int sign;
};

struct BandStructure {
    double tau = 1.0;
    std::vector<double> k_grid; // interior midpoints of (0, pi/tau)
    std::vector<Band> bands;
    int n_fib = 0;
    double truncation_shift = 0.0; // doubling-test eigenvalue shift at the first k
    std::vector<std::string> notes;
};

/// Eigensolve the fiber over a k-grid and assemble branches by sorted
/// order within each sign (non-flat branches do not cross on the open
/// interval). A branch-count change across the grid is a resolution
/// failure. Flat-on-top-of-nonflat tangencies are reported in notes.
BandStructure band_structure(const FourierData& data, int k_count, int n_fib,
                             double flat_tol = 1e-9, double discard_floor = 1e-10);

/// Fiber-formula IDS: for each lambda, (1/pi) * Leb{k : E_n(k) > lambda}
/// summed over non-flat branches (inverse interpolation on the monotone
/// branch) plus (1/tau) per flat band above lambda.
spectra::IdsCurve ids_from_bands(const BandStructure& b, const std::vector<double>& lambda_grid);

/// Gap label N with nu((lambda,inf)) = N/tau; errors if lambda sits inside
/// a band.
int gap_labels(const BandStructure& b, double lambda);

} // namespace hankel::floquet
