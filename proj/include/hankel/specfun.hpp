#pragma once

#include <complex>

namespace hankel::specfun {

/// Elliptic modulus data for a given quarter-period ratio.
/// Satisfies k^2 + k_prime^2 = 1 and nome = exp(-pi*K_prime/K) in (0,1).
struct EllipticParams {
    double k;        // modulus, in (0,1)
    double k_prime;  // complementary modulus sqrt(1-k^2)
    double K;        // quarter period K(k)
    double K_prime;  // complementary quarter period K(k')
    double nome;     // exp(-pi*K'/K)
};

/// Principal branch log Gamma for Re z > 0 (Lanczos, g = 7, 9 terms).
/// Relative accuracy of exp(log_gamma) is ~1e-13 on Re z >= 1/2.
std::complex<double> log_gamma(std::complex<double> z);

/// |Gamma(1/2 - iu)|^2 = pi * sech(pi*u), evaluated from the closed form.
double gamma_abs2_half_line(double u);

/// B(1/2 - ia, 1/2 + ib) through log_gamma.
std::complex<double> beta_half_line(double a, double b);

/// sum_{n in Z} sech(pi*(2*pi*n/tau + k)), optionally with (-1)^n signs.
/// Terms are added outward from the peak and the sum stops once they fall
/// below 1e-18; absolute accuracy ~1e-15.
double lattice_sech_sum(double tau, double k, bool alternating = false);

/// Complete elliptic integral of the first kind, AGM iteration.
/// Requires 0 <= k < 1.
double elliptic_K(double k);

/// Solves K(k')/K(k) = tau/(2*pi) for the modulus by bisection.
EllipticParams modulus_from_period(double tau);

/// Jacobi dn and cn on the real line via their nome Fourier series,
/// truncated at terms below 1e-17.
double jacobi_dn(double u, const EllipticParams& p);
double jacobi_cn(double u, const EllipticParams& p);

/// sech with graceful underflow for large |x|.
double sech(double x);

} // namespace hankel::specfun
