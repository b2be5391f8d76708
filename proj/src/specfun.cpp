#include "hankel/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hankel::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace

double sech(double x) {
    const double ax = std::abs(x);
    const double e = std::exp(-ax);
    return 2.0 * e / (1.0 + e * e);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw std::domain_error("log_gamma: requires Re z > 0");
    std::complex<double> acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (z + std::complex<double>(i - 1, 0.0));
    const std::complex<double> t = z + (kLanczosG - 0.5);
    // log of sqrt(2*pi) = 0.9189385332046727
    return 0.91893853320467274178 + (z - 0.5) * std::log(t) - t + std::log(acc);
}

double gamma_abs2_half_line(double u) {
    return kPi * sech(kPi * u);
}

std::complex<double> beta_half_line(double a, double b) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> lg = log_gamma(std::complex<double>(0.5, -a)) +
                                    log_gamma(std::complex<double>(0.5, b)) -
                                    log_gamma(1.0 - i * a + i * b);
    return std::exp(lg);
}

double lattice_sech_sum(double tau, double k, bool alternating) {
    if (!(tau > 0.0))
        throw std::domain_error("lattice_sech_sum: tau must be positive");
    constexpr double kTermFloor = 1e-18;
    const double step = 2.0 * kPi / tau;
    // Peak of sech(pi*(step*n + k)) sits near n0; sum outward from there.
    const long n0 = std::lround(-k / step);
    auto term = [&](long n) {
        double t = sech(kPi * (step * static_cast<double>(n) + k));
        if (alternating && (n & 1L)) t = -t;
        return t;
    };
    double sum = term(n0);
    for (long d = 1; d < 100000000L; ++d) {
        const double up = term(n0 + d);
        const double dn = term(n0 - d);
        sum += up + dn;
        if (std::abs(up) < kTermFloor && std::abs(dn) < kTermFloor) break;
    }
    return sum;
}

namespace {

double agm(double a, double b) {
    for (int it = 0; it < 64; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return a;
}

// K(k) expressed through the complementary modulus, K = pi / (2 agm(1, k')).
double elliptic_K_from_complement(double k_complement) {
    return kPi / (2.0 * agm(1.0, k_complement));
}

} // namespace

double elliptic_K(double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::domain_error("elliptic_K: requires 0 <= k < 1");
    return elliptic_K_from_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

EllipticParams modulus_from_period(double tau) {
    if (!(tau > 0.0))
        throw std::domain_error("modulus_from_period: tau must be positive");
    const double target = tau / (2.0 * kPi);
    // Bisection runs on theta with k = sin(theta), k' = cos(theta): the
    // modulus itself loses double resolution near k = 1, while theta keeps
    // both k and k' resolvable, so the 1e-12 ratio residual stays
    // reachable for small and large tau alike.
    // K'/K = agm(1, k') / agm(1, k), strictly decreasing in k.
    auto ratio = [](double theta) { return agm(1.0, std::cos(theta)) / agm(1.0, std::sin(theta)); };
    double lo = 1e-12, hi = 0.5 * kPi - 1e-12;
    if (ratio(lo) < target || ratio(hi) > target)
        throw std::runtime_error("modulus_from_period: target ratio outside bisection bracket");
    double mid = 0.25 * kPi;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double r = ratio(mid);
        if (std::abs(r - target) <= 1e-13) {
            converged = true;
            break;
        }
        if (r > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * mid) {
            converged = std::abs(ratio(mid) - target) <= 1e-12;
            break;
        }
    }
    if (!converged && std::abs(ratio(mid) - target) > 1e-12)
        throw std::runtime_error("modulus_from_period: bisection did not reach residual 1e-12");
    EllipticParams p;
    p.k = std::sin(mid);
    p.k_prime = std::cos(mid);
    p.K = elliptic_K_from_complement(p.k_prime);
    p.K_prime = elliptic_K_from_complement(p.k);
    p.nome = std::exp(-kPi * p.K_prime / p.K);
    return p;
}

double jacobi_dn(double u, const EllipticParams& p) {
    constexpr double kTermFloor = 1e-17;
    const double w = kPi * u / p.K;
    const double qpow = kPi * p.K_prime / p.K;
    double sum = kPi / (2.0 * p.K);
    for (int n = 1; n < 100000; ++n) {
        const double amp = (kPi / p.K) * sech(static_cast<double>(n) * qpow);
        sum += amp * std::cos(static_cast<double>(n) * w);
        if (amp < kTermFloor) break;
    }
    return sum;
}

double jacobi_cn(double u, const EllipticParams& p) {
    constexpr double kTermFloor = 1e-17;
    const double w = kPi * u / (2.0 * p.K);
    const double qpow = kPi * p.K_prime / (2.0 * p.K);
    double sum = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const double m = 2.0 * n + 1.0;
        const double amp = (kPi / (p.k * p.K)) * sech(m * qpow);
        sum += amp * std::cos(m * w);
        if (amp < kTermFloor) break;
    }
    return sum;
}

} // namespace hankel::specfun
