#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hankel/measures.hpp"
#include "hankel/operators.hpp"
#include "hankel/rng.hpp"
#include "hankel/specfun.hpp"
#include "hankel/spectra.hpp"

#include <cmath>

using namespace hankel;
using measures::Atom;
using measures::AtomicMeasure;
using measures::Axis;
using operators::CarlemanKernel;
using operators::GridWindow;
using operators::KernelSpec;
using operators::MeasureKernel;
using operators::PeriodicKernel;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson on [lo, hi] with an even number of panels near
// ceil((hi-lo)/step).
double simpson(double lo, double hi, double step, const std::function<double(double)>& f) {
    auto n = static_cast<long>(std::ceil((hi - lo) / step));
    if (n % 2) ++n;
    const double h = (hi - lo) / static_cast<double>(n);
    double acc = f(lo) + f(hi);
    for (long i = 1; i < n; ++i) acc += f(lo + h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

AtomicMeasure lattice_measure(double tau, int n_range, double weight = 1.0) {
    std::vector<Atom> atoms;
    for (int n = -n_range; n <= n_range; ++n) atoms.push_back({tau * n, weight});
    return AtomicMeasure(std::move(atoms), Axis::SigmaLine);
}

} // namespace

TEST_CASE("beta profile values and bounds") {
    CHECK(operators::beta_profile(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    const double norm2 =
        simpson(-40.0, 5.0, 1e-3, [](double x) { return std::pow(operators::beta_profile(x), 2); });
    CHECK(norm2 == doctest::Approx(0.5).epsilon(1e-9));
    SplitMix64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double xi = -30.0 + 40.0 * rng.next_double();
        CHECK(operators::beta_profile(xi) <= std::exp(-std::abs(xi) / 2.0) * (1.0 + 1e-14));
    }
}

TEST_CASE("kernel values") {
    const KernelSpec carleman = CarlemanKernel{};
    CHECK(operators::hankel_kernel_xy(carleman, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(operators::hankel_kernel_xy(carleman, 1.0, 3.0) ==
          doctest::Approx(0.5 / std::cosh(1.0)).epsilon(1e-14));

    const KernelSpec proj = MeasureKernel{AtomicMeasure({{0.0, 2.0}}, Axis::SigmaLine)};
    CHECK(operators::hankel_kernel_xy(proj, 0.0, 0.0) ==
          doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double x = -10.0 + 20.0 * rng.next_double();
        const double y = -10.0 + 20.0 * rng.next_double();
        CHECK(operators::hankel_kernel_xy(proj, x, y) ==
              doctest::Approx(2.0 * operators::beta_profile(x) * operators::beta_profile(y))
                  .epsilon(1e-13));
        // symmetry, both kernels
        CHECK(operators::hankel_kernel_xy(carleman, x, y) ==
              doctest::Approx(operators::hankel_kernel_xy(carleman, y, x)).epsilon(1e-15));
        CHECK(operators::hankel_kernel_xy(proj, x, y) ==
              doctest::Approx(operators::hankel_kernel_xy(proj, y, x)).epsilon(1e-15));
    }
}

TEST_CASE("laplace kernel and the diagonal identity") {
    const AtomicMeasure proj({{0.0, 2.0}}, Axis::SigmaLine);
    CHECK(operators::laplace_kernel_check(proj, 1.0) ==
          doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(operators::laplace_kernel_check(AtomicMeasure({}, Axis::SigmaLine), 1.0) == 0.0);

    const AtomicMeasure lattice = lattice_measure(2.0 * kPi, 30);
    const double h1 = operators::laplace_kernel_check(lattice, 1.0);
    CHECK(h1 > 0.0);
    CHECK(std::isfinite(h1));
    const KernelSpec spec = MeasureKernel{lattice};
    for (double x : {-1.3, 0.0, 0.4, 2.2}) {
        const double diag = operators::hankel_kernel_xy(spec, x, x);
        const double via_h = std::exp(x) * operators::laplace_kernel_check(lattice, 2.0 * std::exp(x));
        CHECK(diag == doctest::Approx(via_h).epsilon(1e-10));
    }
}

TEST_CASE("gram overlap closed form vs quadrature") {
    CHECK(operators::gram_overlap(3.7, 3.7) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(operators::gram_overlap(0.0, 2.0) ==
          doctest::Approx(0.32402713683194270).epsilon(1e-14));
    SplitMix64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const double a = -4.0 + 8.0 * rng.next_double();
        const double b = -4.0 + 8.0 * rng.next_double();
        const double lo = std::min(a, b) - 40.0;
        const double hi = std::max(a, b) + 5.0;
        const double quad = simpson(lo, hi, 1e-3, [&](double x) {
            return operators::beta_profile(x - a) * operators::beta_profile(x - b);
        });
        CHECK(std::abs(quad - operators::gram_overlap(a, b)) <= 1e-8);
    }
}

TEST_CASE("nystrom section: Carleman top eigenvalue and moments") {
    const KernelSpec carleman = CarlemanKernel{};
    const auto a20 = operators::nystrom_section(carleman, {20.0, 0.05});
    const auto a40 = operators::nystrom_section(carleman, {40.0, 0.05});
    const double top20 = spectra::eig_sym(a20.matrix).eigenvalues.maxCoeff();
    const double top40 = spectra::eig_sym(a40.matrix).eigenvalues.maxCoeff();
    CHECK(top40 > 3.10);
    CHECK(top40 <= kPi + 1e-9);
    CHECK(top40 > top20);
    CHECK(a40.matrix.squaredNorm() / 80.0 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("nystrom section: zero symbol gives the zero matrix") {
    PeriodicKernel zero;
    zero.tau = 2.0;
    zero.samples.assign(64, 0.0);
    const auto a = operators::nystrom_section(KernelSpec{zero}, {5.0, 0.1});
    CHECK(a.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nystrom eigenvalues respect the operator norm bound") {
    PeriodicKernel cosine;
    cosine.tau = 2.0;
    cosine.samples.resize(128);
    for (int i = 0; i < 128; ++i)
        cosine.samples[static_cast<std::size_t>(i)] = std::cos(2.0 * kPi * i / 128.0);
    const KernelSpec spec{cosine};
    const double c_h = operators::kernel_bound(spec);
    CHECK(c_h == doctest::Approx(1.0).epsilon(1e-3));
    const auto a = operators::nystrom_section(spec, {15.0, 0.05});
    const auto eigs = spectra::eig_sym(a.matrix).eigenvalues;
    CHECK(eigs.maxCoeff() <= kPi * c_h + 0.05 * c_h);
    CHECK(eigs.minCoeff() >= -kPi * c_h - 0.05 * c_h);
}

TEST_CASE("node cap is enforced") {
    CHECK_THROWS_AS(operators::nystrom_section(KernelSpec{CarlemanKernel{}}, {300.0, 0.05}),
                    std::runtime_error);
}

TEST_CASE("atom section: projection and decoupled pairs") {
    const auto one = operators::atom_section(AtomicMeasure({{0.0, 2.0}}, Axis::SigmaLine), 10.0);
    REQUIRE(one.matrix.rows() == 1);
    CHECK(one.matrix(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.scheme == 'b');

    const auto two =
        operators::atom_section(AtomicMeasure({{-20.0, 2.0}, {20.0, 2.0}}, Axis::SigmaLine), 30.0);
    const auto eigs = spectra::eig_sym(two.matrix).eigenvalues;
    CHECK(eigs(0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eigs(1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("atom section with signed weights: symmetric pair spectrum") {
    const AtomicMeasure signed_pair({{0.0, 1.0}, {kPi, -1.0}}, Axis::SigmaLine, true);
    const auto sec = operators::atom_section(signed_pair, 10.0);
    const auto eigs = spectra::eig_sym(sec.matrix).eigenvalues;
    REQUIRE(eigs.size() == 2);
    // 2x2 oracle: nonzero spectrum of Gamma*W with Gamma = [[1/2, g],[g, 1/2]],
    // W = diag(1,-1): +-sqrt(1/4 - g^2) with g = sech(pi/2)/2.
    const double g = 0.5 * specfun::sech(kPi / 2.0);
    const double lam = std::sqrt(0.25 - g * g);
    CHECK(eigs(0) == doctest::Approx(-lam).epsilon(1e-12));
    CHECK(eigs(1) == doctest::Approx(lam).epsilon(1e-12));
    CHECK(lam == doctest::Approx(0.45857616783363717).epsilon(1e-12));
}

TEST_CASE("atom section is PSD for unsigned weights") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Atom> atoms;
        const int n = 2 + static_cast<int>(rng.next_u64() % 30);
        for (int i = 0; i < n; ++i)
            atoms.push_back({-15.0 + 30.0 * rng.next_double(), 0.05 + rng.next_double()});
        const auto sec =
            operators::atom_section(AtomicMeasure(std::move(atoms), Axis::SigmaLine), 20.0);
        const auto eigs = spectra::eig_sym(sec.matrix).eigenvalues;
        CHECK(eigs.minCoeff() >= -1e-10 * std::max(eigs.cwiseAbs().maxCoeff(), 1.0));
    }
}

TEST_CASE("atom section translation covariance is exact") {
    // integer lattice and integer shift, so every position difference is
    // exactly representable and the sections are bitwise equal
    const double shift = 64.0;
    std::vector<Atom> base, moved;
    for (int n = -8; n <= 8; ++n) {
        base.push_back({2.0 * n, 1.0 + 0.25 * ((n % 3) + 1)});
        moved.push_back({2.0 * n + shift, 1.0 + 0.25 * ((n % 3) + 1)});
    }
    const auto a = operators::atom_section(AtomicMeasure(base, Axis::SigmaLine), 17.0, 0.0);
    const auto b = operators::atom_section(AtomicMeasure(moved, Axis::SigmaLine), 17.0, shift);
    REQUIRE(a.matrix.rows() == b.matrix.rows());
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sections are exactly symmetric") {
    const auto a = operators::nystrom_section(KernelSpec{CarlemanKernel{}}, {10.0, 0.1});
    CHECK((a.matrix - a.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const auto b = operators::atom_section(lattice_measure(2.0, 6), 10.0);
    CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel function bound follows from the local bound constant") {
    // t*h(t) <= (e/(e-1) + sum of geometric band peaks) * local_bound;
    // the bracket evaluates to < 2.2
    SplitMix64 rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Atom> atoms;
        const int n = 1 + static_cast<int>(rng.next_u64() % 25);
        for (int i = 0; i < n; ++i)
            atoms.push_back({-6.0 + 12.0 * rng.next_double(), rng.next_double()});
        const AtomicMeasure sigma(std::move(atoms), Axis::SigmaLine);
        const double local = measures::local_bound_constant(sigma);
        for (int j = 0; j <= 40; ++j) {
            const double t = std::pow(10.0, -4.0 + 8.0 * j / 40.0);
            CHECK(t * operators::laplace_kernel_check(sigma, t) <= 2.2 * local * (1.0 + 1e-12));
        }
    }
}
