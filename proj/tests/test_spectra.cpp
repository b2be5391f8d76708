#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hankel/measures.hpp"
#include "hankel/operators.hpp"
#include "hankel/rng.hpp"
#include "hankel/spectra.hpp"

#include <cmath>

using namespace hankel;
using measures::Atom;
using measures::AtomicMeasure;
using measures::Axis;
using operators::CarlemanKernel;
using operators::KernelSpec;
using operators::MeasureKernel;
using operators::PeriodicKernel;

namespace {

constexpr double kPi = 3.14159265358979323846;

AtomicMeasure lattice_measure(double tau, int n_range) {
    std::vector<Atom> atoms;
    for (int n = -n_range; n <= n_range; ++n) atoms.push_back({tau * n, 1.0});
    return AtomicMeasure(std::move(atoms), Axis::SigmaLine);
}

// Stieltjes moments of the Carleman IDS from the distribution function:
// integral of p * lambda^(p-1) * nu((lambda,inf)) over (0, pi) equals the
// p-th moment. Graded mesh lambda = pi u^2 tames the log singularity.
double carleman_moment(int p) {
    const int n = 40000; // even
    const double h = 1.0 / n;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double lam = kPi * u * u;
        const double dlam = 2.0 * kPi * u;
        return static_cast<double>(p) * std::pow(lam, p - 1) * spectra::carleman_ids(lam) * dlam;
    };
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) acc += f(i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("eig_sym basics") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const auto s = spectra::eig_sym(d);
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(s.eigenvalues(2) == doctest::Approx(3.0));

    Eigen::MatrixXd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    const auto sw = spectra::eig_sym(swap);
    CHECK(sw.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sw.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("eig_sym trace identity and residual on random matrices") {
    SplitMix64 rng(5);
    Eigen::MatrixXd a(50, 50);
    for (int i = 0; i < 50; ++i)
        for (int j = i; j < 50; ++j) {
            const double v = -1.0 + 2.0 * rng.next_double();
            a(i, j) = v;
            a(j, i) = v;
        }
    const auto s = spectra::eig_sym(a, true);
    CHECK(s.eigenvalues.sum() ==
          doctest::Approx(a.trace()).epsilon(1e-9));
    CHECK(s.residual <= 1e-10);
    // determinism for identical input
    const auto s2 = spectra::eig_sym(a, true);
    CHECK((s.eigenvalues - s2.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("carleman closed form") {
    CHECK(spectra::carleman_ids(kPi - 1e-12) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(spectra::carleman_ids(kPi) == 0.0);
    CHECK(spectra::carleman_ids(4.0) == 0.0);
    // frozen from the closed form ln(2+sqrt(3))/pi^2
    CHECK(spectra::carleman_ids(kPi / 2.0) == doctest::Approx(0.13343573292354629).epsilon(1e-13));
    CHECK_THROWS_AS(spectra::carleman_ids(0.0), std::domain_error);
    CHECK_THROWS_AS(spectra::carleman_ids(-1.0), std::domain_error);
}

TEST_CASE("carleman distribution matches its density and trace moments") {
    // d/dlambda of the distribution equals minus the density
    for (double lam : {0.5, 1.5, 2.5}) {
        const double h = 1e-5;
        const double fd =
            (spectra::carleman_ids(lam + h) - spectra::carleman_ids(lam - h)) / (2.0 * h);
        const double density = (1.0 / kPi) / (lam * std::sqrt(kPi * kPi - lam * lam));
        CHECK(fd == doctest::Approx(-density).epsilon(1e-6));
    }
    // moments pin the trace-consistent normalization: first moment equals
    // the diagonal value 1/2, second the squared kernel integral 1
    CHECK(carleman_moment(1) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(carleman_moment(2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("counting IDS approaches the Carleman closed form") {
    const KernelSpec carleman = CarlemanKernel{};
    std::vector<double> grid;
    for (int i = 0; i <= 46; ++i) grid.push_back(0.5 + 0.05 * i);
    const auto curve = spectra::ids_from_section(carleman, 'a', 40.0, 0.05, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(curve.value[i] - spectra::carleman_ids(grid[i])));
    CHECK(worst <= 0.02);
    // monotone nonincreasing and capped by node count
    for (std::size_t i = 1; i < curve.value.size(); ++i) CHECK(curve.value[i] <= curve.value[i - 1]);
    for (double v : curve.value) CHECK(v <= 1600.0 / 80.0);
}

TEST_CASE("scheme (b) counting on the single-band lattice") {
    const double tau = 2.0 * kPi;
    const KernelSpec spec = MeasureKernel{lattice_measure(tau, 40)};
    const auto curve = spectra::ids_from_section(spec, 'b', 100.0, 0.0, {0.3, 0.7});
    // all 31 atoms with tau*n in [-100, 100) stay above lambda = 0.3 < E_min
    CHECK(curve.value[0] == doctest::Approx(31.0 / 200.0));
    CHECK(std::abs(curve.value[0] - 1.0 / tau) <= 0.005);
    // above the band top nothing is left
    CHECK(curve.value[1] == 0.0);
}

TEST_CASE("IDS vanishes above the norm bound") {
    const KernelSpec carleman = CarlemanKernel{};
    const auto curve = spectra::ids_from_section(carleman, 'a', 20.0, 0.1, {kPi + 0.05});
    CHECK(curve.value[0] == 0.0);
}

TEST_CASE("scheme agreement for the zero operator") {
    const KernelSpec zero = MeasureKernel{AtomicMeasure({}, Axis::SigmaLine)};
    const spectra::SmoothBump phi{1.0, 3.0};
    const auto t = spectra::szego_triple(zero, 10.0, 0.1, phi);
    CHECK(t.restricted_kernel == 0.0);
    CHECK(t.projected == 0.0);
    CHECK(t.restricted_measure == 0.0);
}

TEST_CASE("szego triple: Carleman differences shrink with M") {
    const KernelSpec carleman = CarlemanKernel{};
    const spectra::SmoothBump phi{1.0, 3.0};
    double prev = 1e9;
    for (double m : {10.0, 20.0, 40.0}) {
        const auto t = spectra::szego_triple(carleman, m, 0.1, phi);
        const double d = std::max({std::abs(t.restricted_kernel - t.projected),
                                   std::abs(t.restricted_kernel - t.restricted_measure),
                                   std::abs(t.projected - t.restricted_measure)});
        CHECK(d < prev * 1.2);
        prev = d;
    }
}

TEST_CASE("szego triple: single-band lattice traces approach 1/tau") {
    // tau = 2 keeps the windows 10/20/40 commensurate with the lattice, so
    // scheme (b) counting is free of atom-count jitter; band ~ [0.045, 1.571]
    const double tau = 2.0;
    const KernelSpec spec = MeasureKernel{lattice_measure(tau, 60)};
    const spectra::SmoothBump phi{0.02, 0.04, 1.6, 2.0}; // ~1 across the band
    const auto t40 = spectra::szego_triple(spec, 40.0, 0.1, phi);
    CHECK(t40.restricted_measure == doctest::Approx(1.0 / tau).epsilon(1e-6));
    CHECK(std::abs(t40.projected - t40.restricted_measure) < 0.02);
    CHECK(std::abs(t40.restricted_kernel - 1.0 / tau) < 0.02);

    // a bump that varies across the band separates the schemes; the gap
    // closes as the window grows
    const spectra::SmoothBump varying{0.02, 2.0};
    const auto v10 = spectra::szego_triple(spec, 10.0, 0.1, varying);
    const auto v40 = spectra::szego_triple(spec, 40.0, 0.1, varying);
    const double d10 = std::max({std::abs(v10.restricted_kernel - v10.projected),
                                 std::abs(v10.restricted_kernel - v10.restricted_measure),
                                 std::abs(v10.projected - v10.restricted_measure)});
    const double d40 = std::max({std::abs(v40.restricted_kernel - v40.projected),
                                 std::abs(v40.restricted_kernel - v40.restricted_measure),
                                 std::abs(v40.projected - v40.restricted_measure)});
    CHECK(d40 < d10);
}

TEST_CASE("moment check") {
    const auto m = spectra::moment_check(KernelSpec{CarlemanKernel{}}, 40.0, 0.05);
    CHECK(m.second == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m.first == doctest::Approx(0.5).epsilon(0.02));
    CHECK(m.second <= 1.0 + 0.02);
    CHECK(m.first <= 0.5 + 0.01);

    PeriodicKernel zero;
    zero.tau = 2.0;
    zero.samples.assign(64, 0.0);
    const auto z = spectra::moment_check(KernelSpec{zero}, 10.0, 0.1);
    CHECK(z.first == 0.0);
    CHECK(z.second == 0.0);
}
