#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hankel/measures.hpp"
#include "hankel/rng.hpp"
#include "hankel/specfun.hpp"

#include <cmath>
#include <vector>

using namespace hankel;
using measures::AtomicMeasure;
using measures::Atom;
using measures::Axis;
using measures::DensityMeasure;

namespace {

AtomicMeasure random_sigma(SplitMix64& rng, int atoms) {
    std::vector<Atom> a;
    for (int i = 0; i < atoms; ++i) {
        const double t = std::pow(10.0, -3.0 + 6.0 * rng.next_double());
        a.push_back({t, rng.next_double()});
    }
    return AtomicMeasure(std::move(a), Axis::SigmaHalfLine);
}

// sup sigma((0,a))/a over a dense candidate grid: a just above each atom
// plus geometric fill-in. Lower-bounds the true sup and should match the
// scan at atom positions.
double carleson_brute(const AtomicMeasure& sigma) {
    double best = 0.0;
    std::vector<double> candidates;
    for (const auto& atom : sigma.atoms())
        for (double f : {1.0 + 1e-12, 1.1, 1.5, 2.0, 5.0})
            candidates.push_back(atom.position * f);
    for (double a : candidates) {
        double mass = 0.0;
        for (const auto& atom : sigma.atoms())
            if (atom.position < a) mass += atom.weight;
        best = std::max(best, mass / a);
    }
    return best;
}

} // namespace

TEST_CASE("pushforward of the rank-one projection measure") {
    const AtomicMeasure sigma({{1.0, 2.0}}, Axis::SigmaHalfLine);
    const AtomicMeasure Sigma = measures::pushforward_sigma_to_Sigma(sigma);
    REQUIRE(Sigma.size() == 1);
    CHECK(Sigma.atoms()[0].position == doctest::Approx(0.0));
    CHECK(Sigma.atoms()[0].weight == doctest::Approx(2.0));
    CHECK(Sigma.axis() == Axis::SigmaLine);
}

TEST_CASE("pushforward of the Lebesgue density is the constant density") {
    DensityMeasure s;
    s.axis = Axis::SigmaHalfLine;
    s.start = 0.1;
    s.step = 0.01;
    s.values.assign(1000, 1.0);
    const DensityMeasure S = measures::pushforward_sigma_to_Sigma(s);
    CHECK(S.axis == Axis::SigmaLine);
    for (double v : S.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pushforward round trip is the identity on atoms") {
    SplitMix64 rng(7);
    const AtomicMeasure sigma = random_sigma(rng, 40);
    const AtomicMeasure back =
        measures::pushforward_Sigma_to_sigma(measures::pushforward_sigma_to_Sigma(sigma));
    REQUIRE(back.size() == sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        CHECK(back.atoms()[i].position ==
              doctest::Approx(sigma.atoms()[i].position).epsilon(1e-14));
        CHECK(back.atoms()[i].weight == doctest::Approx(sigma.atoms()[i].weight).epsilon(1e-14));
    }
}

TEST_CASE("pushforward preserves 1/t-weighted mass exactly") {
    SplitMix64 rng(8);
    const AtomicMeasure sigma = random_sigma(rng, 60);
    const AtomicMeasure Sigma = measures::pushforward_sigma_to_Sigma(sigma);
    double expected = 0.0;
    for (const auto& a : sigma.atoms()) expected += a.weight / a.position;
    CHECK(Sigma.total_weight() == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("pushforward rejects wrong axis") {
    const AtomicMeasure Sigma({{0.0, 1.0}}, Axis::SigmaLine);
    CHECK_THROWS_AS(measures::pushforward_sigma_to_Sigma(Sigma), std::domain_error);
    CHECK_THROWS_AS((AtomicMeasure({{-1.0, 1.0}}, Axis::SigmaHalfLine)), std::domain_error);
}

TEST_CASE("carleson constant examples") {
    CHECK(measures::carleson_constant(AtomicMeasure({{1.0, 1.0}}, Axis::SigmaHalfLine)) ==
          doctest::Approx(1.0));
    CHECK(measures::carleson_constant(
              AtomicMeasure({{1.0, 1.0}, {2.0, 2.0}}, Axis::SigmaHalfLine)) ==
          doctest::Approx(1.5));
    CHECK(measures::carleson_constant(AtomicMeasure({}, Axis::SigmaHalfLine)) == 0.0);
}

TEST_CASE("carleson scan matches the brute-force grid sup") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const AtomicMeasure sigma = random_sigma(rng, 1 + static_cast<int>(rng.next_u64() % 20));
        const double exact = measures::carleson_constant(sigma);
        const double brute = carleson_brute(sigma);
        CHECK(exact >= brute * (1.0 - 1e-9));
        CHECK(exact <= brute * (1.0 + 1e-6));
    }
}

TEST_CASE("local bound: one atom of weight w per unit interval") {
    std::vector<Atom> atoms;
    for (int n = -20; n <= 20; ++n) atoms.push_back({static_cast<double>(n), 0.7});
    CHECK(measures::local_bound_constant(AtomicMeasure(std::move(atoms), Axis::SigmaLine)) ==
          doctest::Approx(0.7));
}

TEST_CASE("Carleson chain constants, both directions, on random measures") {
    SplitMix64 rng(2024);
    const double e = std::exp(1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const AtomicMeasure sigma = random_sigma(rng, 1 + static_cast<int>(rng.next_u64() % 30));
        const AtomicMeasure Sigma = measures::pushforward_sigma_to_Sigma(sigma);
        const double carleson = measures::carleson_constant(sigma);
        const double local = measures::local_bound_constant(Sigma);
        CHECK(local <= e * carleson * (1.0 + 1e-12));
        CHECK(carleson <= local / (1.0 - 1.0 / e) * (1.0 + 1e-12));
    }
}

TEST_CASE("support density of lattices") {
    std::vector<Atom> two;
    for (int n = -80; n <= 80; ++n) two.push_back({2.0 * n, 1.0});
    CHECK(measures::support_density(AtomicMeasure(std::move(two), Axis::SigmaLine), 100.0) ==
          doctest::Approx(0.5).epsilon(1e-12));

    std::vector<Atom> pis;
    for (int n = -80; n <= 80; ++n) pis.push_back({3.14159265358979323846 * n, 1.0});
    const double d = measures::support_density(AtomicMeasure(std::move(pis), Axis::SigmaLine), 100.0);
    CHECK(d == doctest::Approx(63.0 / 200.0));
    CHECK(std::abs(d - 1.0 / 3.14159265358979323846) < 1.0 / 100.0);

    CHECK(measures::support_density(AtomicMeasure({}, Axis::SigmaLine), 100.0) == 0.0);
}

TEST_CASE("blaschke kernel test") {
    std::vector<Atom> lattice;
    for (int n = -50; n <= 50; ++n) lattice.push_back({2.0 * 3.14159265358979323846 * n, 0.3});
    const auto r = measures::blaschke_kernel_test(AtomicMeasure(std::move(lattice), Axis::SigmaLine));
    // weights do not enter; frozen from direct summation of sech(2 pi n)
    CHECK(r.sum == doctest::Approx(1.0074837203450847).epsilon(1e-12));
    CHECK(r.kernel_infinite);

    std::vector<Atom> logs;
    for (int n = 2; n <= 4000; ++n) logs.push_back({std::log(static_cast<double>(n)), 1.0});
    const auto div = measures::blaschke_kernel_test(AtomicMeasure(std::move(logs), Axis::SigmaLine));
    CHECK_FALSE(div.kernel_infinite);

    const auto single = measures::blaschke_kernel_test(AtomicMeasure({{0.0, 5.0}}, Axis::SigmaLine));
    CHECK(single.sum == doctest::Approx(1.0));
    CHECK(single.kernel_infinite);
}

TEST_CASE("heavy-tail construction: blaschke sum stabilizes, density grows") {
    // Blaschke partial sums agree to 6 digits once the window passes the
    // sech tail, while the windowed support density keeps climbing.
    int stabilized = 0;
    int grew = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto m30 = measures::heavy_tail_cell_measure(30, seed);
        const auto m45 = measures::heavy_tail_cell_measure(45, seed);
        const double s30 = measures::blaschke_kernel_test(m30).sum;
        const double s45 = measures::blaschke_kernel_test(m45).sum;
        if (std::abs(s45 - s30) <= 1e-6 * std::max(1.0, std::abs(s45))) ++stabilized;
        const double d_small = measures::heavy_tail_support_density(1 << 6, seed);
        const double d_large = measures::heavy_tail_support_density(1 << 14, seed);
        if (d_large > d_small) ++grew;
    }
    CHECK(stabilized >= 9);
    CHECK(grew >= 8);
}

TEST_CASE("signed measures are rejected by positivity-dependent operations") {
    const AtomicMeasure s({{1.0, 1.0}, {2.0, -1.0}}, Axis::SigmaHalfLine, true);
    CHECK_THROWS_AS(measures::carleson_constant(s), std::invalid_argument);
    const AtomicMeasure S({{0.0, 1.0}, {1.0, -1.0}}, Axis::SigmaLine, true);
    CHECK_THROWS_AS(measures::local_bound_constant(S), std::invalid_argument);
    CHECK_THROWS(AtomicMeasure({{1.0, -1.0}}, Axis::SigmaHalfLine));
}
