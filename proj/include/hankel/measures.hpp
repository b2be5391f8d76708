#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace hankel::measures {

/// Which axis a measure lives on: sigma is supported on (0, inf) and
/// parametrizes the Laplace representation; Sigma lives on the whole line
/// after the exponential change of variables.
enum class Axis { SigmaHalfLine, SigmaLine };

struct Atom {
    double position;
    double weight;
};

/// Finite atomic measure in canonical form: positions strictly increasing,
/// coincident positions merged, zero-weight atoms dropped. Unsigned unless
/// the signed flag is set; all positivity-dependent operations reject
/// signed input.
class AtomicMeasure {
public:
    AtomicMeasure() = default;
    AtomicMeasure(std::vector<Atom> atoms, Axis axis, bool is_signed = false);

    const std::vector<Atom>& atoms() const { return atoms_; }
    Axis axis() const { return axis_; }
    bool is_signed() const { return signed_; }
    std::size_t size() const { return atoms_.size(); }
    double total_weight() const;

private:
    std::vector<Atom> atoms_;
    Axis axis_ = Axis::SigmaLine;
    bool signed_ = false;
};

/// Density samples on a uniform grid; values are nonnegative and finite.
struct DensityMeasure {
    double start = 0.0;
    double step = 1.0;
    std::vector<double> values;
    Axis axis = Axis::SigmaLine;

    double node(std::size_t i) const { return start + step * static_cast<double>(i); }
    void validate() const;
};

using Measure = std::variant<AtomicMeasure, DensityMeasure>;

/// Exponential change of variables t -> xi = -log t. Atom (t, w) maps to
/// (-log t, w/t); a density s(t) maps to S(xi) = s(e^{-xi}).
AtomicMeasure pushforward_sigma_to_Sigma(const AtomicMeasure& sigma);
DensityMeasure pushforward_sigma_to_Sigma(const DensityMeasure& sigma);
AtomicMeasure pushforward_Sigma_to_sigma(const AtomicMeasure& Sigma);

/// sup over a > 0 of sigma((0,a))/a, exact for atomic input: the ratio is
/// piecewise c/a, so candidate maxima sit at atom positions.
double carleson_constant(const AtomicMeasure& sigma);

/// sup over x of Sigma([x, x+1)), the uniform (sliding-window) version of
/// the local boundedness constant. For atoms the sup is attained with the
/// window starting at an atom; exact two-pointer scan. Note this dominates
/// the integer-window maximum and agrees with it for lattice-aligned
/// measures; with this choice both Carleson chain inequalities
///   local <= e * carleson   and   carleson <= local / (1 - 1/e)
/// hold for every measure, not just in expectation.
double local_bound_constant(const AtomicMeasure& Sigma);
double local_bound_constant(const DensityMeasure& Sigma);

/// #(supp Sigma in [-M, M)) / (2M). Half-open so lattice measures with
/// period tau give exactly 1/tau when M is a multiple of tau.
double support_density(const AtomicMeasure& Sigma, double half_width);

struct BlaschkeResult {
    double sum = 0.0;            // sum of sech(xi) over distinct support points
    bool kernel_infinite = false; // partial sums look convergent (heuristic)
};

/// Blaschke-type kernel test: sums sech over the support (weights do not
/// enter) and applies a quarter-tail ratio heuristic to decide whether the
/// partial sums of the extrapolated family converge. Density input is
/// rejected: the criterion applies to pure point measures only.
BlaschkeResult blaschke_kernel_test(const AtomicMeasure& Sigma);
BlaschkeResult blaschke_kernel_test(const DensityMeasure&) = delete;

/// Heavy-tailed cell construction: on each unit interval [m, m+1) for
/// |m| <= cells, place x equidistant atoms of weight 1/x where
/// x = 2^j with probability 2^-j (j >= 1, capped at j = 26).
AtomicMeasure heavy_tail_cell_measure(long cells, std::uint64_t seed);

/// Support count of the same construction without materializing atoms;
/// used for density-growth scans over large windows.
double heavy_tail_support_density(long cells, std::uint64_t seed);

} // namespace hankel::measures
