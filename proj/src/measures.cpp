#include "hankel/measures.hpp"

#include "hankel/rng.hpp"
#include "hankel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel::measures {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, Axis axis, bool is_signed)
    : axis_(axis), signed_(is_signed) {
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.position) || !std::isfinite(a.weight))
            throw std::invalid_argument("AtomicMeasure: non-finite atom");
        if (axis == Axis::SigmaHalfLine && !(a.position > 0.0))
            throw std::domain_error("AtomicMeasure: sigma atoms must have positive positions");
        if (!is_signed && a.weight < 0.0)
            throw std::invalid_argument("AtomicMeasure: negative weight in unsigned measure");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!atoms_.empty() && atoms_.back().position == a.position)
            atoms_.back().weight += a.weight;
        else
            atoms_.push_back(a);
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.weight == 0.0; });
}

double AtomicMeasure::total_weight() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.weight;
    return s;
}

void DensityMeasure::validate() const {
    if (!(step > 0.0))
        throw std::invalid_argument("DensityMeasure: grid step must be positive");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("DensityMeasure: values must be finite and >= 0");
}

AtomicMeasure pushforward_sigma_to_Sigma(const AtomicMeasure& sigma) {
    if (sigma.axis() != Axis::SigmaHalfLine)
        throw std::domain_error("pushforward: expected a sigma measure on (0,inf)");
    std::vector<Atom> out;
    out.reserve(sigma.size());
    for (const Atom& a : sigma.atoms())
        out.push_back({-std::log(a.position), a.weight / a.position});
    return AtomicMeasure(std::move(out), Axis::SigmaLine, sigma.is_signed());
}

DensityMeasure pushforward_sigma_to_Sigma(const DensityMeasure& sigma) {
    if (sigma.axis != Axis::SigmaHalfLine)
        throw std::domain_error("pushforward: expected a sigma measure on (0,inf)");
    sigma.validate();
    if (sigma.values.empty() || !(sigma.start > 0.0))
        throw std::domain_error("pushforward: density grid must start at t > 0");
    const std::size_t n = sigma.values.size();
    const double t_lo = sigma.start;
    const double t_hi = sigma.node(n - 1);
    DensityMeasure out;
    out.axis = Axis::SigmaLine;
    out.start = -std::log(t_hi);
    out.step = n > 1 ? (std::log(t_hi) - std::log(t_lo)) / static_cast<double>(n - 1) : 1.0;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = std::exp(-out.node(j));
        // S(xi) = s(e^{-xi}), with s read off the source grid by linear interpolation
        const double pos = (t - t_lo) / sigma.step;
        const double clamped = std::clamp(pos, 0.0, static_cast<double>(n - 1));
        const auto i0 = static_cast<std::size_t>(clamped);
        const std::size_t i1 = std::min(i0 + 1, n - 1);
        const double frac = clamped - static_cast<double>(i0);
        out.values[j] = sigma.values[i0] * (1.0 - frac) + sigma.values[i1] * frac;
    }
    return out;
}

AtomicMeasure pushforward_Sigma_to_sigma(const AtomicMeasure& Sigma) {
    if (Sigma.axis() != Axis::SigmaLine)
        throw std::domain_error("pushforward inverse: expected a Sigma measure on the line");
    std::vector<Atom> out;
    out.reserve(Sigma.size());
    for (const Atom& a : Sigma.atoms()) {
        const double t = std::exp(-a.position);
        out.push_back({t, a.weight * t});
    }
    return AtomicMeasure(std::move(out), Axis::SigmaHalfLine, Sigma.is_signed());
}

double carleson_constant(const AtomicMeasure& sigma) {
    if (sigma.axis() != Axis::SigmaHalfLine)
        throw std::domain_error("carleson_constant: expected a sigma measure on (0,inf)");
    if (sigma.is_signed())
        throw std::invalid_argument("carleson_constant: signed measures not admitted");
    double best = 0.0;
    double cumulative = 0.0;
    for (const Atom& a : sigma.atoms()) {
        cumulative += a.weight;
        best = std::max(best, cumulative / a.position);
    }
    return best;
}

double local_bound_constant(const AtomicMeasure& Sigma) {
    if (Sigma.axis() != Axis::SigmaLine)
        throw std::domain_error("local_bound_constant: expected a Sigma measure on the line");
    if (Sigma.is_signed())
        throw std::invalid_argument("local_bound_constant: signed measures not admitted");
    const auto& atoms = Sigma.atoms();
    double best = 0.0;
    double window = 0.0;
    std::size_t tail = 0;
    for (std::size_t head = 0; head < atoms.size(); ++head) {
        // grow the window starting at atom `tail` until it spans length 1
        window += atoms[head].weight;
        while (atoms[head].position - atoms[tail].position >= 1.0) {
            window -= atoms[tail].weight;
            ++tail;
        }
        best = std::max(best, window);
    }
    return best;
}

double local_bound_constant(const DensityMeasure& Sigma) {
    if (Sigma.axis != Axis::SigmaLine)
        throw std::domain_error("local_bound_constant: expected a Sigma measure on the line");
    Sigma.validate();
    const std::size_t n = Sigma.values.size();
    if (n == 0) return 0.0;
    const auto span = static_cast<std::size_t>(std::floor(1.0 / Sigma.step));
    double window = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        window += Sigma.values[i] * Sigma.step;
        if (i >= span) window -= Sigma.values[i - span] * Sigma.step;
        best = std::max(best, window);
    }
    return best;
}

double support_density(const AtomicMeasure& Sigma, double half_width) {
    if (!(half_width > 0.0))
        throw std::domain_error("support_density: window half-width must be positive");
    std::size_t count = 0;
    for (const Atom& a : Sigma.atoms())
        if (a.position >= -half_width && a.position < half_width) ++count;
    return static_cast<double>(count) / (2.0 * half_width);
}

BlaschkeResult blaschke_kernel_test(const AtomicMeasure& Sigma) {
    if (Sigma.axis() != Axis::SigmaLine)
        throw std::domain_error("blaschke_kernel_test: expected a Sigma measure on the line");
    std::vector<double> mag;
    mag.reserve(Sigma.size());
    for (const Atom& a : Sigma.atoms()) mag.push_back(std::abs(a.position));
    std::sort(mag.begin(), mag.end());

    BlaschkeResult r;
    for (double m : mag) r.sum += specfun::sech(m);

    // Quarter-tail ratio heuristic: with atoms ordered by |xi|, compare the
    // increment contributed by the last quarter against the previous
    // quarter. Geometric decay drives the ratio to zero; harmonic-like
    // growth keeps it near ln(4/3)/ln(3/2) ~ 0.71.
    const std::size_t n = mag.size();
    if (n < 8) {
        r.kernel_infinite = true;
        return r;
    }
    auto range_sum = [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += specfun::sech(mag[i]);
        return s;
    };
    const double last = range_sum(3 * n / 4, n);
    const double prev = range_sum(n / 2, 3 * n / 4);
    if (last <= 1e-12 * std::max(r.sum, 1.0))
        r.kernel_infinite = true;
    else
        r.kernel_infinite = (last < 0.5 * prev);
    return r;
}

namespace {

// x = 2^j with probability 2^-j for j >= 1; j capped at 26 so a single cell
// cannot dominate the atom budget.
long heavy_tail_draw(SplitMix64& rng) {
    const double u = std::max(rng.next_double(), 0x1.0p-60);
    const auto j = static_cast<long>(std::clamp(std::ceil(-std::log2(u)), 1.0, 26.0));
    return 1L << j;
}

} // namespace

AtomicMeasure heavy_tail_cell_measure(long cells, std::uint64_t seed) {
    std::vector<Atom> atoms;
    for (long m = -cells; m < cells; ++m) {
        SplitMix64 rng(SplitMix64::mix(seed, static_cast<std::uint64_t>(m + (1L << 40))));
        const long x = heavy_tail_draw(rng);
        const double w = 1.0 / static_cast<double>(x);
        for (long j = 0; j < x; ++j)
            atoms.push_back({static_cast<double>(m) + static_cast<double>(j) * w, w});
    }
    return AtomicMeasure(std::move(atoms), Axis::SigmaLine);
}

double heavy_tail_support_density(long cells, std::uint64_t seed) {
    double count = 0.0;
    for (long m = -cells; m < cells; ++m) {
        SplitMix64 rng(SplitMix64::mix(seed, static_cast<std::uint64_t>(m + (1L << 40))));
        count += static_cast<double>(heavy_tail_draw(rng));
    }
    return count / (2.0 * static_cast<double>(cells));
}

} // namespace hankel::measures
