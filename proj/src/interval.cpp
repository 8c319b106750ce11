#include "rz/interval.hpp"

#include <cmath>
#include <numbers>

namespace rz {

namespace {

// pi = kPiHi + kPiLo to about 107 bits.
constexpr double kPiHi = 3.141592653589793116e+00;
constexpr double kPiLo = 1.224646799147353207e-16;

// Inputs with larger magnitude skip argument reduction.
constexpr double kReductionLimit = 0x1p40;

/// Enclosure of m*pi for a small half-integer m.
Interval pi_multiple(double m) {
    const double prod = m * kPiHi;
    const double err = std::fma(m, kPiHi, -prod);
    const double center = prod + (err + m * kPiLo);
    return {rounding::down(rounding::down(center)), rounding::up(rounding::up(center))};
}

Interval widened_clamped(double v) {
    return {std::max(-1.0, rounding::down(v)), std::min(1.0, rounding::up(v))};
}

// Extrema of the waveform sit at (k + phase) * pi. Maxima are at even k,
// minima at odd k.
template <typename F>
Interval range_periodic(const Interval& x, F&& f, double phase) {
    const double width = x.hi() - x.lo();
    if (!(width < 2 * kPiHi) || x.mag() > kReductionLimit) return {-1.0, 1.0};

    const Interval a = widened_clamped(f(x.lo()));
    const Interval b = widened_clamped(f(x.hi()));
    double lo = std::min(a.lo(), b.lo());
    double hi = std::max(a.hi(), b.hi());

    const double first = std::floor(x.lo() / kPiHi - phase) - 1;
    const double last = std::ceil(x.hi() / kPiHi - phase) + 1;
    for (double k = first; k <= last; k += 1) {
        // A near miss is treated as a hit; that only loosens the enclosure.
        if (!pi_multiple(k + phase).intersects(x)) continue;
        if (std::fmod(k, 2.0) == 0) {
            hi = 1.0;
        } else {
            lo = -1.0;
        }
    }
    return {lo, hi};
}

}  // namespace

Interval range_cos(const Interval& x) {
    if (x == Interval(0.0)) return Interval(1.0);
    return range_periodic(x, [](double t) { return std::cos(t); }, 0.0);
}

Interval range_sin(const Interval& x) {
    if (x == Interval(0.0)) return Interval(0.0);
    return range_periodic(x, [](double t) { return std::sin(t); }, 0.5);
}

}  // namespace rz
