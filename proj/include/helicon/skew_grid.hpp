#pragma once

// The efficient discrete evaluator.  Sample m of a tone with period T sits on
// the cylinder at shape time m/T and phase m/T mod 1.  The resulting grid is
// skew: the "step" axis follows the unit helix from one sample to the next,
// the "leap" axis jumps round(T) samples to (nearly) the same phase one wave
// later.  Locating the cell of a query (t, phi) costs a fixed handful of
// arithmetic operations:
//
//     l      = t - representative(phi)       (leap coordinate)
//     r      = t*T - frac(l)*round(T)        (grid position in samples)
//     n      = floor(r),  frac_r = r - n
//
// and the value is a separable interpolation with step weights at frac_r and
// leap weights at frac(l) over samples u(n + j + k*round(T)).

#include <span>

#include "helicon/kernel.hpp"
#include "helicon/phase.hpp"
#include "helicon/tone.hpp"

namespace helicon {

struct CellAddress {
    double r;       // grid position; n = floor(r), frac_r = r - n
    double frac_l;  // leap interpolation parameter in [0,1)

    long long n() const { return static_cast<long long>(split_fraction(r).integral); }
    double frac_r() const { return split_fraction(r).fraction; }
};

// Constant-time cell location; independent of the representative chosen for
// phi and of the signal length.
CellAddress cell_locate(double t, Phase phi, double period);

// lerp(xi, eta)(lambda) = xi + lambda*(eta - xi)
inline double lerp(double xi, double eta, double lambda) { return xi + lambda * (eta - xi); }

// Bilinear value on the skew cell (hat kernels in both directions, spelled
// out as nested lerps).
double eval_bilinear(const SampledTone& tone, double t, Phase phi);

// Separable step x leap interpolation over raw storage.  Valid global sample
// indices are [first_index, first_index + data.size()); the streaming
// renderer passes a sliding window here, batch evaluation passes the whole
// tone with first_index 0.  Out-of-range access raises BoundaryError naming
// the first missing index.
double eval_cell_raw(std::span<const double> data, long long first_index, double t,
                     double phase_rep, double period, const Kernel& step, const Kernel& leap);

double eval_general(const SampledTone& tone, double t, Phase phi, const Kernel& step,
                    const Kernel& leap);

// Shape times guaranteed evaluable for every phase.  t_min covers the leading
// interpolation margin (one wave for a hat leap kernel, matching the rule of
// forcing t in [0,1) up to 1); t_max is the analogous limit at the signal
// end.  A k-node leap kernel costs k waves of usable span in total.
struct TimeBounds {
    double t_min;
    double t_max;

    double clamp(double t) const { return t < t_min ? t_min : (t > t_max ? t_max : t); }
};

// Lower bound alone; needs no signal length (used by the streaming renderer).
double clamp_lower_bound(double period, const Kernel& step, const Kernel& leap);

TimeBounds compute_time_bounds(std::size_t length, double period, const Kernel& step,
                               const Kernel& leap);
inline TimeBounds compute_time_bounds(const SampledTone& tone, const Kernel& step,
                                      const Kernel& leap) {
    return compute_time_bounds(tone.samples.size(), tone.period, step, leap);
}

double clamp_time(double t, const SampledTone& tone, const Kernel& step, const Kernel& leap);

}  // namespace helicon
