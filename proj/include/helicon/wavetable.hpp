#pragma once

// Wavetable-oscillator baseline on the orthogonal grid: the signal is chopped
// into integral-length waves, the step axis runs along the phase within one
// wave, the leap axis along whole waves.  Interpolation does not wrap around
// at waveform boundaries.  Used as the comparison subject for the skew-grid
// method.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "helicon/oscillator.hpp"
#include "helicon/phase.hpp"

namespace helicon {

struct WavetableTone {
    WavetableTone(std::vector<double> samples_in, long long period_in)
        : samples(std::move(samples_in)), period(period_in) {
        if (period < 2)
            throw std::invalid_argument("wavetable period must be an integer >= 2");
        if (samples.size() < static_cast<std::size_t>(2 * period))
            throw std::invalid_argument("wavetable needs at least two waves, got " +
                                        std::to_string(samples.size()) + " samples");
    }

    std::size_t wave_count() const { return samples.size() / static_cast<std::size_t>(period); }

    std::vector<double> samples;
    long long period;  // integral only
};

// Bilinear value on the orthogonal grid:
//   s = T*representative(phi); n = T*floor(t) + floor(s)
//   y = lerp(lerp(u(n),u(n+1))(frac s), lerp(u(n+T),u(n+T+1))(frac s))(frac t)
double eval_wavetable(const WavetableTone& wt, double t, Phase phi);

// Largest shape time evaluable for every phase (no wrap-around, so the final
// step interpolation may reach one sample into the wave after next).
double wavetable_time_max(const WavetableTone& wt);

std::vector<double> render_batch_wavetable(const WavetableTone& wt, const ControlCurve& shape,
                                           const ControlCurve& phase, std::size_t count);

}  // namespace helicon
