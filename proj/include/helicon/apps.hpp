#pragma once

// Application front ends over the oscillator: combined pitch shifting and
// time scaling, the monophonic compression codec, loop building, FM synthesis
// and tone-from-noise stretching.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "helicon/oscillator.hpp"
#include "helicon/tone.hpp"

namespace helicon {

enum class Engine { grid, oracle };

// Per-output-sample shape and phase values ready for rendering; shared by the
// batch and streaming paths so both see identical curves.
struct RenderPlan {
    std::vector<double> shape;  // waves
    std::vector<double> phase;  // cycles
};

// Shape curve = running sum of the time factors, phase curve = running sum of
// the frequency factors (both in units of the input helix, i.e. factor/T per
// output sample).  The plan stops where the shape time passes the usable end
// of the tone, so no frozen tail is emitted.
RenderPlan plan_shift_and_scale(const SampledTone& tone, const ControlCurve& freq_factor,
                                const ControlCurve& time_factor, const RenderConfig& cfg);

std::vector<double> shift_and_scale(const SampledTone& tone, const ControlCurve& freq_factor,
                                    const ControlCurve& time_factor, const RenderConfig& cfg,
                                    Engine engine = Engine::grid);

// Container: magic "HTC1", T/v/b as float64 LE, head and payload lengths as
// uint32, then head and payload samples as float32 LE.
struct CompressedTone {
    double period;
    double factor;         // v > 1
    double max_deviation;  // b; reconstruction requires v < 1/(2b)
    std::vector<double> head;  // two verbatim leading periods
    std::vector<double> payload;
};

// Shrinks the shape time by factor v at phase rate 1.  Rejects v >= 1/(2b):
// a fractional frequency offset up to b is only recoverable below that bound.
CompressedTone compress(const SampledTone& tone, double factor, double max_deviation,
                        const RenderConfig& cfg, Engine engine = Engine::grid);

SampledTone decompress(const CompressedTone& ct, const RenderConfig& cfg,
                       Engine engine = Engine::grid);

void write_compressed(const CompressedTone& ct, const std::string& path);
CompressedTone read_compressed(const std::string& path);

// (upsample(w, c))[k] = w[k/c] when c divides k, else 0; length (|w|-1)*c + 1.
std::vector<double> upsample(std::span<const double> window, long long factor);

// Smooths across equal phases of consecutive waves: convolve with the window
// upsampled by round(T).  Window weights must sum to 1.
SampledTone anti_alias(const SampledTone& tone, std::span<const double> window);

enum class LoopMode { sine, zigzag };

struct LoopSpec {
    double intro_length;  // waves copied verbatim (also the interpolation margin)
    double cycle_length;  // waves per control cycle; cycle_length and cycle_length*T integral
    LoopMode mode = LoopMode::zigzag;
    double depth = -1.0;  // waves; < 0 means half the cycle length
};

// Verbatim intro followed by `cycles` repetitions of the loop cycle.  The
// shape time follows the sine or zig-zag cycle at constant phase rate 1, so
// consecutive cycles are bit-identical and the loop repeats seamlessly.
std::vector<double> build_loop(const SampledTone& tone, const LoopSpec& spec,
                               const RenderConfig& cfg, std::size_t cycles = 2,
                               Engine engine = Engine::grid);

// Pitch shift, time scale and phase modulation in one pass:
// g(k) = carrier*k/T + modulator(k), h(k) = time_factor*k/T.
std::vector<double> fm_render(const SampledTone& tone, double carrier,
                              const ControlCurve& modulator, double time_factor,
                              const RenderConfig& cfg, Engine engine = Engine::grid);

// Shape rate 1/stretch at phase rate 1; spectral peaks at the harmonics of
// 1/T narrow by the stretch factor.
std::vector<double> tone_from_noise(const SampledTone& tone, double stretch,
                                    const RenderConfig& cfg, Engine engine = Engine::grid);

}  // namespace helicon
