#pragma once

// Batch and streaming renderers: per-output-sample shape and phase control
// curves driving skew-grid (or reference cylinder) evaluation.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "helicon/kernel.hpp"
#include "helicon/skew_grid.hpp"
#include "helicon/tone.hpp"

namespace helicon {

// A control curve yields one value per output sample: shape time in waves or
// phase in cycles.  Built-in generators are pure functions of the sample
// index, so batch and streaming rendering see bit-identical values; explicit
// and accumulated curves are materialised up front.
class ControlCurve {
public:
    static ControlCurve constant(double value);
    static ControlCurve ramp(double start, double step);
    static ControlCurve sine_cycle(double center, double amplitude, double period_samples,
                                   double phase = 0.0);
    static ControlCurve zigzag_cycle(double base, double depth, double period_samples);
    // Running sum: value(0) = start, value(k) = start + increments[0..k).
    static ControlCurve accumulated(std::vector<double> increments, double start = 0.0);
    static ControlCurve samples(std::vector<double> values);
    // Ramp plus additive modulation (the phase-modulated accumulator).
    static ControlCurve modulated_ramp(double start, double step, ControlCurve modulator);

    double value(std::size_t k) const;
    // Length for finite curves (explicit samples / accumulated), nullopt for
    // generators.
    std::optional<std::size_t> length() const;
    std::vector<double> resolve(std::size_t count) const;

private:
    struct Constant { double value; };
    struct Ramp { double start, step; };
    struct SineCycle { double center, amplitude, period, phase; };
    struct ZigzagCycle { double base, depth, period; };
    struct Samples { std::vector<double> values; };
    struct Modulated;

    using Impl = std::variant<Constant, Ramp, SineCycle, ZigzagCycle, Samples,
                              std::shared_ptr<Modulated>>;
    explicit ControlCurve(Impl impl) : impl_(std::move(impl)) {}
    Impl impl_;
};

enum class RenderMode { batch, streaming };

struct RenderConfig {
    Kernel step = Kernel::hat();
    Kernel leap = Kernel::hat();
    RenderMode mode = RenderMode::batch;
    // Boundary policy is always clamping; no extrapolation.
};

// output[k] = eval_general(tone, clamp(shape(k)), periodise(phase(k))).
std::vector<double> render_batch(const SampledTone& tone, const ControlCurve& shape,
                                 const ControlCurve& phase, std::size_t count,
                                 const RenderConfig& cfg);

// Same contract routed through the direct cylinder evaluator; agrees with
// render_batch within interpolation round-off (~1e-12), not bit-exactly.
std::vector<double> render_batch_oracle(const SampledTone& tone, const ControlCurve& shape,
                                        const ControlCurve& phase, std::size_t count,
                                        const RenderConfig& cfg);

using SampleSource = std::function<std::optional<double>()>;

SampleSource source_from(std::vector<double> samples);

// Single-owner incremental renderer over a sample stream.  Holds a bounded
// window of input: at shape time t it needs nothing above
// floor(t*T) + step_max + leap_max*round(T) and, because the shape curve is
// nondecreasing, nothing below floor(t*T - round(T)) + step_min +
// leap_min*round(T); the window therefore never exceeds
//     round(T) * (1 + leap_max - leap_min) + (step_max - step_min) + 1
// samples (window_bound()).  Output is a bit-identical prefix of the batch
// render: when the stream ends, rendering stops at the last shape time whose
// interpolation data is complete.
class StreamingRenderer {
public:
    StreamingRenderer(SampleSource source, double period, ControlCurve shape, ControlCurve phase,
                      RenderConfig cfg);

    std::optional<double> next();
    std::vector<double> drain();

    std::size_t window_high_water() const { return high_water_; }
    std::size_t window_bound() const { return window_bound_; }
    // Input samples pulled while producing the most recent output sample.
    long long last_advance() const { return last_advance_; }

private:
    bool fill_to(long long keep_from, long long global_index);
    void trim_below(long long global_index);

    SampleSource source_;
    double period_;
    long long rounded_period_;
    ControlCurve shape_;
    ControlCurve phase_;
    RenderConfig cfg_;
    double t_min_;
    std::size_t window_bound_;

    std::vector<double> window_;
    long long window_first_ = 0;
    long long next_read_ = 0;
    bool exhausted_ = false;

    std::size_t k_ = 0;
    double prev_shape_ = 0.0;
    bool have_prev_shape_ = false;
    std::size_t high_water_ = 0;
    long long last_advance_ = 0;
};

}  // namespace helicon
