#include "helicon/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "helicon/cylinder.hpp"
#include "helicon/errors.hpp"

namespace helicon {

struct ControlCurve::Modulated {
    double start;
    double step;
    ControlCurve modulator;
};

ControlCurve ControlCurve::constant(double value) { return ControlCurve(Constant{value}); }

ControlCurve ControlCurve::ramp(double start, double step) { return ControlCurve(Ramp{start, step}); }

ControlCurve ControlCurve::sine_cycle(double center, double amplitude, double period_samples,
                                      double phase) {
    if (!(period_samples >= 1.0))
        throw std::invalid_argument("sine cycle period must be at least one sample");
    return ControlCurve(SineCycle{center, amplitude, period_samples, phase});
}

ControlCurve ControlCurve::zigzag_cycle(double base, double depth, double period_samples) {
    if (!(period_samples >= 1.0))
        throw std::invalid_argument("zigzag cycle period must be at least one sample");
    return ControlCurve(ZigzagCycle{base, depth, period_samples});
}

ControlCurve ControlCurve::accumulated(std::vector<double> increments, double start) {
    std::vector<double> values(increments.size() + 1);
    double sum = start;
    values[0] = sum;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        sum += increments[i];
        values[i + 1] = sum;
    }
    return ControlCurve(Samples{std::move(values)});
}

ControlCurve ControlCurve::samples(std::vector<double> values) {
    return ControlCurve(Samples{std::move(values)});
}

ControlCurve ControlCurve::modulated_ramp(double start, double step, ControlCurve modulator) {
    return ControlCurve(std::make_shared<Modulated>(Modulated{start, step, std::move(modulator)}));
}

namespace {
// Cycle position in [0, period); exact integer arithmetic when the period is
// integral so repeated cycles see bit-identical arguments.
double cycle_position(std::size_t k, double period) {
    const double rounded = std::round(period);
    if (rounded == period && rounded >= 1.0) {
        const auto p = static_cast<unsigned long long>(rounded);
        return static_cast<double>(k % p);
    }
    return std::fmod(static_cast<double>(k), period);
}
}  // namespace

double ControlCurve::value(std::size_t k) const {
    struct Visitor {
        std::size_t k;
        double operator()(const Constant& c) const { return c.value; }
        double operator()(const Ramp& r) const { return r.start + static_cast<double>(k) * r.step; }
        double operator()(const SineCycle& s) const {
            const double pos = cycle_position(k, s.period);
            return s.center +
                   s.amplitude * std::sin(2.0 * std::numbers::pi * pos / s.period + s.phase);
        }
        double operator()(const ZigzagCycle& z) const {
            const double pos = cycle_position(k, z.period) / z.period;
            const double tri = pos < 0.5 ? 2.0 * pos : 2.0 * (1.0 - pos);
            return z.base + z.depth * tri;
        }
        double operator()(const Samples& s) const {
            if (k >= s.values.size())
                throw std::invalid_argument("control curve shorter than requested sample index");
            return s.values[k];
        }
        double operator()(const std::shared_ptr<Modulated>& m) const {
            return m->start + static_cast<double>(k) * m->step + m->modulator.value(k);
        }
    };
    return std::visit(Visitor{k}, impl_);
}

std::optional<std::size_t> ControlCurve::length() const {
    if (const auto* s = std::get_if<Samples>(&impl_)) return s->values.size();
    if (const auto* m = std::get_if<std::shared_ptr<Modulated>>(&impl_))
        return (*m)->modulator.length();
    return std::nullopt;
}

std::vector<double> ControlCurve::resolve(std::size_t count) const {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = value(k);
    return out;
}

namespace {
void check_curve_lengths(const ControlCurve& shape, const ControlCurve& phase, std::size_t count) {
    for (const auto* curve : {&shape, &phase}) {
        if (auto len = curve->length(); len && *len < count)
            throw std::invalid_argument("control curve supplies " + std::to_string(*len) +
                                        " values, render needs " + std::to_string(count));
    }
}
}  // namespace

std::vector<double> render_batch(const SampledTone& tone, const ControlCurve& shape,
                                 const ControlCurve& phase, std::size_t count,
                                 const RenderConfig& cfg) {
    check_curve_lengths(shape, phase, count);
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = bounds.clamp(shape.value(k));
        const double rep = representative(periodise(phase.value(k)));
        out.push_back(eval_cell_raw(tone.samples, 0, t, rep, tone.period, cfg.step, cfg.leap));
    }
    return out;
}

std::vector<double> render_batch_oracle(const SampledTone& tone, const ControlCurve& shape,
                                        const ControlCurve& phase, std::size_t count,
                                        const RenderConfig& cfg) {
    check_curve_lengths(shape, phase, count);
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
    const Cylinder cylinder(ContinuousSignal(tone, cfg.step), cfg.leap);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = bounds.clamp(shape.value(k));
        out.push_back(cylinder.value(t, periodise(phase.value(k))));
    }
    return out;
}

SampleSource source_from(std::vector<double> samples) {
    auto state = std::make_shared<std::pair<std::vector<double>, std::size_t>>(std::move(samples), 0);
    return [state]() -> std::optional<double> {
        if (state->second >= state->first.size()) return std::nullopt;
        return state->first[state->second++];
    };
}

StreamingRenderer::StreamingRenderer(SampleSource source, double period, ControlCurve shape,
                                     ControlCurve phase, RenderConfig cfg)
    : source_(std::move(source)),
      period_(period),
      rounded_period_(round_period(period)),
      shape_(std::move(shape)),
      phase_(std::move(phase)),
      cfg_(cfg),
      t_min_(clamp_lower_bound(period, cfg.step, cfg.leap)) {
    const long long rt = rounded_period_;
    window_bound_ = static_cast<std::size_t>(
        rt * (1 + cfg_.leap.max_offset() - cfg_.leap.min_offset()) +
        (cfg_.step.max_offset() - cfg_.step.min_offset()) + 1);
}

// Pull until global_index is buffered (or the stream ends).  Samples below
// keep_from are consumed and dropped; they will never be needed again.
bool StreamingRenderer::fill_to(long long keep_from, long long global_index) {
    while (!exhausted_ && next_read_ <= global_index) {
        if (auto sample = source_()) {
            if (next_read_ >= keep_from) {
                if (window_.empty()) window_first_ = next_read_;
                window_.push_back(*sample);
            }
            ++next_read_;
            ++last_advance_;
        } else {
            exhausted_ = true;
        }
    }
    high_water_ = std::max(high_water_, window_.size());
    return next_read_ > global_index;
}

void StreamingRenderer::trim_below(long long global_index) {
    if (window_.empty() || global_index <= window_first_) return;
    const auto drop = static_cast<std::size_t>(
        std::min<long long>(global_index - window_first_, static_cast<long long>(window_.size())));
    window_.erase(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(drop));
    window_first_ += static_cast<long long>(drop);
}

std::optional<double> StreamingRenderer::next() {
    if (auto len = shape_.length(); len && k_ >= *len) return std::nullopt;
    if (auto len = phase_.length(); len && k_ >= *len) return std::nullopt;

    const double h = shape_.value(k_);
    if (have_prev_shape_ && h < prev_shape_)
        throw std::invalid_argument("streaming shape control must be nondecreasing");
    prev_shape_ = h;
    have_prev_shape_ = true;

    const double t = std::max(h, t_min_);
    const long long rt = rounded_period_;
    const long long hi_needed = static_cast<long long>(std::floor(t * period_)) +
                                cfg_.step.max_offset() +
                                static_cast<long long>(cfg_.leap.max_offset()) * rt;
    const long long keep_from =
        static_cast<long long>(std::floor(t * period_ - static_cast<double>(rt))) +
        cfg_.step.min_offset() + static_cast<long long>(cfg_.leap.min_offset()) * rt;

    last_advance_ = 0;
    trim_below(keep_from);
    if (!fill_to(keep_from, hi_needed)) return std::nullopt;  // stream ended mid-wave: truncate

    const double rep = representative(periodise(phase_.value(k_)));
    const double value =
        eval_cell_raw(window_, window_first_, t, rep, period_, cfg_.step, cfg_.leap);
    ++k_;
    return value;
}

std::vector<double> StreamingRenderer::drain() {
    std::vector<double> out;
    while (auto sample = next()) out.push_back(*sample);
    return out;
}

}  // namespace helicon
