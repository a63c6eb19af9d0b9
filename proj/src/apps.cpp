#include "helicon/apps.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "helicon/errors.hpp"
#include "helicon/skew_grid.hpp"

namespace helicon {

namespace {

std::vector<double> render(const SampledTone& tone, const ControlCurve& shape,
                           const ControlCurve& phase, std::size_t count, const RenderConfig& cfg,
                           Engine engine) {
    return engine == Engine::grid ? render_batch(tone, shape, phase, count, cfg)
                                  : render_batch_oracle(tone, shape, phase, count, cfg);
}

// Number of samples k (from 0) with ramp start + k*step <= limit.
std::size_t count_until(double start, double step, double limit) {
    if (step <= 0.0) throw std::invalid_argument("control rate must be positive");
    if (start > limit) return 0;
    auto n = static_cast<std::size_t>(std::floor((limit - start) / step)) + 1;
    while (n > 0 && start + static_cast<double>(n - 1) * step > limit) --n;
    return n;
}

}  // namespace

RenderPlan plan_shift_and_scale(const SampledTone& tone, const ControlCurve& freq_factor,
                                const ControlCurve& time_factor, const RenderConfig& cfg) {
    const double T = tone.period;
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);

    std::size_t limit = std::numeric_limits<std::size_t>::max();
    if (auto len = freq_factor.length()) limit = std::min(limit, *len);
    if (auto len = time_factor.length()) limit = std::min(limit, *len);

    RenderPlan plan;
    double h = 0.0;
    double g = 0.0;
    for (std::size_t k = 0; h <= bounds.t_max && k < limit; ++k) {
        plan.shape.push_back(h);
        plan.phase.push_back(g);
        const double v = time_factor.value(k);
        const double f = freq_factor.value(k);
        if (!(v > 0.0) || !(f > 0.0))
            throw std::invalid_argument("factor curves must stay positive");
        h += v / T;
        g += f / T;
    }
    return plan;
}

std::vector<double> shift_and_scale(const SampledTone& tone, const ControlCurve& freq_factor,
                                    const ControlCurve& time_factor, const RenderConfig& cfg,
                                    Engine engine) {
    RenderPlan plan = plan_shift_and_scale(tone, freq_factor, time_factor, cfg);
    const std::size_t count = plan.shape.size();
    return render(tone, ControlCurve::samples(std::move(plan.shape)),
                  ControlCurve::samples(std::move(plan.phase)), count, cfg, engine);
}

CompressedTone compress(const SampledTone& tone, double factor, double max_deviation,
                        const RenderConfig& cfg, Engine engine) {
    if (!(factor > 1.0)) throw std::invalid_argument("compression factor must exceed 1");
    if (max_deviation < 0.0) throw std::invalid_argument("max deviation must be nonnegative");
    if (max_deviation > 0.0 && factor >= 1.0 / (2.0 * max_deviation))
        throw std::invalid_argument(
            "compression factor " + std::to_string(factor) +
            " too large: frequency deviations up to " + std::to_string(max_deviation) +
            " are only recoverable for factors below 1/(2*" + std::to_string(max_deviation) +
            ") = " + std::to_string(1.0 / (2.0 * max_deviation)));

    const double T = tone.period;
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
    const std::size_t count = count_until(0.0, factor / T, bounds.t_max);

    CompressedTone ct;
    ct.period = T;
    ct.factor = factor;
    ct.max_deviation = max_deviation;

    const auto head_len =
        std::min(tone.samples.size(), static_cast<std::size_t>(std::llround(2.0 * T)));
    ct.head.assign(tone.samples.begin(), tone.samples.begin() + static_cast<std::ptrdiff_t>(head_len));
    ct.payload = render(tone, ControlCurve::ramp(0.0, factor / T), ControlCurve::ramp(0.0, 1.0 / T),
                        count, cfg, engine);
    return ct;
}

SampledTone decompress(const CompressedTone& ct, const RenderConfig& cfg, Engine engine) {
    const double T = ct.period;
    const double v = ct.factor;
    SampledTone shrunk(ct.payload, T);
    const TimeBounds bounds = compute_time_bounds(shrunk, cfg.step, cfg.leap);
    const std::size_t count = count_until(0.0, 1.0 / (v * T), bounds.t_max);

    std::vector<double> out = render(shrunk, ControlCurve::ramp(0.0, 1.0 / (v * T)),
                                     ControlCurve::ramp(0.0, 1.0 / T), count, cfg, engine);
    if (out.size() < ct.head.size()) out.resize(ct.head.size());
    std::copy(ct.head.begin(), ct.head.end(), out.begin());
    return SampledTone(std::move(out), T);
}

namespace {
constexpr char kMagic[4] = {'H', 'T', 'C', '1'};

void put_f64(std::ofstream& out, double value) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, 8);
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((bits >> (8 * i)) & 0xff));
}

void put_u32(std::ofstream& out, std::uint32_t value) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xff));
}

void put_f32(std::ofstream& out, float value) {
    std::uint32_t bits;
    std::memcpy(&bits, &value, 4);
    put_u32(out, bits);
}

double get_f64(std::ifstream& in) {
    unsigned char raw[8];
    if (!in.read(reinterpret_cast<char*>(raw), 8)) throw IoError("truncated compressed container");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(raw[i]) << (8 * i);
    double value;
    std::memcpy(&value, &bits, 8);
    return value;
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char raw[4];
    if (!in.read(reinterpret_cast<char*>(raw), 4)) throw IoError("truncated compressed container");
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(raw[i]) << (8 * i);
    return bits;
}

float get_f32(std::ifstream& in) {
    const std::uint32_t bits = get_u32(in);
    float value;
    std::memcpy(&value, &bits, 4);
    return value;
}
}  // namespace

void write_compressed(const CompressedTone& ct, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(kMagic, 4);
    put_f64(out, ct.period);
    put_f64(out, ct.factor);
    put_f64(out, ct.max_deviation);
    put_u32(out, static_cast<std::uint32_t>(ct.head.size()));
    put_u32(out, static_cast<std::uint32_t>(ct.payload.size()));
    for (double s : ct.head) put_f32(out, static_cast<float>(s));
    for (double s : ct.payload) put_f32(out, static_cast<float>(s));
    if (!out) throw IoError("failed writing '" + path + "'");
}

CompressedTone read_compressed(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("'" + path + "' is not a compressed tone container");
    CompressedTone ct;
    ct.period = get_f64(in);
    ct.factor = get_f64(in);
    ct.max_deviation = get_f64(in);
    const std::uint32_t head_len = get_u32(in);
    const std::uint32_t payload_len = get_u32(in);
    ct.head.resize(head_len);
    ct.payload.resize(payload_len);
    for (auto& s : ct.head) s = get_f32(in);
    for (auto& s : ct.payload) s = get_f32(in);
    return ct;
}

std::vector<double> upsample(std::span<const double> window, long long factor) {
    if (factor < 1) throw std::invalid_argument("upsampling factor must be >= 1");
    if (window.empty()) return {};
    std::vector<double> out(static_cast<std::size_t>((window.size() - 1) * factor + 1), 0.0);
    for (std::size_t i = 0; i < window.size(); ++i)
        out[i * static_cast<std::size_t>(factor)] = window[i];
    return out;
}

SampledTone anti_alias(const SampledTone& tone, std::span<const double> window) {
    if (window.empty()) throw std::invalid_argument("smoothing window must not be empty");
    double sum = 0.0;
    for (double w : window) sum += w;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("smoothing window weights must sum to 1");

    const long long rt = tone.rounded_period();
    const auto& u = tone.samples;
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        // Taps reach backward by whole (rounded) waves; near the front edge
        // the window renormalises over the taps that exist.
        double acc = 0.0;
        double used = 0.0;
        for (std::size_t j = 0; j < window.size(); ++j) {
            const long long idx = static_cast<long long>(i) - static_cast<long long>(j) * rt;
            if (idx < 0) break;
            acc += window[j] * u[static_cast<std::size_t>(idx)];
            used += window[j];
        }
        out[i] = used != 0.0 ? acc / used : u[i];
    }
    return SampledTone(std::move(out), tone.period);
}

std::vector<double> build_loop(const SampledTone& tone, const LoopSpec& spec,
                               const RenderConfig& cfg, std::size_t cycles, Engine engine) {
    const double T = tone.period;
    const double cycle_samples_real = spec.cycle_length * T;
    if (std::abs(spec.cycle_length - std::round(spec.cycle_length)) > 1e-9 ||
        std::abs(cycle_samples_real - std::round(cycle_samples_real)) > 1e-9 ||
        spec.cycle_length < 1.0)
        throw std::invalid_argument(
            "loop cycle misaligned with the wave period: the cycle must span a whole number "
            "of waves and samples");
    const auto cycle_samples = static_cast<std::size_t>(std::llround(cycle_samples_real));
    const double depth = spec.depth < 0.0 ? spec.cycle_length / 2.0 : spec.depth;

    const auto intro_samples = static_cast<std::size_t>(std::llround(spec.intro_length * T));
    if (intro_samples > tone.samples.size())
        throw std::invalid_argument("loop intro exceeds the tone length");
    const double h0 = static_cast<double>(intro_samples) / T;

    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
    if (h0 < bounds.t_min)
        throw std::invalid_argument("loop intro too short: the looped region needs " +
                                    std::to_string(bounds.t_min) + " waves of lead-in");
    if (h0 + depth > bounds.t_max)
        throw std::invalid_argument("loop depth reaches past the usable end of the tone");

    // Controls are functions of the position within one cycle only, so every
    // cycle renders bit-identically and phases match across the seam
    // (the cycle advances a whole number of waves).
    const std::size_t count = cycles * cycle_samples;
    std::vector<double> shape(count);
    std::vector<double> phase(count);
    const ControlCurve cycle_curve =
        spec.mode == LoopMode::zigzag
            ? ControlCurve::zigzag_cycle(h0, depth, static_cast<double>(cycle_samples))
            : ControlCurve::sine_cycle(h0 + depth / 2.0, depth / 2.0,
                                       static_cast<double>(cycle_samples),
                                       -std::numbers::pi / 2.0);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t pos = k % cycle_samples;
        shape[k] = cycle_curve.value(pos);
        phase[k] = static_cast<double>(intro_samples + pos) / T;
    }

    std::vector<double> looped = render(tone, ControlCurve::samples(std::move(shape)),
                                        ControlCurve::samples(std::move(phase)), count, cfg, engine);

    std::vector<double> out;
    out.reserve(intro_samples + looped.size());
    out.insert(out.end(), tone.samples.begin(),
               tone.samples.begin() + static_cast<std::ptrdiff_t>(intro_samples));
    out.insert(out.end(), looped.begin(), looped.end());
    return out;
}

std::vector<double> fm_render(const SampledTone& tone, double carrier,
                              const ControlCurve& modulator, double time_factor,
                              const RenderConfig& cfg, Engine engine) {
    if (!(carrier > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
    if (!(time_factor > 0.0)) throw std::invalid_argument("time factor must be positive");
    const double T = tone.period;
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);

    std::size_t count = count_until(0.0, time_factor / T, bounds.t_max);
    if (auto len = modulator.length()) count = std::min(count, *len);

    return render(tone, ControlCurve::ramp(0.0, time_factor / T),
                  ControlCurve::modulated_ramp(0.0, carrier / T, modulator), count, cfg, engine);
}

std::vector<double> tone_from_noise(const SampledTone& tone, double stretch,
                                    const RenderConfig& cfg, Engine engine) {
    if (!(stretch >= 1.0)) throw std::invalid_argument("stretch factor must be >= 1");
    const double T = tone.period;
    const TimeBounds bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
    const std::size_t count = count_until(0.0, 1.0 / (stretch * T), bounds.t_max);
    return render(tone, ControlCurve::ramp(0.0, 1.0 / (stretch * T)),
                  ControlCurve::ramp(0.0, 1.0 / T), count, cfg, engine);
}

}  // namespace helicon
