#pragma once

// Shared generators and measurement helpers for the test suites.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "helicon/tone.hpp"

namespace testsupport {

inline constexpr double kTau = 2.0 * std::numbers::pi;

// Sine with frequency `a` in cycles per wave, sampled at `period` samples per
// wave.
inline helicon::SampledTone sine_tone(double period, double waves, double a, double amplitude = 1.0,
                                      double phase = 0.0) {
    const auto count = static_cast<std::size_t>(std::ceil(period * waves));
    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i)
        u[i] = amplitude * std::sin(kTau * a * static_cast<double>(i) / period + phase);
    return helicon::SampledTone(std::move(u), period);
}

inline helicon::SampledTone random_tone(double period, double waves, std::mt19937& rng) {
    const auto count = static_cast<std::size_t>(std::ceil(period * waves));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(count);
    for (auto& s : u) s = dist(rng);
    return helicon::SampledTone(std::move(u), period);
}

// Exactly periodic tone (integral period): one random wave repeated.
inline helicon::SampledTone periodic_tone(long long period, std::size_t waves, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> wave(static_cast<std::size_t>(period));
    for (auto& s : wave) s = dist(rng);
    std::vector<double> u;
    u.reserve(wave.size() * waves);
    for (std::size_t w = 0; w < waves; ++w) u.insert(u.end(), wave.begin(), wave.end());
    return helicon::SampledTone(std::move(u), static_cast<double>(period));
}

inline double rms(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double snr_db(std::span<const double> reference, std::span<const double> test,
                     std::size_t from, std::size_t to) {
    double signal = 0.0;
    double noise = 0.0;
    for (std::size_t i = from; i < to; ++i) {
        signal += reference[i] * reference[i];
        const double e = reference[i] - test[i];
        noise += e * e;
    }
    if (noise == 0.0) return 1e9;
    return 10.0 * std::log10(signal / noise);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b, std::size_t from,
                           std::size_t to) {
    double m = 0.0;
    for (std::size_t i = from; i < to; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Energy outside a band around the fundamental relative to the energy inside,
// over DFT magnitudes (DC excluded).
inline double band_thd(std::span<const double> magnitudes, std::size_t center,
                       std::size_t half_width) {
    double inside = 0.0;
    double outside = 0.0;
    for (std::size_t k = 1; k < magnitudes.size(); ++k) {
        const double e = magnitudes[k] * magnitudes[k];
        if (k + half_width >= center && k <= center + half_width)
            inside += e;
        else
            outside += e;
    }
    return outside / inside;
}

}  // namespace testsupport
