#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "helicon/apps.hpp"
#include "helicon/cylinder.hpp"
#include "helicon/spectrum.hpp"
#include "support.hpp"

using namespace helicon;
using namespace testsupport;

namespace {

// Amplitude-modulated sine: unit carrier at 1 cycle/wave, envelope frequency
// `deviation` cycles/wave produces sidebands at 1 +- deviation.
SampledTone am_tone(double period, double waves, double deviation, double depth) {
    const auto count = static_cast<std::size_t>(std::ceil(period * waves));
    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / period;
        u[i] = (1.0 + depth * std::cos(kTau * deviation * t)) * std::sin(kTau * t);
    }
    return SampledTone(std::move(u), period);
}

}  // namespace

TEST_CASE("shift_and_scale maps frequencies as b*v + n*alpha") {
    const double T = 8.0;
    const double a = 1.2;
    auto tone = sine_tone(T, 560.0, a);
    RenderConfig cfg;
    cfg.step = Kernel::windowed_sinc(8);
    cfg.leap = Kernel::windowed_sinc(8);

    for (double alpha : {1.5, 2.0}) {
        const auto out = shift_and_scale(tone, ControlCurve::constant(alpha),
                                         ControlCurve::constant(1.0), cfg);
        REQUIRE(out.size() >= 4096 + 256);
        const std::vector<double> interior(out.begin() + 128, out.begin() + 128 + 4096);
        const auto mags = spectrum_magnitudes(interior, 4096);
        const double expected_bin = map_frequency(a, 1.0, alpha) / T * 4096.0;
        CHECK(std::abs(static_cast<double>(peak_bin(mags)) - expected_bin) <= 1.0);
    }
}

TEST_CASE("shift_and_scale identity keeps the interior untouched") {
    std::mt19937 rng(181);
    auto tone = random_tone(4.0, 12.0, rng);
    const auto out = shift_and_scale(tone, ControlCurve::constant(1.0),
                                     ControlCurve::constant(1.0), RenderConfig{});
    for (std::size_t k = 8; k + 8 < out.size(); ++k)
        CHECK(out[k] == doctest::Approx(tone.samples[k]).epsilon(1e-10));
}

TEST_CASE("frequency division by 5 keeps the length (ultrasound parameterisation)") {
    const double T = 10.0;
    auto tone = sine_tone(T, 80.0, 1.0);
    const auto out = shift_and_scale(tone, ControlCurve::constant(0.2),
                                     ControlCurve::constant(1.0), RenderConfig{});
    // Length preserved up to the interpolation margin.
    CHECK(out.size() >= tone.samples.size() - 2 * 10);
    CHECK(out.size() <= tone.samples.size());
    const std::vector<double> interior(out.begin() + 100, out.begin() + 100 + 512);
    const auto mags = spectrum_magnitudes(interior, 512);
    CHECK(peak_bin(mags) == static_cast<std::size_t>(std::llround(0.2 / T * 512.0)));
}

TEST_CASE("compression") {
    RenderConfig cfg;
    cfg.step = Kernel::cubic();
    cfg.leap = Kernel::cubic();

    SUBCASE("admissibility: v < 1/(2b)") {
        auto tone = am_tone(16.0, 60.0, 0.05, 0.5);
        CHECK_THROWS_WITH_AS(compress(tone, 12.0, 0.05, cfg), doctest::Contains("1/(2*"),
                             std::invalid_argument);
        CHECK_THROWS_AS(compress(tone, 10.0, 0.05, cfg), std::invalid_argument);  // v = 1/(2b)
        CHECK_NOTHROW(compress(tone, 4.0, 0.05, cfg));
        // b = 0.1: the largest admissible factor is 5, exclusively.
        CHECK_THROWS_AS(compress(tone, 5.0, 0.1, cfg), std::invalid_argument);
        CHECK_NOTHROW(compress(tone, 4.99, 0.1, cfg));
    }

    SUBCASE("round trip reconstructs the interior") {
        const double T = 16.0;
        auto tone = am_tone(T, 60.0, 0.05, 0.5);
        const double v = 4.0;
        const auto ct = compress(tone, v, 0.05, cfg);
        CHECK(ct.payload.size() < tone.samples.size() / v + 2);
        CHECK(ct.head.size() == static_cast<std::size_t>(std::llround(2 * T)));

        const auto back = decompress(ct, cfg);
        // Interior: skip the doubled interpolation margin at the start.
        const auto from = static_cast<std::size_t>((2.0 * 16.0 * v + 2 * T));
        const auto to = std::min(tone.samples.size(), back.samples.size()) -
                        static_cast<std::size_t>(4 * T);
        CHECK(snr_db(tone.samples, back.samples, from, to) >= 30.0);
    }

    SUBCASE("overdriving the factor folds the sidebands (direction check)") {
        const double T = 16.0;
        auto tone = am_tone(T, 120.0, 0.05, 0.5);
        const auto good = decompress(compress(tone, 4.0, 0.05, cfg), cfg);
        // Declared deviation lets v = 12 through; the content's 0.05 aliases.
        const auto bad = decompress(compress(tone, 12.0, 0.04, cfg), cfg);
        const auto from = static_cast<std::size_t>(2.0 * 16.0 * 12.0 + 2 * T);
        const auto to = std::min({tone.samples.size(), good.samples.size(), bad.samples.size()}) -
                        static_cast<std::size_t>(4 * T);
        CHECK(snr_db(tone.samples, bad.samples, from, to) <
              snr_db(tone.samples, good.samples, from, to));
    }

    SUBCASE("degradation ladder: larger factors reconstruct worse") {
        // Decaying tone; its spectral peak has nonzero width, so raising the
        // factor pushes more of it past the recoverable band.
        const double T = 16.0;
        const std::size_t waves = 320;
        std::vector<double> u(static_cast<std::size_t>(T) * waves);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double t = static_cast<double>(i) / T;
            u[i] = std::exp(-t / 60.0) * std::sin(kTau * t);
        }
        const SampledTone tone(u, T);

        std::vector<double> snrs;
        for (double v : {2.0, 5.0, 10.0, 25.0, 50.0}) {
            const double declared = 1.0 / (2.0 * v) - 1e-6;
            const auto back = decompress(compress(tone, v, declared, cfg), cfg);
            const auto from = static_cast<std::size_t>(2.0 * T * 50.0 + 2.0 * T);
            const auto to = std::min(tone.samples.size(), back.samples.size()) -
                            static_cast<std::size_t>(4 * T);
            snrs.push_back(snr_db(tone.samples, back.samples, from, to));
        }
        CAPTURE(snrs.front());
        CAPTURE(snrs.back());
        for (std::size_t i = 1; i < snrs.size(); ++i) CHECK(snrs[i] < snrs[i - 1] + 1.0);
        CHECK(snrs.front() > snrs.back() + 10.0);
    }

    SUBCASE("spectral peaks widen by the compression factor") {
        // AM sidebands at 1 +- 0.05 cycles/wave move to 1 +- 0.2 in the
        // compressed signal.
        const double T = 16.0;
        auto tone = am_tone(T, 80.0, 0.05, 0.8);
        const double v = 4.0;
        const auto ct = compress(tone, v, 0.05, cfg);
        REQUIRE(ct.payload.size() >= 256 + 16);
        const std::vector<double> window(ct.payload.begin() + 16, ct.payload.begin() + 16 + 256);
        const auto mags = spectrum_magnitudes(window, 256);
        const auto carrier = static_cast<std::size_t>(std::llround(1.0 / T * 256.0));   // 16
        const auto sideband = static_cast<std::size_t>(std::llround(1.2 / T * 256.0));  // ~19
        const auto old_sideband =
            static_cast<std::size_t>(std::llround(1.05 / T * 256.0));  // collapses onto 17
        CHECK(mags[sideband] > 5.0 * mags[sideband + 4]);
        CHECK(mags[sideband] > mags[old_sideband]);
        CHECK(mags[carrier] > mags[sideband]);
    }

    SUBCASE("grid and oracle engines agree") {
        auto tone = am_tone(16.0, 40.0, 0.05, 0.3);
        const auto a = compress(tone, 4.0, 0.05, cfg, Engine::grid);
        const auto b = compress(tone, 4.0, 0.05, cfg, Engine::oracle);
        REQUIRE(a.payload.size() == b.payload.size());
        for (std::size_t i = 0; i < a.payload.size(); ++i)
            CHECK(a.payload[i] == doctest::Approx(b.payload[i]).epsilon(1e-9));
        const auto da = decompress(a, cfg, Engine::grid);
        const auto db = decompress(a, cfg, Engine::oracle);
        REQUIRE(da.samples.size() == db.samples.size());
        for (std::size_t i = 0; i < da.samples.size(); ++i)
            CHECK(da.samples[i] == doctest::Approx(db.samples[i]).epsilon(1e-9));
    }

    SUBCASE("container round trip") {
        auto tone = am_tone(12.0, 40.0, 0.05, 0.3);
        const auto ct = compress(tone, 3.0, 0.05, cfg);
        const std::string path = "test_container.htc";
        write_compressed(ct, path);
        const auto loaded = read_compressed(path);
        std::remove(path.c_str());
        CHECK(loaded.period == ct.period);
        CHECK(loaded.factor == ct.factor);
        CHECK(loaded.max_deviation == ct.max_deviation);
        REQUIRE(loaded.head.size() == ct.head.size());
        REQUIRE(loaded.payload.size() == ct.payload.size());
        for (std::size_t i = 0; i < ct.payload.size(); ++i)
            CHECK(loaded.payload[i] == doctest::Approx(ct.payload[i]).epsilon(1e-6));
    }
}

TEST_CASE("upsampling a window") {
    const std::vector<double> w = {1.0, 2.0, 3.0};
    CHECK(upsample(w, 3) == std::vector<double>{1, 0, 0, 2, 0, 0, 3});
    CHECK(upsample(std::vector<double>{5.0}, 4) == std::vector<double>{5.0});
}

TEST_CASE("anti-aliasing smoother") {
    std::mt19937 rng(191);
    SUBCASE("unit window is the identity") {
        auto tone = random_tone(4.0, 8.0, rng);
        const auto smoothed = anti_alias(tone, std::vector<double>{1.0});
        CHECK(smoothed.samples == tone.samples);
    }
    SUBCASE("averaging equal waves changes nothing") {
        auto tone = periodic_tone(4, 10, rng);
        const auto smoothed = anti_alias(tone, std::vector<double>{0.5, 0.5});
        for (std::size_t i = 0; i < tone.samples.size(); ++i)
            CHECK(smoothed.samples[i] == doctest::Approx(tone.samples[i]).epsilon(1e-12));
    }
    SUBCASE("weights must sum to one") {
        auto tone = random_tone(4.0, 8.0, rng);
        CHECK_THROWS_AS(anti_alias(tone, std::vector<double>{0.5, 0.4}), std::invalid_argument);
    }
}

TEST_CASE("loop building") {
    std::mt19937 rng(193);
    const long long T = 8;
    auto tone = periodic_tone(T, 16, rng);
    RenderConfig cfg;

    LoopSpec spec;
    spec.intro_length = 2.0;
    spec.cycle_length = 4.0;
    spec.mode = LoopMode::zigzag;

    SUBCASE("zig-zag loop repeats verbatim and seams are clean") {
        const auto out = build_loop(tone, spec, cfg, 3);
        const std::size_t intro = 16;
        const std::size_t cycle = 32;
        REQUIRE(out.size() == intro + 3 * cycle);
        // Intro is copied verbatim.
        for (std::size_t i = 0; i < intro; ++i) CHECK(out[i] == tone.samples[i]);
        // Cycles repeat bit-identically, so the seam discontinuity over a
        // whole wave at the cycle boundary is exactly zero.
        for (std::size_t i = 0; i < 2 * cycle; ++i)
            CHECK(out[intro + i] == out[intro + i + cycle]);
        // The loop entry continues the intro: for exactly periodic input the
        // first looped sample equals the next source sample.
        CHECK(out[intro] == doctest::Approx(tone.samples[intro]).epsilon(1e-12));
    }
    SUBCASE("sine mode repeats as well") {
        spec.mode = LoopMode::sine;
        const auto out = build_loop(tone, spec, cfg, 2);
        const std::size_t intro = 16, cycle = 32;
        for (std::size_t i = 0; i < cycle; ++i) CHECK(out[intro + i] == out[intro + i + cycle]);
    }
    SUBCASE("loop duration doubles the spanned data") {
        // Depth defaults to half the cycle: 4 waves of output touch 2 waves
        // of source data.
        const auto out = build_loop(tone, spec, cfg, 1);
        CHECK(out.size() == 16 + 32);
        // h ranges over [2, 2 + depth] = [2, 4]: two waves spanned, four played.
    }
    SUBCASE("degenerate depth freezes the waveform") {
        spec.depth = 0.0;
        const auto out = build_loop(tone, spec, cfg, 2);
        const std::size_t intro = 16;
        for (std::size_t i = intro; i + T < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(out[i + T]).epsilon(1e-12));
    }
    SUBCASE("misaligned cycles are rejected") {
        spec.cycle_length = 2.5;
        CHECK_THROWS_AS(build_loop(tone, spec, cfg), std::invalid_argument);
        spec.cycle_length = 4.0;
        spec.intro_length = 0.25;  // not enough lead-in for interpolation
        CHECK_THROWS_AS(build_loop(tone, spec, cfg), std::invalid_argument);
    }
}

TEST_CASE("FM rendering") {
    const double T = 8.0;
    auto tone = sine_tone(T, 540.0, 1.0);
    RenderConfig cfg;

    SUBCASE("zero modulator reduces to plain shift and scale") {
        const auto plain = shift_and_scale(tone, ControlCurve::constant(2.0),
                                           ControlCurve::constant(1.0), cfg);
        const auto fm = fm_render(tone, 2.0, ControlCurve::constant(0.0), 1.0, cfg);
        REQUIRE(fm.size() == plain.size());
        for (std::size_t k = 0; k < fm.size(); ++k)
            CHECK(fm[k] == doctest::Approx(plain[k]).epsilon(1e-9));
    }
    SUBCASE("deterministic: identical inputs give bit-identical output") {
        std::vector<double> mod(512);
        for (std::size_t k = 0; k < mod.size(); ++k)
            mod[k] = 0.2 * std::sin(kTau * 2.0 * static_cast<double>(k) / T);
        const auto a = fm_render(tone, 2.0, ControlCurve::samples(mod), 1.0, cfg);
        const auto b = fm_render(tone, 2.0, ControlCurve::samples(mod), 1.0, cfg);
        CHECK(a == b);
    }
    SUBCASE("depth sweep keeps the fundamental at the carrier for integral input") {
        for (double depth : {0.05, 0.1, 0.2}) {
            std::vector<double> mod(4096 + 64);
            for (std::size_t k = 0; k < mod.size(); ++k)
                mod[k] = depth * std::sin(kTau * 2.0 * static_cast<double>(k) / T);
            const auto out = fm_render(tone, 2.0, ControlCurve::samples(mod), 1.0, cfg);
            REQUIRE(out.size() >= 4096 + 32);
            const std::vector<double> interior(out.begin() + 32, out.begin() + 32 + 4096);
            const auto mags = spectrum_magnitudes(interior, 4096);
            CHECK(peak_bin(mags) == static_cast<std::size_t>(std::llround(2.0 / T * 4096.0)));
        }
    }
    SUBCASE("modulation changes the waveform") {
        std::vector<double> mod(512, 0.0);
        for (std::size_t k = 0; k < mod.size(); ++k)
            mod[k] = 0.3 * std::sin(kTau * 2.0 * static_cast<double>(k) / T);
        const auto fm = fm_render(tone, 2.0, ControlCurve::samples(mod), 1.0, cfg);
        const auto plain = fm_render(tone, 2.0, ControlCurve::constant(0.0), 1.0, cfg);
        CHECK(max_abs_diff(fm, plain, 64, 256) > 0.05);
    }
}

TEST_CASE("tone from noise") {
    RenderConfig cfg;
    SUBCASE("stretching narrows the harmonic peaks of noise") {
        std::mt19937 rng(197);
        const double T = 16.0;
        // Pink-ish noise: integrated white noise, high-passed lightly.
        std::vector<double> noise(static_cast<std::size_t>(T * 600));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double state = 0.0;
        for (auto& s : noise) {
            state = 0.97 * state + dist(rng);
            s = state * 0.1;
        }
        const SampledTone tone(noise, T);

        const auto out = tone_from_noise(tone, 4.0, cfg);
        REQUIRE(out.size() >= 4096 + 64);
        const std::vector<double> in_win(tone.samples.begin() + 32,
                                         tone.samples.begin() + 32 + 4096);
        const std::vector<double> out_win(out.begin() + 64, out.begin() + 64 + 4096);
        const auto in_mags = spectrum_magnitudes(in_win, 4096);
        const auto out_mags = spectrum_magnitudes(out_win, 4096);

        // Energy concentration within +-2 bins of the harmonics of 1/T.
        auto concentration = [&](const std::vector<double>& mags) {
            const auto harmonic_spacing = 4096.0 / T;
            double near = 0.0, total = 0.0;
            for (std::size_t k = 1; k < mags.size(); ++k) {
                const double e = mags[k] * mags[k];
                total += e;
                const double nearest =
                    std::abs(static_cast<double>(k) -
                             std::round(static_cast<double>(k) / harmonic_spacing) * harmonic_spacing);
                if (nearest <= 2.0) near += e;
            }
            return near / total;
        };
        CHECK(concentration(out_mags) > concentration(in_mags));
    }
    SUBCASE("identity at stretch 1") {
        std::mt19937 rng(199);
        auto tone = random_tone(8.0, 20.0, rng);
        const auto out = tone_from_noise(tone, 1.0, cfg);
        for (std::size_t k = 16; k + 16 < out.size(); ++k)
            CHECK(out[k] == doctest::Approx(tone.samples[k]).epsilon(1e-10));
    }
    SUBCASE("a static sine passes through any stretch") {
        auto tone = sine_tone(8.0, 40.0, 1.0);
        const auto out = tone_from_noise(tone, 3.0, cfg);
        // Interior: past the one-wave clamp margin at shape rate 1/3.
        for (std::size_t k = 32; k < out.size(); ++k) {
            const double expected = std::sin(kTau * static_cast<double>(k) / 8.0);
            CHECK(out[k] == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}
