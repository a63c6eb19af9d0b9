#include "helicon/cli.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "helicon/apps.hpp"
#include "helicon/errors.hpp"
#include "helicon/spectrum.hpp"
#include "helicon/wav_io.hpp"
#include "helicon/wavetable.hpp"

namespace helicon {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

std::vector<double> read_csv_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            std::size_t used = 0;
            values.push_back(std::stod(line, &used));
            while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
            if (used != line.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw IoError("'" + path + "' line " + std::to_string(line_no) +
                          ": expected one real value per line");
        }
    }
    if (values.empty()) throw IoError("'" + path + "' contains no values");
    return values;
}

// Flag values of the form "<real>" or "csv:FILE".
ControlCurve parse_factor(const std::string& text) {
    if (text.rfind("csv:", 0) == 0) return ControlCurve::samples(read_csv_values(text.substr(4)));
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return ControlCurve::constant(value);
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected a real number or csv:FILE, got '" + text + "'");
    }
}

struct CommonOptions {
    std::string in_path;
    std::string out_path;
    double period = 0.0;
    std::string step_kernel = "linear";
    std::string leap_kernel = "linear";
    bool oracle = false;

    RenderConfig config() const {
        RenderConfig cfg;
        cfg.step = Kernel::parse(step_kernel);
        cfg.leap = Kernel::parse(leap_kernel);
        return cfg;
    }
    Engine engine() const { return oracle ? Engine::oracle : Engine::grid; }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_out = true) {
    cmd->add_option("--in", opt.in_path, "input file")->required();
    if (needs_out) cmd->add_option("--out", opt.out_path, "output file")->required();
    cmd->add_option("--period", opt.period, "wave period of the input in samples (may be fractional)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--step-kernel", opt.step_kernel,
                    "interpolation along the helix: constant, linear, cubic, sinc:<radius>");
    cmd->add_option("--leap-kernel", opt.leap_kernel, "interpolation across waves (same choices)");
    cmd->add_flag("--oracle", opt.oracle, "render through the direct cylinder evaluator");
}

SampledTone load_tone(const CommonOptions& opt, AudioFile* audio_out = nullptr) {
    AudioFile audio = read_wav(opt.in_path);
    if (audio_out) *audio_out = audio;
    return SampledTone(std::move(audio.samples), opt.period);
}

void store(const CommonOptions& opt, const AudioFile& like, std::vector<double> samples) {
    AudioFile out;
    out.sample_rate = like.sample_rate;
    out.encoding = like.encoding;
    out.samples = std::move(samples);
    write_wav(opt.out_path, out);
}

// Units for curve CSV files: waves = absolute shape times, cycles = absolute
// phase values, increments = per-sample increments (accumulated).
enum class CurveRole { shape, phase };

ControlCurve load_curve(const std::string& path, const std::string& unit, CurveRole role) {
    std::vector<double> values = read_csv_values(path);
    if (unit == "increments") return ControlCurve::accumulated(std::move(values));
    if (unit == "waves") {
        if (role != CurveRole::shape)
            throw CLI::ValidationError("--curve-unit waves only applies to shape curves");
        return ControlCurve::samples(std::move(values));
    }
    if (unit == "cycles") {
        if (role != CurveRole::phase)
            throw CLI::ValidationError("--curve-unit cycles only applies to phase curves");
        return ControlCurve::samples(std::move(values));
    }
    throw CLI::ValidationError("--curve-unit must be waves, cycles or increments");
}

int run_shift_like(const CommonOptions& opt, const std::string& freq_text,
                   const std::string& time_text, const std::string& shape_file,
                   const std::string& phase_file, const std::string& curve_unit, bool streaming) {
    AudioFile audio;
    const SampledTone tone = load_tone(opt, &audio);
    RenderConfig cfg = opt.config();
    cfg.mode = streaming ? RenderMode::streaming : RenderMode::batch;
    const ControlCurve freq = parse_factor(freq_text);
    const ControlCurve time = parse_factor(time_text);

    RenderPlan plan = plan_shift_and_scale(tone, freq, time, cfg);

    // Direct per-sample curves override the factor-derived plan.
    if (!shape_file.empty()) {
        const ControlCurve c = load_curve(shape_file, curve_unit, CurveRole::shape);
        plan.shape = c.resolve(*c.length());
        const auto bounds = compute_time_bounds(tone, cfg.step, cfg.leap);
        while (!plan.shape.empty() && plan.shape.back() > bounds.t_max) plan.shape.pop_back();
    }
    if (!phase_file.empty()) {
        const ControlCurve c = load_curve(phase_file, curve_unit, CurveRole::phase);
        plan.phase = c.resolve(*c.length());
    }
    const std::size_t count = std::min(plan.shape.size(), plan.phase.size());
    plan.shape.resize(count);
    plan.phase.resize(count);
    const ControlCurve shape = ControlCurve::samples(std::move(plan.shape));
    const ControlCurve phase = ControlCurve::samples(std::move(plan.phase));

    std::vector<double> out;
    if (streaming) {
        if (opt.oracle)
            throw CLI::ValidationError("--oracle applies to batch rendering only");
        StreamingRenderer renderer(source_from(tone.samples), tone.period, shape, phase, cfg);
        out = renderer.drain();
    } else if (opt.oracle) {
        out = render_batch_oracle(tone, shape, phase, count, cfg);
    } else {
        out = render_batch(tone, shape, phase, count, cfg);
    }
    store(opt, audio, std::move(out));
    return kExitOk;
}

int run_bench(const CommonOptions& opt, const std::string& method, double freq_factor,
              double time_factor) {
    AudioFile audio;
    const SampledTone tone = load_tone(opt, &audio);
    const double T = tone.period;

    std::vector<double> out;
    const auto start = std::chrono::steady_clock::now();
    if (method == "helix") {
        out = shift_and_scale(tone, ControlCurve::constant(freq_factor),
                              ControlCurve::constant(time_factor), opt.config());
    } else if (method == "wavetable") {
        if (std::abs(T - std::round(T)) > 1e-12)
            throw CLI::ValidationError("the wavetable method needs an integral period");
        const WavetableTone wt(tone.samples, llround(T));
        const double t_max = wavetable_time_max(wt);
        std::size_t count = 0;
        while (static_cast<double>(count) * time_factor / T <= t_max) ++count;
        out = render_batch_wavetable(wt, ControlCurve::ramp(0.0, time_factor / T),
                                     ControlCurve::ramp(0.0, freq_factor / T), count);
    } else {
        throw CLI::ValidationError("--method must be helix or wavetable");
    }
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();

    std::cout << method << ": " << out.size() << " samples in " << seconds * 1e3 << " ms ("
              << (out.empty() ? 0.0 : seconds * 1e9 / static_cast<double>(out.size()))
              << " ns/sample)\n";
    if (!opt.out_path.empty()) store(opt, audio, std::move(out));
    return kExitOk;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"monophonic pitch shifting and time scaling"};
    app.require_subcommand(1);

    // shift / stretch
    CommonOptions shift_opt, stretch_opt;
    std::string shift_freq = "1", shift_time = "1";
    std::string stretch_freq = "1", stretch_time = "1";
    std::string shift_shape_curve, shift_phase_curve, shift_unit = "increments";
    std::string stretch_shape_curve, stretch_phase_curve, stretch_unit = "increments";
    bool shift_streaming = false, stretch_streaming = false;

    auto* shift = app.add_subcommand("shift", "change the pitch, keep the pace");
    add_common(shift, shift_opt);
    shift->add_option("--freq-factor", shift_freq, "frequency factor (real or csv:FILE)")->required();
    shift->add_option("--time-factor", shift_time, "shape-progress factor (real or csv:FILE)");
    shift->add_option("--shape-curve", shift_shape_curve, "per-sample shape curve CSV (overrides)");
    shift->add_option("--phase-curve", shift_phase_curve, "per-sample phase curve CSV (overrides)");
    shift->add_option("--curve-unit", shift_unit, "curve CSV values: waves, cycles or increments");
    shift->add_flag("--streaming", shift_streaming, "render through the streaming oscillator");

    auto* stretch = app.add_subcommand("stretch", "change the pace, keep the pitch");
    add_common(stretch, stretch_opt);
    stretch->add_option("--time-factor", stretch_time, "shape-progress factor (real or csv:FILE)")
        ->required();
    stretch->add_option("--freq-factor", stretch_freq, "frequency factor (real or csv:FILE)");
    stretch->add_option("--shape-curve", stretch_shape_curve,
                        "per-sample shape curve CSV (overrides)");
    stretch->add_option("--phase-curve", stretch_phase_curve,
                        "per-sample phase curve CSV (overrides)");
    stretch->add_option("--curve-unit", stretch_unit,
                        "curve CSV values: waves, cycles or increments");
    stretch->add_flag("--streaming", stretch_streaming, "render through the streaming oscillator");

    // compress / decompress
    CommonOptions compress_opt, decompress_opt;
    double compress_factor = 0.0, compress_deviation = 0.0;
    std::string smooth_path;
    double decompress_rate = 44100.0;

    auto* compress_cmd = app.add_subcommand("compress", "shrink the time scale into a container");
    add_common(compress_cmd, compress_opt);
    compress_cmd->add_option("--factor", compress_factor, "shrink factor v > 1")->required();
    compress_cmd
        ->add_option("--max-deviation", compress_deviation,
                     "largest fractional frequency offset b to preserve (bound: v < 1/(2b))")
        ->required();
    compress_cmd->add_option("--smooth", smooth_path, "anti-aliasing window CSV applied first");

    auto* decompress_cmd = app.add_subcommand("decompress", "restore a compressed container");
    decompress_cmd->add_option("--in", decompress_opt.in_path, "input container")->required();
    decompress_cmd->add_option("--out", decompress_opt.out_path, "output WAV")->required();
    decompress_cmd->add_option("--rate", decompress_rate, "sample rate for the output WAV");
    decompress_cmd->add_option("--step-kernel", decompress_opt.step_kernel, "step interpolation");
    decompress_cmd->add_option("--leap-kernel", decompress_opt.leap_kernel, "leap interpolation");
    decompress_cmd->add_flag("--oracle", decompress_opt.oracle, "use the cylinder evaluator");

    // loop
    CommonOptions loop_opt;
    std::string loop_mode = "zigzag";
    double loop_cycle = 0.0, loop_intro = 0.0, loop_depth = -1.0;
    std::size_t loop_cycles = 2;

    auto* loop_cmd = app.add_subcommand("loop", "build a seamlessly loopable rendition");
    add_common(loop_cmd, loop_opt);
    loop_cmd->add_option("--mode", loop_mode, "time control cycle: sine or zigzag");
    loop_cmd->add_option("--cycle", loop_cycle, "cycle length in waves (whole waves)")->required();
    loop_cmd->add_option("--intro", loop_intro, "verbatim lead-in length in waves")->required();
    loop_cmd->add_option("--depth", loop_depth, "cycle depth in waves (default: half the cycle)");
    loop_cmd->add_option("--cycles", loop_cycles, "number of rendered cycles");

    // fm
    CommonOptions fm_opt;
    double fm_carrier = 0.0, fm_time = 1.0;
    std::string fm_mod, fm_unit = "cycles";

    auto* fm_cmd = app.add_subcommand("fm", "pitch shift with per-sample phase modulation");
    add_common(fm_cmd, fm_opt);
    fm_cmd->add_option("--carrier", fm_carrier, "carrier frequency factor")->required();
    fm_cmd->add_option("--mod", fm_mod, "phase modulator curve, csv:FILE")->required();
    fm_cmd->add_option("--time-factor", fm_time, "shape-progress factor");
    fm_cmd->add_option("--curve-unit", fm_unit, "modulator values: cycles or increments");

    // noisetone
    CommonOptions noise_opt;
    double noise_factor = 0.0;

    auto* noise_cmd = app.add_subcommand("noisetone", "turn any sound into a tone by stretching");
    add_common(noise_cmd, noise_opt);
    noise_cmd->add_option("--factor", noise_factor, "stretch factor n >= 1")->required();

    // spectrum
    CommonOptions spec_opt;
    std::size_t spec_size = 4096;
    std::string spec_csv;

    auto* spec_cmd = app.add_subcommand("spectrum", "magnitude spectrum of a WAV");
    spec_cmd->add_option("--in", spec_opt.in_path, "input WAV")->required();
    spec_cmd->add_option("--period", spec_opt.period, "wave period in samples")->required();
    spec_cmd->add_option("--size", spec_size, "transform size (power of two)");
    spec_cmd->add_option("--csv-out", spec_csv, "write bin,freq_per_wave,magnitude rows");

    // bench
    CommonOptions bench_opt;
    std::string bench_method = "helix";
    double bench_freq = 1.0, bench_time = 1.0;

    auto* bench_cmd = app.add_subcommand("bench", "time a render with either method");
    bench_cmd->add_option("--in", bench_opt.in_path, "input WAV")->required();
    bench_cmd->add_option("--out", bench_opt.out_path, "optional output WAV");
    bench_cmd->add_option("--period", bench_opt.period, "wave period in samples")->required();
    bench_cmd->add_option("--method", bench_method, "helix or wavetable")->required();
    bench_cmd->add_option("--freq-factor", bench_freq, "frequency factor");
    bench_cmd->add_option("--time-factor", bench_time, "shape-progress factor");
    bench_cmd->add_option("--step-kernel", bench_opt.step_kernel, "step interpolation");
    bench_cmd->add_option("--leap-kernel", bench_opt.leap_kernel, "leap interpolation");

    std::vector<const char*> argv;
    argv.push_back("helicon");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (shift->parsed())
        return run_shift_like(shift_opt, shift_freq, shift_time, shift_shape_curve,
                              shift_phase_curve, shift_unit, shift_streaming);
    if (stretch->parsed())
        return run_shift_like(stretch_opt, stretch_freq, stretch_time, stretch_shape_curve,
                              stretch_phase_curve, stretch_unit, stretch_streaming);

    if (compress_cmd->parsed()) {
        AudioFile audio;
        SampledTone tone = load_tone(compress_opt, &audio);
        if (!smooth_path.empty()) tone = anti_alias(tone, read_csv_values(smooth_path));
        const CompressedTone ct =
            compress(tone, compress_factor, compress_deviation, compress_opt.config(),
                     compress_opt.engine());
        write_compressed(ct, compress_opt.out_path);
        return kExitOk;
    }

    if (decompress_cmd->parsed()) {
        const CompressedTone ct = read_compressed(decompress_opt.in_path);
        const SampledTone tone =
            decompress(ct, decompress_opt.config(), decompress_opt.engine());
        AudioFile out;
        out.sample_rate = static_cast<std::uint32_t>(decompress_rate);
        out.encoding = WavEncoding::float32;
        out.samples = tone.samples;
        write_wav(decompress_opt.out_path, out);
        return kExitOk;
    }

    if (loop_cmd->parsed()) {
        AudioFile audio;
        const SampledTone tone = load_tone(loop_opt, &audio);
        LoopSpec spec;
        spec.intro_length = loop_intro;
        spec.cycle_length = loop_cycle;
        spec.depth = loop_depth;
        if (loop_mode == "sine")
            spec.mode = LoopMode::sine;
        else if (loop_mode == "zigzag")
            spec.mode = LoopMode::zigzag;
        else
            throw CLI::ValidationError("--mode must be sine or zigzag");
        store(loop_opt, audio,
              build_loop(tone, spec, loop_opt.config(), loop_cycles, loop_opt.engine()));
        return kExitOk;
    }

    if (fm_cmd->parsed()) {
        AudioFile audio;
        const SampledTone tone = load_tone(fm_opt, &audio);
        if (fm_mod.rfind("csv:", 0) != 0)
            throw CLI::ValidationError("--mod expects csv:FILE");
        const ControlCurve mod = load_curve(fm_mod.substr(4), fm_unit, CurveRole::phase);
        store(fm_opt, audio,
              fm_render(tone, fm_carrier, mod, fm_time, fm_opt.config(), fm_opt.engine()));
        return kExitOk;
    }

    if (noise_cmd->parsed()) {
        AudioFile audio;
        const SampledTone tone = load_tone(noise_opt, &audio);
        store(noise_opt, audio,
              tone_from_noise(tone, noise_factor, noise_opt.config(), noise_opt.engine()));
        return kExitOk;
    }

    if (spec_cmd->parsed()) {
        const AudioFile audio = read_wav(spec_opt.in_path);
        const SpectrumReport report =
            spectrum(audio.samples, spec_size, spec_opt.period, audio.sample_rate);
        if (!spec_csv.empty()) write_spectrum_csv(report, spec_csv);
        std::vector<double> mags;
        mags.reserve(report.rows.size());
        for (const auto& row : report.rows) mags.push_back(row.magnitude);
        const std::size_t peak = peak_bin(mags);
        std::cout << "peak: bin " << peak << " = " << report.rows[peak].freq_per_wave
                  << " cycles/wave (" << report.rows[peak].freq_hz << " Hz), magnitude "
                  << report.rows[peak].magnitude << "\n";
        return kExitOk;
    }

    if (bench_cmd->parsed()) return run_bench(bench_opt, bench_method, bench_freq, bench_time);

    throw CLI::ValidationError("no subcommand given");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BoundaryError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace helicon
