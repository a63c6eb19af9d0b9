#include "helicon/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "helicon/errors.hpp"

namespace helicon {

namespace {

std::uint32_t read_u32(std::ifstream& in, const char* what) {
    unsigned char raw[4];
    if (!in.read(reinterpret_cast<char*>(raw), 4)) throw IoError(std::string("truncated WAV: ") + what);
    return static_cast<std::uint32_t>(raw[0]) | (static_cast<std::uint32_t>(raw[1]) << 8) |
           (static_cast<std::uint32_t>(raw[2]) << 16) | (static_cast<std::uint32_t>(raw[3]) << 24);
}

std::uint16_t read_u16(std::ifstream& in, const char* what) {
    unsigned char raw[2];
    if (!in.read(reinterpret_cast<char*>(raw), 2)) throw IoError(std::string("truncated WAV: ") + what);
    return static_cast<std::uint16_t>(raw[0] | (raw[1] << 8));
}

void write_u32(std::ofstream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_u16(std::ofstream& out, std::uint16_t v) {
    out.put(static_cast<char>(v & 0xff));
    out.put(static_cast<char>((v >> 8) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

}  // namespace

AudioFile read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    char tag[4];
    if (!in.read(tag, 4) || std::memcmp(tag, "RIFF", 4) != 0)
        throw IoError("'" + path + "' is not a RIFF file");
    read_u32(in, "RIFF size");
    if (!in.read(tag, 4) || std::memcmp(tag, "WAVE", 4) != 0)
        throw IoError("'" + path + "' is not a WAVE file");

    bool have_fmt = false;
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> data;

    while (in.read(tag, 4)) {
        const std::uint32_t chunk_size = read_u32(in, "chunk size");
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            format = read_u16(in, "format tag");
            channels = read_u16(in, "channel count");
            rate = read_u32(in, "sample rate");
            read_u32(in, "byte rate");
            read_u16(in, "block align");
            bits = read_u16(in, "bits per sample");
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            data.resize(chunk_size);
            if (!in.read(data.data(), chunk_size)) throw IoError("truncated WAV: data chunk");
        } else {
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }

    if (!have_fmt) throw IoError("'" + path + "' has no fmt chunk");
    if (channels != 1)
        throw IoError("'" + path + "' has " + std::to_string(channels) +
                      " channels; only mono is supported");
    if (data.empty()) throw IoError("'" + path + "' has no samples");

    AudioFile audio;
    audio.sample_rate = rate;
    if (format == kFormatPcm && bits == 16) {
        audio.encoding = WavEncoding::pcm16;
        const std::size_t count = data.size() / 2;
        audio.samples.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            std::int16_t v;
            std::memcpy(&v, data.data() + 2 * i, 2);
            audio.samples[i] = static_cast<double>(v) / 32767.0;
        }
    } else if (format == kFormatFloat && bits == 32) {
        audio.encoding = WavEncoding::float32;
        const std::size_t count = data.size() / 4;
        audio.samples.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            float v;
            std::memcpy(&v, data.data() + 4 * i, 4);
            audio.samples[i] = v;
        }
    } else {
        throw IoError("'" + path + "' uses unsupported format " + std::to_string(format) + "/" +
                      std::to_string(bits) + " bits; expected PCM16 or float32");
    }
    return audio;
}

void write_wav(const std::string& path, const AudioFile& audio) {
    if (audio.samples.empty()) throw IoError("refusing to write WAV without samples");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    const bool pcm = audio.encoding == WavEncoding::pcm16;
    const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
    const auto data_size = static_cast<std::uint32_t>(audio.samples.size() * bytes_per_sample);
    const std::uint32_t fact_size = pcm ? 0 : 12;  // float32 carries a fact chunk
    const std::uint32_t riff_size = 4 + 24 + fact_size + 8 + data_size;

    out.write("RIFF", 4);
    write_u32(out, riff_size);
    out.write("WAVE", 4);

    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, pcm ? kFormatPcm : kFormatFloat);
    write_u16(out, 1);
    write_u32(out, audio.sample_rate);
    write_u32(out, audio.sample_rate * bytes_per_sample);
    write_u16(out, bytes_per_sample);
    write_u16(out, pcm ? 16 : 32);

    if (!pcm) {
        out.write("fact", 4);
        write_u32(out, 4);
        write_u32(out, static_cast<std::uint32_t>(audio.samples.size()));
    }

    out.write("data", 4);
    write_u32(out, data_size);
    for (double s : audio.samples) {
        if (pcm) {
            const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32767.0);
            const auto v = static_cast<std::int16_t>(scaled);
            write_u16(out, static_cast<std::uint16_t>(v));
        } else {
            const auto v = static_cast<float>(s);
            std::uint32_t bits;
            std::memcpy(&bits, &v, 4);
            write_u32(out, bits);
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace helicon
