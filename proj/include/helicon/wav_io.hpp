#pragma once

// Minimal RIFF/WAVE reader and writer: mono, PCM16 or IEEE float32.

#include <cstdint>
#include <string>
#include <vector>

namespace helicon {

enum class WavEncoding { pcm16, float32 };

struct AudioFile {
    std::uint32_t sample_rate = 44100;
    WavEncoding encoding = WavEncoding::float32;
    std::vector<double> samples;  // mono
};

AudioFile read_wav(const std::string& path);

// float32 round-trips losslessly; PCM16 scales symmetrically by 32767.
void write_wav(const std::string& path, const AudioFile& audio);

}  // namespace helicon
