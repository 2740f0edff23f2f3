#pragma once

#include <filesystem>

#include "cadenza/audio_buffer.hpp"

namespace cadenza {

enum class WavEncoding { pcm16, pcm24, float32 };

// Reads a RIFF/WAVE file (PCM16, PCM24 or IEEE float32, plain or extensible
// header). Integer samples are scaled by 2^(bits-1) into [-1, 1); float data
// passes through unchanged.
AudioBuffer read_wav(const std::filesystem::path& path);

// Writes interleaved little-endian RIFF/WAVE. PCM encodings clamp to
// [-1, 1 - 2^-(bits-1)] and round half away from zero before quantization.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::float32);

}  // namespace cadenza
