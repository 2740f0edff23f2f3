#include "cadenza/wav.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "cadenza/errors.hpp"

namespace cadenza {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw CorruptFile(path.string() + ": not a RIFF/WAVE file");

  FmtChunk fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16 || pos + 16 > bytes.size())
        throw CorruptFile(path.string() + ": truncated fmt chunk");
      fmt.format = read_u16(bytes.data() + pos);
      fmt.channels = read_u16(bytes.data() + pos + 2);
      fmt.sample_rate = read_u32(bytes.data() + pos + 4);
      fmt.bits_per_sample = read_u16(bytes.data() + pos + 14);
      if (fmt.format == kFormatExtensible) {
        // Subformat GUID starts with the plain format tag.
        if (size < 40 || pos + 26 > bytes.size())
          throw CorruptFile(path.string() + ": truncated extensible fmt chunk");
        fmt.format = read_u16(bytes.data() + pos + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (pos + size > bytes.size())
        throw CorruptFile(path.string() + ": truncated data chunk");
      data = bytes.data() + pos;
      data_size = size;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr)
    throw CorruptFile(path.string() + ": missing fmt or data chunk");
  if (fmt.channels == 0 || fmt.sample_rate == 0)
    throw CorruptFile(path.string() + ": bad fmt header");

  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits_per_sample == 16;
  const bool pcm24 = fmt.format == kFormatPcm && fmt.bits_per_sample == 24;
  const bool f32 = fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32;
  if (!pcm16 && !pcm24 && !f32)
    throw UnsupportedFormat(path.string() + ": only PCM16, PCM24 and float32 supported");

  const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const std::size_t frame_size = bytes_per_sample * fmt.channels;
  if (data_size % frame_size != 0)
    throw CorruptFile(path.string() + ": data chunk not a whole number of frames");
  const std::size_t n_frames = data_size / frame_size;

  AudioBuffer buffer(fmt.channels, n_frames, static_cast<int>(fmt.sample_rate));
  const unsigned char* p = data;
  for (std::size_t n = 0; n < n_frames; ++n) {
    for (std::uint16_t c = 0; c < fmt.channels; ++c) {
      double v = 0.0;
      if (pcm16) {
        const std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
        v = static_cast<double>(s) / 32768.0;
      } else if (pcm24) {
        std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s |= ~0xFFFFFF;  // sign extend
        v = static_cast<double>(s) / 8388608.0;
      } else {
        float f;
        std::memcpy(&f, p, 4);
        v = static_cast<double>(f);
      }
      if (!std::isfinite(v))
        throw CorruptFile(path.string() + ": non-finite sample in float data");
      buffer.channels[c][n] = v;
      p += bytes_per_sample;
    }
  }
  return buffer;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding) {
  validate(buffer);
  const int channels = buffer.channel_count();
  const std::size_t n_frames = buffer.length();

  std::uint16_t format = kFormatPcm;
  std::uint16_t bits = 16;
  switch (encoding) {
    case WavEncoding::pcm16: bits = 16; break;
    case WavEncoding::pcm24: bits = 24; break;
    case WavEncoding::float32: format = kFormatIeeeFloat; bits = 32; break;
  }
  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t data_size = n_frames * channels * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, static_cast<std::uint32_t>(36 + data_size));
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate * channels * bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(channels * bytes_per_sample));
  put_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, static_cast<std::uint32_t>(data_size));

  // PCM full-scale is asymmetric; the positive clamp keeps +1.0 inputs at the
  // largest representable code instead of wrapping.
  const double scale = static_cast<double>(1LL << (bits - 1));
  const double lo = -1.0;
  const double hi = 1.0 - 1.0 / scale;

  for (std::size_t n = 0; n < n_frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const double v = buffer.channels[c][n];
      if (encoding == WavEncoding::float32) {
        const float f = static_cast<float>(v);
        unsigned char b[4];
        std::memcpy(b, &f, 4);
        out.insert(out.end(), b, b + 4);
      } else {
        const double clamped = std::min(hi, std::max(lo, v));
        const long long q = std::llround(clamped * scale);
        out.push_back(static_cast<unsigned char>(q & 0xFF));
        out.push_back(static_cast<unsigned char>((q >> 8) & 0xFF));
        if (bits == 24) out.push_back(static_cast<unsigned char>((q >> 16) & 0xFF));
      }
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("short write to " + path.string());
}

}  // namespace cadenza
