#include "mdalign/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mdalign/dsp.hpp"
#include "mdalign/errors.hpp"

namespace mdalign {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

double decode_sample(const uint8_t* p, uint16_t bits, uint16_t format) {
  if (format == kFormatFloat) {
    float f;
    std::memcpy(&f, p, 4);
    return static_cast<double>(f);
  }
  switch (bits) {
    case 8:  // unsigned, 128 is zero
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      const auto v = static_cast<int16_t>(p[0] | (p[1] << 8));
      return v / 32768.0;
    }
    case 24: {
      int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;
      return v / 8388608.0;
    }
    case 32: {
      int32_t v;
      std::memcpy(&v, p, 4);
      return v / 2147483648.0;
    }
    default:
      throw UnsupportedEncoding("unsupported bit depth " + std::to_string(bits));
  }
}

}  // namespace

AudioBuffer decode_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UnreadableFile(path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw UnreadableFile(path + ": not a RIFF/WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t len = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) break;
    if (std::memcmp(id, "fmt ", 4) == 0 && len >= 16) {
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible && len >= 40)
        format = read_u16(bytes.data() + body + 24);  // sub-format GUID head
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (format == 0 || rate == 0) throw UnreadableFile(path + ": missing fmt chunk");
  if (format != kFormatPcm && format != kFormatFloat)
    throw UnsupportedEncoding(path + ": compressed WAV (format tag " +
                              std::to_string(format) + ")");
  if (format == kFormatFloat && bits != 32)
    throw UnsupportedEncoding(path + ": only 32-bit float supported");
  if (channels < 1 || channels > 2)
    throw UnsupportedEncoding(path + ": " + std::to_string(channels) +
                              " channels");
  if (data == nullptr || data_len == 0) throw EmptyAudio(path);

  const uint16_t bytes_per_sample = bits / 8;
  const std::size_t frame_size = static_cast<std::size_t>(bytes_per_sample) * channels;
  const std::size_t n_frames = data_len / frame_size;
  if (n_frames == 0) throw EmptyAudio(path);

  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (uint16_t c = 0; c < channels; ++c)
      acc += decode_sample(data + i * frame_size + c * bytes_per_sample, bits,
                           format);
    buf.samples[i] = acc / channels;
  }
  return buf;
}

AudioBuffer resample(const AudioBuffer& buf, double target_rate) {
  if (target_rate <= 0.0) throw std::invalid_argument("target_rate must be > 0");
  if (buf.sample_rate == target_rate) return buf;
  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples = dsp::resample(buf.samples, buf.sample_rate, target_rate);
  return out;
}

void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UnreadableFile("cannot open for writing: " + path);
  const auto rate = static_cast<uint32_t>(std::llround(sample_rate));
  const auto data_len = static_cast<uint32_t>(samples.size() * 2);
  auto put16 = [&](uint16_t v) { f.put(char(v & 0xFF)).put(char(v >> 8)); };
  auto put32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) f.put(char((v >> (8 * i)) & 0xFF));
  };
  f.write("RIFF", 4);
  put32(36 + data_len);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put32(16);
  put16(kFormatPcm);
  put16(1);  // mono
  put32(rate);
  put32(rate * 2);
  put16(2);
  put16(16);
  f.write("data", 4);
  put32(data_len);
  for (double s : samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const auto v = static_cast<int16_t>(std::lround(clamped * 32767.0));
    put16(static_cast<uint16_t>(v));
  }
}

}  // namespace mdalign
