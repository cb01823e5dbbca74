#ifndef MDALIGN_AUDIO_HPP_
#define MDALIGN_AUDIO_HPP_

#include <string>
#include <vector>

namespace mdalign {

// Canonical pipeline sample rate; everything downstream of decode assumes it.
constexpr double kCanonicalRate = 16000.0;

struct AudioBuffer {
  std::vector<double> samples;  // mono, in [-1, 1]
  double sample_rate = 0.0;

  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Decode a PCM WAV file (8/16/24/32-bit integer or 32-bit float, 1-2
// channels). Stereo is averaged to mono; the file's own rate is kept.
// Throws UnreadableFile, UnsupportedEncoding, EmptyAudio.
AudioBuffer decode_wav(const std::string& path);

// Band-limited resampling (windowed-sinc, Kaiser). Identity pass-through
// when the rates already match.
AudioBuffer resample(const AudioBuffer& buf, double target_rate);

// 16-bit PCM mono writer, used by fixture generation and tests.
void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate);

}  // namespace mdalign

#endif  // MDALIGN_AUDIO_HPP_
