#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mdalign/audio.hpp"
#include "mdalign/beats.hpp"
#include "mdalign/errors.hpp"
#include "mdalign/fixtures.hpp"

using namespace mdalign;

namespace {

AudioBuffer buffer_of(std::vector<double> samples, double rate = 16000.0) {
  AudioBuffer b;
  b.samples = std::move(samples);
  b.sample_rate = rate;
  return b;
}

double nearest_distance(double t, const std::vector<double>& ref) {
  double best = 1e9;
  for (double r : ref) best = std::min(best, std::abs(t - r));
  return best;
}

}  // namespace

TEST_CASE("digital silence has an identically zero envelope") {
  const OnsetEnvelope env = onset_envelope(buffer_of(std::vector<double>(16000, 0.0)));
  for (double v : env.values) CHECK(v == 0.0);
}

TEST_CASE("audio under half a second is rejected") {
  CHECK_THROWS_AS(onset_envelope(buffer_of(std::vector<double>(4000, 0.0))),
                  AudioTooShort);
}

TEST_CASE("single click peaks the envelope at the click time") {
  std::vector<double> samples(2 * 16000, 0.0);
  samples[16000] = 1.0;  // impulse at t = 1.0 s
  const OnsetEnvelope env = onset_envelope(buffer_of(std::move(samples)));
  const auto argmax = static_cast<std::size_t>(
      std::max_element(env.values.begin(), env.values.end()) -
      env.values.begin());
  const double t = env.start_offset + argmax * env.hop;
  CHECK(t == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("two equal clicks give two equal local maxima") {
  std::vector<double> samples(3 * 16000, 0.0);
  samples[16000] = 1.0;
  samples[32000] = 1.0;
  const OnsetEnvelope env = onset_envelope(buffer_of(std::move(samples)));
  // strongest peak and strongest peak at least 0.5 s away from it
  std::size_t first = 0;
  for (std::size_t i = 1; i < env.values.size(); ++i)
    if (env.values[i] > env.values[first]) first = i;
  std::size_t second = env.values.size();
  for (std::size_t i = 0; i < env.values.size(); ++i) {
    if (std::abs(static_cast<double>(i) - static_cast<double>(first)) * env.hop < 0.5)
      continue;
    if (second == env.values.size() || env.values[i] > env.values[second])
      second = i;
  }
  REQUIRE(second < env.values.size());
  CHECK(env.values[second] ==
        doctest::Approx(env.values[first]).epsilon(0.05));
}

TEST_CASE("tempo estimation on click trains") {
  SUBCASE("120 BPM") {
    const ClickTrack t = make_click_track(120.0, 10.0);
    const double bpm = estimate_tempo(onset_envelope(buffer_of(t.samples)));
    CHECK(bpm == doctest::Approx(120.0).epsilon(2.0 / 120.0));
  }
  SUBCASE("90 BPM") {
    const ClickTrack t = make_click_track(90.0, 10.0);
    const double bpm = estimate_tempo(onset_envelope(buffer_of(t.samples)));
    CHECK(bpm == doctest::Approx(90.0).epsilon(2.0 / 90.0));
  }
  SUBCASE("silence has no periodicity") {
    CHECK_THROWS_AS(
        estimate_tempo(onset_envelope(buffer_of(std::vector<double>(16000 * 4, 0.0)))),
        NoPeriodicity);
  }
}

TEST_CASE("120 BPM click track is tracked beat for beat") {
  const ClickTrack t = make_click_track(120.0, 10.0);
  const BeatGrid grid = track_beats_of(buffer_of(t.samples));
  CHECK(grid.beats.size() >= 19);
  CHECK(grid.beats.size() <= 21);
  for (double b : grid.beats)
    CHECK(nearest_distance(b, t.click_times) < 0.03);
}

TEST_CASE("a -26 dB noise floor moves beats by at most 50 ms") {
  const ClickTrack clean = make_click_track(120.0, 10.0, 16000.0, -200.0, 1, 0.3);
  const ClickTrack noisy = make_click_track(120.0, 10.0, 16000.0, -26.0, 9, 0.3);
  const BeatGrid a = track_beats_of(buffer_of(clean.samples));
  const BeatGrid b = track_beats_of(buffer_of(noisy.samples));
  for (double beat : b.beats)
    CHECK(nearest_distance(beat, a.beats) < 0.05);
}

TEST_CASE("isolated impulse follows the tempo prior") {
  OnsetEnvelope env;
  env.hop = 0.01;
  env.start_offset = 0.074;
  env.values.assign(500, 0.0);
  env.values[250] = 10.0;
  const BeatGrid grid = track_beats(env, 120.0);
  REQUIRE(!grid.beats.empty());
  for (std::size_t i = 1; i < grid.beats.size(); ++i)
    CHECK(std::abs(grid.beats[i] - grid.beats[i - 1] - 0.5) <= env.hop);
}

TEST_CASE("beats are strictly increasing and inside the clip") {
  const ClickTrack t = make_click_track(150.0, 8.0, 16000.0, -26.0, 4);
  const BeatGrid grid = track_beats_of(buffer_of(t.samples));
  for (std::size_t i = 1; i < grid.beats.size(); ++i)
    CHECK(grid.beats[i] > grid.beats[i - 1]);
  for (double b : grid.beats) {
    CHECK(b >= 0.0);
    CHECK(b <= grid.source_duration);
  }
  CHECK(grid.tempo_bpm >= 40.0);
  CHECK(grid.tempo_bpm <= 240.0);
}

TEST_CASE("prepending silence shifts every beat by the pad length") {
  const ClickTrack t = make_click_track(120.0, 8.0, 16000.0, -200.0, 1, 0.3);
  const double pad = 0.7;
  std::vector<double> padded(static_cast<std::size_t>(pad * 16000), 0.0);
  padded.insert(padded.end(), t.samples.begin(), t.samples.end());

  const BeatGrid base = track_beats_of(buffer_of(t.samples));
  const BeatGrid shifted = track_beats_of(buffer_of(std::move(padded)));
  REQUIRE(base.beats.size() == shifted.beats.size());
  for (std::size_t i = 0; i < base.beats.size(); ++i)
    CHECK(std::abs(shifted.beats[i] - base.beats[i] - pad) <= 0.011);
}

TEST_CASE("beat times are gain invariant") {
  const ClickTrack t = make_click_track(120.0, 8.0, 16000.0, -26.0, 2);
  const BeatGrid base = track_beats_of(buffer_of(t.samples));
  for (double c : {0.5, 2.0}) {
    std::vector<double> scaled = t.samples;
    for (double& s : scaled) s *= c;
    const BeatGrid grid = track_beats_of(buffer_of(std::move(scaled)));
    CHECK(grid.beats == base.beats);
  }
}
