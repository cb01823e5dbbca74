#ifndef MDALIGN_ERRORS_HPP_
#define MDALIGN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mdalign {

// Base for all toolkit errors. `kind()` is a stable machine-readable tag
// used in error reports (errors.json) and CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define MDALIGN_DEFINE_ERROR(NAME)                        \
  class NAME : public Error {                             \
   public:                                                \
    explicit NAME(const std::string& msg)                 \
        : Error(#NAME, msg) {}                            \
  }

// audio_io
MDALIGN_DEFINE_ERROR(UnreadableFile);
MDALIGN_DEFINE_ERROR(UnsupportedEncoding);
MDALIGN_DEFINE_ERROR(EmptyAudio);

// beat_tracker
MDALIGN_DEFINE_ERROR(AudioTooShort);
MDALIGN_DEFINE_ERROR(NoPeriodicity);

// motion_kinetics
MDALIGN_DEFINE_ERROR(SchemaViolation);
MDALIGN_DEFINE_ERROR(TooFewFrames);
MDALIGN_DEFINE_ERROR(InconsistentKeypointCount);
MDALIGN_DEFINE_ERROR(AllKeypointsBelowConfidence);
MDALIGN_DEFINE_ERROR(NoAccents);

// align_metrics
MDALIGN_DEFINE_ERROR(EmptyBeats);
MDALIGN_DEFINE_ERROR(EmptyAccents);
MDALIGN_DEFINE_ERROR(EmptyCorpus);

// judge_client
MDALIGN_DEFINE_ERROR(MissingTemplate);
MDALIGN_DEFINE_ERROR(UnfilledPlaceholder);
MDALIGN_DEFINE_ERROR(EndpointUnreachable);
MDALIGN_DEFINE_ERROR(UnparseableResponse);
MDALIGN_DEFINE_ERROR(AuthFailure);

// agreement_stats
MDALIGN_DEFINE_ERROR(DegenerateVector);
MDALIGN_DEFINE_ERROR(DegenerateExpected);

// bench_harness
MDALIGN_DEFINE_ERROR(ManifestInvalid);

#undef MDALIGN_DEFINE_ERROR

}  // namespace mdalign

#endif  // MDALIGN_ERRORS_HPP_
