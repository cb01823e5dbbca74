#ifndef MDALIGN_JUDGE_HPP_
#define MDALIGN_JUDGE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mdalign {

enum class JudgeDimension {
  kAlignment,
  kInstructionFollowing,
  kVideoQuality,
  kVideoMotion,
  kVideoConsistency,
  kAudioMos,
  kProductionComplexity,
  kContentEnjoyment,
  kProductionQuality,
  kContentUsefulness,
};

// Stable string id, e.g. "alignment".
std::string dimension_id(JudgeDimension d);
std::optional<JudgeDimension> dimension_from_id(const std::string& id);

// Each dimension maps to exactly one of the five prompt templates.
std::string template_id(JudgeDimension d);

struct JudgeRecord {
  std::string clip_id;
  JudgeDimension dimension = JudgeDimension::kAlignment;
  int raw_score = 0;             // 1..5
  double normalized = 0.0;       // (raw - 1) / 4
  std::string rationale;
  int repeat_index = 0;
  std::string endpoint_model;
};

double normalize_score(int raw_score);

struct JudgeConfig {
  std::string endpoint_url;
  std::string model_name;
  std::string api_key;  // falls back to $TMD_JUDGE_API_KEY
  std::string template_dir = "templates";
  std::string cache_dir = "cache";
  int max_concurrency = 4;
  double timeout_s = 60.0;
  double backoff_base_s = 1.0;  // doubles per attempt, max 5 attempts
  int max_attempts = 5;
};

struct HttpResponse {
  int status = 0;
  std::string body;
  bool transport_ok = false;  // false: connection-level failure
};

// Transport seam; the default implementation speaks HTTP via cpp-httplib.
// Tests wrap it with a counting decorator against a local mock server.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const std::string& url,
                            const std::map<std::string, std::string>& headers,
                            const std::string& json_body,
                            double timeout_s) = 0;
};

std::shared_ptr<Transport> make_http_transport();

// Builds the provider request payload; the core client never sees
// provider-specific details.
class ProviderAdapter {
 public:
  virtual ~ProviderAdapter() = default;
  virtual std::string build_request_body(const std::string& model,
                                         const std::string& prompt,
                                         const std::string& clip_id,
                                         const std::string& media_path) = 0;
};

std::shared_ptr<ProviderAdapter> make_generic_json_adapter();

// Placeholder substitution ({instruction}, {clip_id}) over the template
// file for the dimension; byte-stable for identical inputs. Unknown
// placeholders raise UnfilledPlaceholder.
std::string render_prompt(JudgeDimension dimension,
                          const std::string& instruction_text,
                          const std::string& clip_id,
                          const std::string& template_dir);

// Extract a 1-5 integer score and rationale. Accepted forms: "Score: N",
// a JSON "score" field, or a lone integer line. Multiple conflicting
// candidates raise UnparseableResponse, never a guess.
int parse_score(const std::string& response_text, std::string* rationale);

// `repeats` independent requests with retry, disk cache, and bounded
// concurrency. A cache hit issues no network request.
std::vector<JudgeRecord> judge_clip(
    const std::string& clip_id, const std::string& media_path,
    JudgeDimension dimension, const std::string& instruction_text, int repeats,
    const JudgeConfig& config,
    std::shared_ptr<Transport> transport = nullptr,
    std::shared_ptr<ProviderAdapter> adapter = nullptr);

}  // namespace mdalign

#endif  // MDALIGN_JUDGE_HPP_
