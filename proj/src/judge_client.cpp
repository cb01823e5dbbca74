#include "mdalign/judge.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mdalign/errors.hpp"

namespace mdalign {

namespace fs = std::filesystem;
using nlohmann::json;

std::string dimension_id(JudgeDimension d) {
  switch (d) {
    case JudgeDimension::kAlignment: return "alignment";
    case JudgeDimension::kInstructionFollowing: return "instruction_following";
    case JudgeDimension::kVideoQuality: return "video_quality";
    case JudgeDimension::kVideoMotion: return "video_motion";
    case JudgeDimension::kVideoConsistency: return "video_consistency";
    case JudgeDimension::kAudioMos: return "audio_mos";
    case JudgeDimension::kProductionComplexity: return "production_complexity";
    case JudgeDimension::kContentEnjoyment: return "content_enjoyment";
    case JudgeDimension::kProductionQuality: return "production_quality";
    case JudgeDimension::kContentUsefulness: return "content_usefulness";
  }
  return "unknown";
}

std::optional<JudgeDimension> dimension_from_id(const std::string& id) {
  static const std::vector<JudgeDimension> all = {
      JudgeDimension::kAlignment,          JudgeDimension::kInstructionFollowing,
      JudgeDimension::kVideoQuality,       JudgeDimension::kVideoMotion,
      JudgeDimension::kVideoConsistency,   JudgeDimension::kAudioMos,
      JudgeDimension::kProductionComplexity, JudgeDimension::kContentEnjoyment,
      JudgeDimension::kProductionQuality,  JudgeDimension::kContentUsefulness};
  for (JudgeDimension d : all)
    if (dimension_id(d) == id) return d;
  return std::nullopt;
}

std::string template_id(JudgeDimension d) {
  switch (d) {
    case JudgeDimension::kAlignment:
      return "visual_audio_alignment";
    case JudgeDimension::kInstructionFollowing:
      return "video_instruction_following";
    case JudgeDimension::kVideoQuality:
      return "video_visual_quality";
    case JudgeDimension::kVideoMotion:
    case JudgeDimension::kVideoConsistency:
      return "video_motion";
    case JudgeDimension::kAudioMos:
    case JudgeDimension::kProductionComplexity:
    case JudgeDimension::kContentEnjoyment:
    case JudgeDimension::kProductionQuality:
    case JudgeDimension::kContentUsefulness:
      return "auditory_aesthetic";
  }
  return "unknown";
}

double normalize_score(int raw_score) { return (raw_score - 1) / 4.0; }

std::string render_prompt(JudgeDimension dimension,
                          const std::string& instruction_text,
                          const std::string& clip_id,
                          const std::string& template_dir) {
  const fs::path path =
      fs::path(template_dir) / (template_id(dimension) + ".txt");
  std::ifstream f(path);
  if (!f) throw MissingTemplate(path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();

  auto replace_all = [&](const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
      text.replace(pos, key.size(), value);
      pos += value.size();
    }
  };
  replace_all("{instruction}", instruction_text);
  replace_all("{clip_id}", clip_id);

  static const std::regex placeholder(R"(\{[a-z_]+\})");
  std::smatch m;
  if (std::regex_search(text, m, placeholder))
    throw UnfilledPlaceholder(m.str() + " in " + path.string());
  return text;
}

int parse_score(const std::string& response_text, std::string* rationale) {
  std::set<int> candidates;

  // "Score: N" (case-insensitive)
  static const std::regex score_re(R"([Ss]core\s*[:=]\s*([1-5])\b)");
  for (auto it = std::sregex_iterator(response_text.begin(),
                                      response_text.end(), score_re);
       it != std::sregex_iterator(); ++it)
    candidates.insert(std::stoi((*it)[1].str()));

  // JSON body with a "score" field
  std::string json_rationale;
  try {
    const json j = json::parse(response_text);
    if (j.is_object() && j.contains("score") &&
        j["score"].is_number_integer()) {
      const int s = j["score"].get<int>();
      if (s >= 1 && s <= 5) candidates.insert(s);
      json_rationale = j.value("rationale", std::string{});
    }
  } catch (const json::exception&) {
  }

  // a lone integer line
  std::istringstream lines(response_text);
  std::string line;
  while (std::getline(lines, line)) {
    static const std::regex lone_re(R"(^\s*([1-5])\s*$)");
    std::smatch m;
    if (std::regex_match(line, m, lone_re))
      candidates.insert(std::stoi(m[1].str()));
  }

  if (candidates.empty())
    throw UnparseableResponse("no 1-5 score found in response");
  if (candidates.size() > 1)
    throw UnparseableResponse("conflicting score candidates in response");
  if (rationale != nullptr)
    *rationale = json_rationale.empty() ? response_text : json_rationale;
  return *candidates.begin();
}

namespace {

class HttplibTransport : public Transport {
 public:
  HttpResponse post(const std::string& url,
                    const std::map<std::string, std::string>& headers,
                    const std::string& json_body, double timeout_s) override {
    // split scheme://host:port and path
    const auto scheme_end = url.find("://");
    const auto path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string base =
        path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client cli(base);
    cli.set_connection_timeout(static_cast<time_t>(timeout_s), 0);
    cli.set_read_timeout(static_cast<time_t>(timeout_s), 0);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = cli.Post(path, h, json_body, "application/json");
    HttpResponse out;
    if (!res) return out;
    out.transport_ok = true;
    out.status = res->status;
    out.body = res->body;
    return out;
  }
};

class GenericJsonAdapter : public ProviderAdapter {
 public:
  std::string build_request_body(const std::string& model,
                                 const std::string& prompt,
                                 const std::string& clip_id,
                                 const std::string& media_path) override {
    json body;
    body["model"] = model;
    body["prompt"] = prompt;
    body["clip_id"] = clip_id;
    std::ifstream f(media_path, std::ios::binary);
    if (f) {
      const std::string bytes((std::istreambuf_iterator<char>(f)),
                              std::istreambuf_iterator<char>());
      body["media_b64"] = base64(bytes);
    }
    return body.dump();
  }

 private:
  static std::string base64(const std::string& in) {
    static const char tbl[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 2 < in.size()) {
      const uint32_t v = (uint8_t(in[i]) << 16) | (uint8_t(in[i + 1]) << 8) |
                         uint8_t(in[i + 2]);
      out += tbl[(v >> 18) & 63];
      out += tbl[(v >> 12) & 63];
      out += tbl[(v >> 6) & 63];
      out += tbl[v & 63];
      i += 3;
    }
    if (i + 1 == in.size()) {
      const uint32_t v = uint8_t(in[i]) << 16;
      out += tbl[(v >> 18) & 63];
      out += tbl[(v >> 12) & 63];
      out += "==";
    } else if (i + 2 == in.size()) {
      const uint32_t v = (uint8_t(in[i]) << 16) | (uint8_t(in[i + 1]) << 8);
      out += tbl[(v >> 18) & 63];
      out += tbl[(v >> 12) & 63];
      out += tbl[(v >> 6) & 63];
      out += '=';
    }
    return out;
  }
};

uint64_t fnv1a(const std::string& data, uint64_t seed = 14695981039346656037ULL) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string clip_cache_key(const std::string& media_path,
                           const std::string& model) {
  std::string content;
  std::ifstream f(media_path, std::ios::binary);
  if (f)
    content.assign((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  else
    content = media_path;  // unreadable media still gets a stable key
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(model, fnv1a(content))));
  return buf;
}

JudgeRecord record_from_json(const json& j) {
  JudgeRecord r;
  r.clip_id = j.value("clip_id", std::string{});
  r.dimension = dimension_from_id(j.value("dimension", std::string{}))
                    .value_or(JudgeDimension::kAlignment);
  r.raw_score = j.value("raw_score", 0);
  r.normalized = j.value("normalized", 0.0);
  r.rationale = j.value("rationale", std::string{});
  r.repeat_index = j.value("repeat_index", 0);
  r.endpoint_model = j.value("endpoint_model", std::string{});
  return r;
}

json record_to_json(const JudgeRecord& r) {
  return json{{"clip_id", r.clip_id},
              {"dimension", dimension_id(r.dimension)},
              {"raw_score", r.raw_score},
              {"normalized", r.normalized},
              {"rationale", r.rationale},
              {"repeat_index", r.repeat_index},
              {"endpoint_model", r.endpoint_model}};
}

}  // namespace

std::shared_ptr<Transport> make_http_transport() {
  return std::make_shared<HttplibTransport>();
}

std::shared_ptr<ProviderAdapter> make_generic_json_adapter() {
  return std::make_shared<GenericJsonAdapter>();
}

std::vector<JudgeRecord> judge_clip(const std::string& clip_id,
                                    const std::string& media_path,
                                    JudgeDimension dimension,
                                    const std::string& instruction_text,
                                    int repeats, const JudgeConfig& config,
                                    std::shared_ptr<Transport> transport,
                                    std::shared_ptr<ProviderAdapter> adapter) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (!transport) transport = make_http_transport();
  if (!adapter) adapter = make_generic_json_adapter();

  std::string api_key = config.api_key;
  if (api_key.empty()) {
    const char* env = std::getenv("TMD_JUDGE_API_KEY");
    if (env != nullptr) api_key = env;
  }

  const std::string prompt = render_prompt(dimension, instruction_text,
                                           clip_id, config.template_dir);
  const fs::path cache_base = fs::path(config.cache_dir) /
                              clip_cache_key(media_path, config.model_name) /
                              dimension_id(dimension);
  fs::create_directories(cache_base);

  std::vector<JudgeRecord> records(repeats);
  std::vector<std::exception_ptr> failures(repeats);
  std::mutex cache_mutex;
  std::atomic<int> next{0};

  auto run_one = [&](int repeat) {
    const fs::path cache_file =
        cache_base / (std::to_string(repeat) + ".json");
    {
      std::ifstream cached(cache_file);
      if (cached) {
        json j;
        cached >> j;
        records[repeat] = record_from_json(j);
        return;
      }
    }

    const std::string body = adapter->build_request_body(
        config.model_name, prompt, clip_id, media_path);
    std::map<std::string, std::string> headers;
    if (!api_key.empty()) headers["Authorization"] = "Bearer " + api_key;

    HttpResponse res;
    double delay = config.backoff_base_s;
    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        delay *= 2.0;
      }
      res = transport->post(config.endpoint_url, headers, body,
                            config.timeout_s);
      if (!res.transport_ok) continue;  // connection failure, retry
      if (res.status == 401 || res.status == 403)
        throw AuthFailure("endpoint returned " + std::to_string(res.status));
      if (res.status == 429 || res.status >= 500) continue;  // retryable
      break;
    }
    if (!res.transport_ok || res.status != 200)
      throw EndpointUnreachable("no successful response after " +
                                std::to_string(config.max_attempts) +
                                " attempts");

    JudgeRecord r;
    r.clip_id = clip_id;
    r.dimension = dimension;
    r.raw_score = parse_score(res.body, &r.rationale);
    r.normalized = normalize_score(r.raw_score);
    r.repeat_index = repeat;
    r.endpoint_model = config.model_name;
    records[repeat] = r;

    std::lock_guard<std::mutex> lock(cache_mutex);
    std::ofstream out(cache_file);
    out << record_to_json(r).dump(2) << "\n";
  };

  auto worker = [&] {
    for (int i = next.fetch_add(1); i < repeats; i = next.fetch_add(1)) {
      try {
        run_one(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const int n_threads =
      std::max(1, std::min(config.max_concurrency, repeats));
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return records;
}

}  // namespace mdalign
