#include "discotrace/llm_gateway.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#ifdef DISCOTRACE_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

std::atomic<std::size_t> g_network_requests{0};

struct Url {
  std::string scheme_host_port;
  std::string path;
};

Url split_url(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "endpoint must start with http:// or https://");
  }
  const auto scheme = endpoint.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::InvalidConfig, "unsupported endpoint scheme " + scheme);
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string expand_auth(const std::string& tmpl) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find("${", pos);
    if (open == std::string::npos) {
      out += tmpl.substr(pos);
      break;
    }
    const auto close = tmpl.find('}', open);
    if (close == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "unterminated ${ in auth template");
    }
    out += tmpl.substr(pos, open - pos);
    const auto var = tmpl.substr(open + 2, close - open - 2);
    const char* value = std::getenv(var.c_str());
    if (!value) throw Error(ErrorCode::AuthError, "environment variable " + var + " is not set");
    out += value;
    pos = close + 1;
  }
  return out;
}

// Posts a JSON body with retries; returns the parsed response document.
nlohmann::json post_json(const BackendSpec& spec, const nlohmann::json& body) {
  const Url url = split_url(spec.endpoint);
  httplib::Headers headers;
  if (!spec.auth_template.empty()) {
    headers.emplace(spec.auth_header, expand_auth(spec.auth_template));
  }
  const std::string payload = body.dump();

  std::string last_error;
  for (std::size_t attempt = 0; attempt <= spec.retry_limit; ++attempt) {
    if (attempt > 0) {
      const auto delay = std::chrono::milliseconds(
          static_cast<long long>(spec.backoff_initial_ms) << std::min<std::size_t>(attempt - 1, 16));
      std::this_thread::sleep_for(delay);
    }
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(std::chrono::seconds(spec.timeout_s));
    client.set_write_timeout(std::chrono::seconds(spec.timeout_s));
    ++g_network_requests;
    auto result = client.Post(url.path, headers, payload, "application/json");
    if (!result) {
      last_error = "transport failure: " + httplib::to_string(result.error());
      continue;
    }
    const int status = result->status;
    if (status == 401 || status == 403) {
      throw Error(ErrorCode::AuthError,
                  spec.name + ": HTTP " + std::to_string(status) + " " + result->body);
    }
    if (status >= 500 || status == 429) {
      last_error = "HTTP " + std::to_string(status);
      continue;
    }
    if (status < 200 || status >= 300) {
      throw Error(ErrorCode::TransportError,
                  spec.name + ": HTTP " + std::to_string(status) + " " + result->body);
    }
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::TransportError, spec.name + ": response is not JSON: " + e.what());
    }
  }
  throw Error(ErrorCode::TransportError,
              spec.name + ": retries exhausted after " + std::to_string(spec.retry_limit + 1) +
                  " attempts (" + last_error + ")");
}

const nlohmann::json& at_path(const nlohmann::json& document, const std::string& path,
                              const std::string& backend) {
  try {
    return document.at(nlohmann::json::json_pointer(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::TransportError,
                backend + ": response has nothing at " + path + " (" + e.what() + ")");
  }
}

std::vector<nlohmann::json> read_jsonl_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open fixture file " + path);
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedLine,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

class InFlightLimiter {
 public:
  explicit InFlightLimiter(std::size_t limit) : available_(limit) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }
  void release() {
    {
      std::lock_guard lock(mutex_);
      ++available_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::size_t available_;
};

class SlotGuard {
 public:
  explicit SlotGuard(InFlightLimiter& limiter) : limiter_(limiter) { limiter_.acquire(); }
  ~SlotGuard() { limiter_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  InFlightLimiter& limiter_;
};

}  // namespace

nlohmann::json to_wire_json(const ChatRequest& request) {
  nlohmann::json j;
  j["model"] = request.model_name;
  j["temperature"] = request.temperature;
  if (request.max_tokens) j["max_tokens"] = *request.max_tokens;
  j["messages"] = nlohmann::json::array({
      {{"role", "system"}, {"content", request.system}},
      {{"role", "user"}, {"content", request.user}},
  });
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

std::string request_digest(const ChatRequest& request) {
  return sha256_hex(to_wire_json(request).dump());
}

BackendSpec BackendSpec::from_json(const nlohmann::json& j) {
  BackendSpec spec;
  try {
    spec.name = j.value("name", std::string{});
    const auto kind = j.value("kind", std::string("mock"));
    if (kind == "live") {
      spec.kind = BackendKind::Live;
    } else if (kind == "mock") {
      spec.kind = BackendKind::Mock;
    } else {
      throw Error(ErrorCode::InvalidConfig, "backend kind must be live or mock, got " + kind);
    }
    spec.model = j.value("model", std::string{});
    spec.endpoint = j.value("endpoint", std::string{});
    spec.auth_header = j.value("auth_header", spec.auth_header);
    spec.auth_template = j.value("auth", std::string{});
    spec.response_path = j.value("response_path", spec.response_path);
    spec.fixture_path = j.value("fixture_path", std::string{});
    const auto max_in_flight = j.value("max_in_flight", static_cast<long long>(spec.max_in_flight));
    const auto retry_limit = j.value("retry_limit", static_cast<long long>(spec.retry_limit));
    if (max_in_flight < 1) throw Error(ErrorCode::InvalidConfig, "max_in_flight must be >= 1");
    if (retry_limit < 0) throw Error(ErrorCode::InvalidConfig, "retry_limit must be >= 0");
    spec.max_in_flight = static_cast<std::size_t>(max_in_flight);
    spec.retry_limit = static_cast<std::size_t>(retry_limit);
    spec.backoff_initial_ms = j.value("backoff_initial_ms", spec.backoff_initial_ms);
    spec.timeout_s = j.value("timeout_s", spec.timeout_s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("backend: ") + e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json BackendSpec::to_json() const {
  return {{"name", name},
          {"kind", kind == BackendKind::Live ? "live" : "mock"},
          {"model", model},
          {"endpoint", endpoint},
          {"auth_header", auth_header},
          {"auth", auth_template},
          {"response_path", response_path},
          {"fixture_path", fixture_path},
          {"max_in_flight", max_in_flight},
          {"retry_limit", retry_limit},
          {"backoff_initial_ms", backoff_initial_ms},
          {"timeout_s", timeout_s}};
}

void BackendSpec::validate() const {
  if (max_in_flight < 1) throw Error(ErrorCode::InvalidConfig, "max_in_flight must be >= 1");
  if (kind == BackendKind::Live && endpoint.empty()) {
    throw Error(ErrorCode::InvalidConfig, "live backend " + name + " needs an endpoint");
  }
  if (kind == BackendKind::Live) split_url(endpoint);
  if (kind == BackendKind::Mock && fixture_path.empty()) {
    throw Error(ErrorCode::InvalidConfig, "mock backend " + name + " needs a fixture_path");
  }
}

MockChatBackend::MockChatBackend(std::string name, std::string model,
                                 std::map<std::string, std::string> responses)
    : name_(std::move(name)), model_(std::move(model)), responses_(std::move(responses)) {}

std::unique_ptr<MockChatBackend> MockChatBackend::from_fixture_file(const BackendSpec& spec) {
  std::map<std::string, std::string> responses;
  for (const auto& record : read_jsonl_lines(spec.fixture_path)) {
    try {
      responses[record.at("request_digest").get<std::string>()] =
          record.at("response_text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedDocument, spec.fixture_path + ": " + e.what());
    }
  }
  return std::make_unique<MockChatBackend>(spec.name, spec.model, std::move(responses));
}

std::string MockChatBackend::complete(ChatRequest request) {
  ++calls_;
  if (request.model_name.empty()) request.model_name = model_;
  const auto digest = request_digest(request);
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    throw Error(ErrorCode::FixtureMiss, name_ + ": no fixture for request digest " + digest);
  }
  return it->second;
}

MockEmbeddingBackend::MockEmbeddingBackend(std::string name,
                                           std::map<std::string, std::vector<double>> vectors)
    : name_(std::move(name)), vectors_(std::move(vectors)) {}

std::unique_ptr<MockEmbeddingBackend> MockEmbeddingBackend::from_fixture_file(
    const BackendSpec& spec) {
  std::map<std::string, std::vector<double>> vectors;
  for (const auto& record : read_jsonl_lines(spec.fixture_path)) {
    try {
      vectors[record.at("text").get<std::string>()] =
          record.at("embedding").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedDocument, spec.fixture_path + ": " + e.what());
    }
  }
  return std::make_unique<MockEmbeddingBackend>(spec.name, std::move(vectors));
}

std::vector<std::vector<double>> MockEmbeddingBackend::embed(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    auto it = vectors_.find(text);
    if (it == vectors_.end()) {
      throw Error(ErrorCode::FixtureMiss,
                  name_ + ": no embedding fixture for text digest " + sha256_hex(text));
    }
    out.push_back(it->second);
  }
  return out;
}

struct LiveChatBackend::Limiter : InFlightLimiter {
  using InFlightLimiter::InFlightLimiter;
};

LiveChatBackend::LiveChatBackend(BackendSpec spec)
    : spec_(std::move(spec)), limiter_(std::make_unique<Limiter>(spec_.max_in_flight)) {
  spec_.validate();
}

LiveChatBackend::~LiveChatBackend() = default;

std::string LiveChatBackend::complete(ChatRequest request) {
  ++calls_;
  if (request.model_name.empty()) request.model_name = spec_.model;
  SlotGuard slot(*limiter_);
  const auto response = post_json(spec_, to_wire_json(request));
  const auto& content = at_path(response, spec_.response_path, spec_.name);
  if (!content.is_string()) {
    throw Error(ErrorCode::TransportError,
                spec_.name + ": value at " + spec_.response_path + " is not a string");
  }
  return content.get<std::string>();
}

struct LiveEmbeddingBackend::Limiter : InFlightLimiter {
  using InFlightLimiter::InFlightLimiter;
};

LiveEmbeddingBackend::LiveEmbeddingBackend(BackendSpec spec)
    : spec_(std::move(spec)), limiter_(std::make_unique<Limiter>(spec_.max_in_flight)) {
  if (spec_.response_path == BackendSpec{}.response_path) spec_.response_path = "/data";
  spec_.validate();
}

LiveEmbeddingBackend::~LiveEmbeddingBackend() = default;

std::vector<std::vector<double>> LiveEmbeddingBackend::embed(
    const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  SlotGuard slot(*limiter_);
  const nlohmann::json body = {{"model", spec_.model}, {"input", texts}};
  const auto response = post_json(spec_, body);
  const auto& items = at_path(response, spec_.response_path, spec_.name);
  if (!items.is_array() || items.size() != texts.size()) {
    throw Error(ErrorCode::TransportError,
                spec_.name + ": expected " + std::to_string(texts.size()) + " embeddings");
  }
  std::vector<std::vector<double>> out;
  out.reserve(items.size());
  try {
    for (const auto& item : items) {
      const auto& vec = item.is_object() ? item.at("embedding") : item;
      out.push_back(vec.get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::TransportError, spec_.name + ": bad embedding payload: " + e.what());
  }
  return out;
}

RecordingChatBackend::RecordingChatBackend(ChatBackend& inner) : inner_(inner) {}

std::string RecordingChatBackend::complete(ChatRequest request) {
  if (request.model_name.empty()) request.model_name = inner_.model();
  auto response = inner_.complete(request);
  std::lock_guard lock(mutex_);
  recorded_[request_digest(request)] = response;
  return response;
}

std::map<std::string, std::string> RecordingChatBackend::recorded() const {
  std::lock_guard lock(mutex_);
  return recorded_;
}

void RecordingChatBackend::write_fixture(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write fixture file " + path);
  for (const auto& [digest, text] : recorded()) {
    out << nlohmann::json{{"request_digest", digest}, {"response_text", text}}.dump() << '\n';
  }
}

std::unique_ptr<ChatBackend> make_chat_backend(const BackendSpec& spec) {
  spec.validate();
  if (spec.kind == BackendKind::Mock) return MockChatBackend::from_fixture_file(spec);
  return std::make_unique<LiveChatBackend>(spec);
}

std::unique_ptr<EmbeddingBackend> make_embedding_backend(const BackendSpec& spec) {
  spec.validate();
  if (spec.kind == BackendKind::Mock) return MockEmbeddingBackend::from_fixture_file(spec);
  return std::make_unique<LiveEmbeddingBackend>(spec);
}

std::size_t network_request_count() noexcept { return g_network_requests.load(); }

std::string complete(ChatBackend& backend, const ChatRequest& request) {
  return backend.complete(request);
}

}  // namespace discotrace
