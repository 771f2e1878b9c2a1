#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace discotrace {

inline constexpr double kDefaultTemperature = 0.01;

struct ChatRequest {
  std::string system;
  std::string user;
  std::string model_name;
  double temperature = kDefaultTemperature;
  std::optional<std::size_t> max_tokens;

  bool operator==(const ChatRequest&) const = default;
};

// {model, temperature, max_tokens?, messages: [{role, content}, ...]}
nlohmann::json to_wire_json(const ChatRequest& request);

// Lowercase hex SHA-256 of the wire JSON. Fixture files are keyed by this.
std::string request_digest(const ChatRequest& request);
std::string sha256_hex(const std::string& bytes);

enum class BackendKind { Live, Mock };

struct BackendSpec {
  std::string name;
  BackendKind kind = BackendKind::Mock;
  std::string model;
  std::string endpoint;  // http(s)://host[:port]/path
  // Header name and a value template; "${VAR}" is replaced by the environment
  // variable VAR at request time.
  std::string auth_header = "Authorization";
  std::string auth_template;
  // JSON pointer to the assistant text (chat) or the vector list (embeddings).
  std::string response_path = "/choices/0/message/content";
  std::string fixture_path;
  std::size_t max_in_flight = 4;
  std::size_t retry_limit = 3;
  std::uint32_t backoff_initial_ms = 500;
  std::uint32_t timeout_s = 120;

  // Throws Error(InvalidConfig).
  static BackendSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  // Fills request.model_name from the backend's model when it is empty.
  virtual std::string complete(ChatRequest request) = 0;

  virtual const std::string& name() const = 0;
  virtual const std::string& model() const = 0;
  virtual std::size_t call_count() const = 0;
};

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;

  // One vector per input; all vectors share a dimension.
  virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;

  virtual const std::string& name() const = 0;
};

// Replays {request_digest, response_text} JSONL records. Unknown digests throw
// Error(FixtureMiss) naming the digest.
class MockChatBackend final : public ChatBackend {
 public:
  MockChatBackend(std::string name, std::string model,
                  std::map<std::string, std::string> responses);
  static std::unique_ptr<MockChatBackend> from_fixture_file(const BackendSpec& spec);

  std::string complete(ChatRequest request) override;
  const std::string& name() const override { return name_; }
  const std::string& model() const override { return model_; }
  std::size_t call_count() const override { return calls_.load(); }

 private:
  std::string name_;
  std::string model_;
  std::map<std::string, std::string> responses_;
  std::atomic<std::size_t> calls_{0};
};

// Replays {text, embedding} JSONL records keyed by the exact input text.
class MockEmbeddingBackend final : public EmbeddingBackend {
 public:
  MockEmbeddingBackend(std::string name, std::map<std::string, std::vector<double>> vectors);
  static std::unique_ptr<MockEmbeddingBackend> from_fixture_file(const BackendSpec& spec);

  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  std::map<std::string, std::vector<double>> vectors_;
};

// Chat completion over HTTP(S). Transport errors and 5xx responses are
// retried up to retry_limit times with exponential backoff; 401/403 throw
// Error(AuthError) immediately. At most max_in_flight requests are open at once.
class LiveChatBackend final : public ChatBackend {
 public:
  explicit LiveChatBackend(BackendSpec spec);
  ~LiveChatBackend() override;

  std::string complete(ChatRequest request) override;
  const std::string& name() const override { return spec_.name; }
  const std::string& model() const override { return spec_.model; }
  std::size_t call_count() const override { return calls_.load(); }

 private:
  struct Limiter;
  BackendSpec spec_;
  std::unique_ptr<Limiter> limiter_;
  std::atomic<std::size_t> calls_{0};
};

// Embedding service: request {model, input: [str]}; response_path points at
// an array whose items are either vectors or objects with an "embedding" field.
class LiveEmbeddingBackend final : public EmbeddingBackend {
 public:
  explicit LiveEmbeddingBackend(BackendSpec spec);
  ~LiveEmbeddingBackend() override;

  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
  const std::string& name() const override { return spec_.name; }

 private:
  struct Limiter;
  BackendSpec spec_;
  std::unique_ptr<Limiter> limiter_;
};

// Wraps another backend and remembers every (digest, response) pair so a run
// against a live service can be replayed later through MockChatBackend.
class RecordingChatBackend final : public ChatBackend {
 public:
  explicit RecordingChatBackend(ChatBackend& inner);

  std::string complete(ChatRequest request) override;
  const std::string& name() const override { return inner_.name(); }
  const std::string& model() const override { return inner_.model(); }
  std::size_t call_count() const override { return inner_.call_count(); }

  std::map<std::string, std::string> recorded() const;
  void write_fixture(const std::string& path) const;

 private:
  ChatBackend& inner_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> recorded_;
};

std::unique_ptr<ChatBackend> make_chat_backend(const BackendSpec& spec);
std::unique_ptr<EmbeddingBackend> make_embedding_backend(const BackendSpec& spec);

// Number of HTTP requests issued by any live backend in this process.
std::size_t network_request_count() noexcept;

// Convenience wrapper matching the gateway's one-shot contract.
std::string complete(ChatBackend& backend, const ChatRequest& request);

}  // namespace discotrace
