#pragma once
// Chat-completion endpoint port. The HTTP implementation speaks the
// OpenAI-compatible /chat/completions protocol; the replay implementation
// serves scripted completions for tests and offline runs.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsmds/model.hpp"

namespace gsmds {

struct endpoint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EndpointUnavailable : endpoint_error {
    using endpoint_error::endpoint_error;
};

struct EndpointConfig {
    std::string base_url = "http://127.0.0.1:8080/v1";
    std::string model = "local-model";
    std::string api_key_env;  // name of the environment variable, never the key
    double temperature = 0.4;
    double top_p = 0.9;
    int max_new_tokens = 400;
    int timeout_s = 120;
    int max_retries = 2;
    int max_concurrent = 4;
    int retry_backoff_ms = 250;
};

// Enforces: temperature >= 0, max_new_tokens >= 1, max_concurrent >= 1.
// Throws endpoint_error on violation.
void validate_config(const EndpointConfig& cfg);

struct ChatResponse {
    std::string content;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::int64_t latency_ms = 0;
};

class ChatEndpoint {
  public:
    virtual ~ChatEndpoint() = default;
    // Throws EndpointUnavailable when the request cannot be served.
    virtual ChatResponse complete(const std::vector<ChatMessage>& messages,
                                  const EndpointConfig& cfg) = 0;
};

// POSTs {model, messages, temperature, top_p, max_tokens} to
// <base_url>/chat/completions with retries and exponential backoff. Bearer
// auth is taken from the environment variable named in the config.
class HttpChatEndpoint : public ChatEndpoint {
  public:
    ChatResponse complete(const std::vector<ChatMessage>& messages,
                          const EndpointConfig& cfg) override;
};

// Scripted endpoint: the first entry whose `match` substring occurs in the
// final user message wins; an empty `match` is a catch-all. Throws
// EndpointUnavailable when nothing matches.
class ReplayChatEndpoint : public ChatEndpoint {
  public:
    struct Entry {
        std::string match;
        std::string completion;
        std::int64_t prompt_tokens = 0;
        std::int64_t completion_tokens = 0;
    };

    ReplayChatEndpoint() = default;
    explicit ReplayChatEndpoint(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    // JSONL with fields match / completion (+ optional token counts).
    static ReplayChatEndpoint from_jsonl(const std::string& path);

    void add(Entry entry) { entries_.push_back(std::move(entry)); }

    ChatResponse complete(const std::vector<ChatMessage>& messages,
                          const EndpointConfig& cfg) override;

  private:
    std::vector<Entry> entries_;
};

}  // namespace gsmds
