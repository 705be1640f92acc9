#pragma once
// Content-addressed completion cache: one JSON file per response, keyed by
// digest(model, messages, sampling parameters). Writes are atomic
// (temp file + rename); re-runs with a warm cache issue no requests.

#include <optional>
#include <string>
#include <vector>

#include "gsmds/endpoint.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct CacheCorrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ResponseCache {
  public:
    ResponseCache() = default;  // disabled
    explicit ResponseCache(std::string directory);

    bool enabled() const { return !dir_.empty(); }

    static std::string key_for(const std::string& model, const std::vector<ChatMessage>& messages,
                               const EndpointConfig& cfg);

    // Throws CacheCorrupt (with the offending key) on an unreadable entry.
    std::optional<ChatResponse> lookup(const std::string& key) const;
    void store(const std::string& key, const ChatResponse& response) const;

  private:
    std::string dir_;
};

}  // namespace gsmds
