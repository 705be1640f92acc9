#include "gsmds/cache.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsmds/digest.hpp"
#include "nlohmann/json.hpp"

namespace gsmds {

namespace fs = std::filesystem;

ResponseCache::ResponseCache(std::string directory) : dir_(std::move(directory)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::string ResponseCache::key_for(const std::string& model,
                                   const std::vector<ChatMessage>& messages,
                                   const EndpointConfig& cfg) {
    nlohmann::json j;
    j["model"] = model;
    j["temperature"] = cfg.temperature;
    j["top_p"] = cfg.top_p;
    j["max_tokens"] = cfg.max_new_tokens;
    auto msgs = nlohmann::json::array();
    for (const ChatMessage& m : messages) {
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    j["messages"] = msgs;
    return sha256_hex(j.dump());
}

std::optional<ChatResponse> ResponseCache::lookup(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    fs::path path = fs::path(dir_) / (key + ".json");
    if (!fs::exists(path)) return std::nullopt;
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("content")) {
        throw CacheCorrupt("corrupt cache entry: " + key);
    }
    ChatResponse out;
    out.content = j.value("content", "");
    out.prompt_tokens = j.value("prompt_tokens", 0);
    out.completion_tokens = j.value("completion_tokens", 0);
    out.latency_ms = j.value("latency_ms", 0);
    return out;
}

void ResponseCache::store(const std::string& key, const ChatResponse& response) const {
    if (!enabled()) return;
    nlohmann::json j;
    j["content"] = response.content;
    j["prompt_tokens"] = response.prompt_tokens;
    j["completion_tokens"] = response.completion_tokens;
    j["latency_ms"] = response.latency_ms;

    fs::path final_path = fs::path(dir_) / (key + ".json");
    fs::path tmp_path = fs::path(dir_) / (key + ".tmp");
    {
        std::ofstream out(tmp_path);
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp_path, final_path);  // last writer wins on identical keys
}

}  // namespace gsmds
