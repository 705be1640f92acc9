#include "gsmds/endpoint.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "gsmds/textutil.hpp"
#include "httplib.h"
#include "nlohmann/json.hpp"

namespace gsmds {

void validate_config(const EndpointConfig& cfg) {
    if (cfg.temperature < 0) throw endpoint_error("temperature must be >= 0");
    if (cfg.max_new_tokens < 1) throw endpoint_error("max_new_tokens must be >= 1");
    if (cfg.max_concurrent < 1) throw endpoint_error("max_concurrent must be >= 1");
}

namespace {

struct UrlParts {
    std::string host_port;  // "http://host:port"
    std::string path_prefix;
};

UrlParts split_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw endpoint_error("base URL needs a scheme: " + base_url);
    }
    std::string scheme = base_url.substr(0, scheme_end);
    if (scheme != "http") {
        throw endpoint_error("only http endpoints are supported, got scheme '" + scheme + "'");
    }
    auto path_start = base_url.find('/', scheme_end + 3);
    UrlParts parts;
    if (path_start == std::string::npos) {
        parts.host_port = base_url;
    } else {
        parts.host_port = base_url.substr(0, path_start);
        parts.path_prefix = base_url.substr(path_start);
        while (!parts.path_prefix.empty() && parts.path_prefix.back() == '/') {
            parts.path_prefix.pop_back();
        }
    }
    return parts;
}

}  // namespace

ChatResponse HttpChatEndpoint::complete(const std::vector<ChatMessage>& messages,
                                        const EndpointConfig& cfg) {
    validate_config(cfg);
    UrlParts url = split_url(cfg.base_url);

    nlohmann::json body;
    body["model"] = cfg.model;
    body["temperature"] = cfg.temperature;
    body["top_p"] = cfg.top_p;
    body["max_tokens"] = cfg.max_new_tokens;
    auto msgs = nlohmann::json::array();
    for (const ChatMessage& m : messages) {
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    body["messages"] = msgs;
    const std::string payload = body.dump();

    httplib::Headers headers;
    if (!cfg.api_key_env.empty()) {
        const char* key = std::getenv(cfg.api_key_env.c_str());
        if (key != nullptr && *key != '\0') {
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    std::string last_error;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg.retry_backoff_ms * (1 << (attempt - 1))));
        }
        httplib::Client client(url.host_port);
        client.set_connection_timeout(cfg.timeout_s, 0);
        client.set_read_timeout(cfg.timeout_s, 0);

        auto start = std::chrono::steady_clock::now();
        httplib::Result res =
            client.Post(url.path_prefix + "/chat/completions", headers, payload, "application/json");
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "http status " + std::to_string(res->status);
            // 4xx other than 429 will not get better on retry.
            if (res->status >= 400 && res->status < 500 && res->status != 429) break;
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded()) {
            last_error = "unparseable response body";
            continue;
        }
        try {
            ChatResponse out;
            out.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
            if (j.contains("usage")) {
                out.prompt_tokens = j["usage"].value("prompt_tokens", 0);
                out.completion_tokens = j["usage"].value("completion_tokens", 0);
            }
            out.latency_ms = elapsed;
            return out;
        } catch (const nlohmann::json::exception& e) {
            last_error = std::string("unexpected response shape: ") + e.what();
            continue;
        }
    }
    throw EndpointUnavailable("endpoint unavailable after " + std::to_string(cfg.max_retries + 1) +
                              " attempts: " + last_error);
}

ReplayChatEndpoint ReplayChatEndpoint::from_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw endpoint_error("cannot open replay file: " + path);
    std::vector<Entry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw endpoint_error("replay line " + std::to_string(lineno) + ": invalid JSON");
        }
        Entry e;
        e.match = j.value("match", "");
        e.completion = j.value("completion", "");
        e.prompt_tokens = j.value("prompt_tokens", 0);
        e.completion_tokens = j.value("completion_tokens", 0);
        entries.push_back(std::move(e));
    }
    return ReplayChatEndpoint(std::move(entries));
}

ChatResponse ReplayChatEndpoint::complete(const std::vector<ChatMessage>& messages,
                                          const EndpointConfig&) {
    std::string last_user;
    for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
        if (it->role == "user") {
            last_user = it->content;
            break;
        }
    }
    for (const Entry& e : entries_) {
        if (e.match.empty() || last_user.find(e.match) != std::string::npos) {
            ChatResponse out;
            out.content = e.completion;
            out.prompt_tokens = e.prompt_tokens;
            out.completion_tokens = e.completion_tokens;
            out.latency_ms = 0;
            return out;
        }
    }
    throw EndpointUnavailable("no replay entry matches the prompt");
}

}  // namespace gsmds
