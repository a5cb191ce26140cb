#include "telcokit/llm_client.hpp"

#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "telcokit/text.hpp"

namespace telcokit::llm {

std::string fingerprint(const ChatRequest& request) {
    std::ostringstream key;
    key << request.model << '\x1f' << request.system << '\x1f' << request.user << '\x1f'
        << request.temperature << '\x1f' << request.max_tokens;
    return digest128(key.str()).hex();
}

void MockScript::add_keyed(const ChatRequest& request, std::string response_text) {
    add_keyed_fingerprint(fingerprint(request), std::move(response_text));
}

void MockScript::add_keyed_fingerprint(const std::string& fp, std::string response_text) {
    std::lock_guard lock(mu_);
    keyed_[fp] = std::move(response_text);
}

void MockScript::push_ordered(std::string response_text) {
    std::lock_guard lock(mu_);
    ordered_.push_back(std::move(response_text));
}

void MockScript::push_error(const std::string& fp, bool retryable, const std::string& message) {
    std::lock_guard lock(mu_);
    errors_[fp].emplace_back(retryable, message);
}

ChatResponse MockScript::send(const ChatRequest& request) {
    std::lock_guard lock(mu_);
    ++sends_;
    std::string fp = fingerprint(request);
    if (auto it = errors_.find(fp); it != errors_.end() && !it->second.empty()) {
        auto [retryable, message] = it->second.front();
        it->second.pop_front();
        throw TransportError(message, retryable);
    }
    ChatResponse resp;
    if (!ordered_.empty()) {
        resp.text = std::move(ordered_.front());
        ordered_.pop_front();
        return resp;
    }
    if (auto it = keyed_.find(fp); it != keyed_.end()) {
        resp.text = it->second;
        return resp;
    }
    if (strict_) throw TransportError("strict mock: no response for fingerprint " + fp, false);
    std::string text = default_template_.empty() ? "{fp}" : default_template_;
    size_t pos;
    while ((pos = text.find("{fp}")) != std::string::npos) text.replace(pos, 4, fp);
    resp.text = std::move(text);
    return resp;
}

HttpTransport::HttpTransport(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

ChatResponse HttpTransport::send(const ChatRequest& request) {
    // The HTTP path is deliberately thin; everything above it (retries,
    // caching, concurrency) is transport-agnostic and tested via MockScript.
    nlohmann::json body{
        {"model", request.model},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
        {"messages", nlohmann::json::array()},
    };
    if (!request.system.empty())
        body["messages"].push_back({{"role", "system"}, {"content", request.system}});
    body["messages"].push_back({{"role", "user"}, {"content", request.user}});

    const char* key = std::getenv(endpoint_.api_key_env.c_str());

    httplib::Client client(endpoint_.base_url);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (key) headers.emplace("Authorization", std::string("Bearer ") + key);

    auto start = std::chrono::steady_clock::now();
    auto result = client.Post(endpoint_.path, headers, body.dump(), "application/json");
    if (!result) throw TransportError("connection failure", /*retryable=*/true);
    int status = result->status;
    std::string response_body = result->body;
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    if (status == 429 || status >= 500)
        throw TransportError("HTTP " + std::to_string(status), /*retryable=*/true);
    if (status != 200)
        throw TransportError("HTTP " + std::to_string(status) + ": " + response_body,
                             /*retryable=*/false);

    nlohmann::json parsed = nlohmann::json::parse(response_body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
        throw TransportError("malformed chat-completions response", /*retryable=*/false);
    ChatResponse resp;
    const auto& choice = parsed["choices"][0];
    resp.text = choice.at("message").at("content").get<std::string>();
    resp.finish_reason = choice.value("finish_reason", "stop");
    if (parsed.contains("usage")) {
        resp.prompt_tokens = parsed["usage"].value("prompt_tokens", 0);
        resp.completion_tokens = parsed["usage"].value("completion_tokens", 0);
    }
    resp.latency_ms = elapsed;
    return resp;
}

ChatClient::ChatClient(std::shared_ptr<Transport> transport, ClientConfig config)
    : transport_(std::move(transport)), config_(std::move(config)) {
    if (!config_.sleep_fn)
        config_.sleep_fn = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::optional<ChatResponse> ChatClient::cache_lookup(const std::string& key) {
    {
        std::lock_guard lock(cache_mu_);
        if (auto it = memory_cache_.find(key); it != memory_cache_.end()) {
            ChatResponse resp = it->second;
            resp.from_cache = true;
            return resp;
        }
    }
    if (!config_.cache_dir.empty()) {
        std::ifstream in(config_.cache_dir + "/" + key + ".json");
        if (in) {
            nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
            if (!j.is_discarded()) {
                ChatResponse resp;
                resp.text = j.value("text", "");
                resp.finish_reason = j.value("finish_reason", "stop");
                resp.from_cache = true;
                std::lock_guard lock(cache_mu_);
                memory_cache_[key] = resp;
                return resp;
            }
        }
    }
    return std::nullopt;
}

void ChatClient::cache_store(const std::string& key, const ChatResponse& response) {
    {
        std::lock_guard lock(cache_mu_);
        memory_cache_[key] = response;
    }
    if (!config_.cache_dir.empty()) {
        std::filesystem::create_directories(config_.cache_dir);
        std::ofstream out(config_.cache_dir + "/" + key + ".json");
        out << nlohmann::json{{"text", response.text},
                              {"finish_reason", response.finish_reason}}
                   .dump();
    }
}

ChatResponse ChatClient::chat(const ChatRequest& request) {
    if (request.user.empty()) throw std::invalid_argument("user message must be non-empty");
    std::string key = fingerprint(request) + ":" + request.model;
    if (config_.cache_enabled) {
        if (auto cached = cache_lookup(key)) return *cached;
    }

    {
        std::unique_lock lock(inflight_mu_);
        inflight_cv_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
        ++in_flight_;
    }
    struct Slot {
        ChatClient* c;
        ~Slot() {
            std::lock_guard lock(c->inflight_mu_);
            --c->in_flight_;
            c->inflight_cv_.notify_one();
        }
    } slot{this};

    int attempt = 0;
    for (;;) {
        try {
            {
                std::lock_guard lock(cache_mu_);
                ++transport_calls_;
            }
            ChatResponse resp = transport_->send(request);
            resp.retries = attempt;
            if (config_.cache_enabled) cache_store(key, resp);
            return resp;
        } catch (const TransportError& e) {
            if (!e.retryable() || attempt >= config_.max_retries) throw;
            auto delay = config_.backoff_base * (1 << attempt);
            config_.sleep_fn(delay);
            ++attempt;
        }
    }
}

}  // namespace telcokit::llm
