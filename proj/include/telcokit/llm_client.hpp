#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace telcokit::llm {

struct ChatRequest {
    std::string model;
    std::string system;  // may be empty
    std::string user;
    double temperature = 0.0;
    int max_tokens = 1024;
};

struct ChatResponse {
    std::string text;
    std::string finish_reason = "stop";
    int prompt_tokens = 0;
    int completion_tokens = 0;
    double latency_ms = 0.0;
    int retries = 0;
    bool from_cache = false;
};

// Stable request fingerprint; cache key is (fingerprint, model).
std::string fingerprint(const ChatRequest& request);

class TransportError : public std::runtime_error {
public:
    TransportError(std::string message, bool retryable)
        : std::runtime_error(std::move(message)), retryable_(retryable) {}
    bool retryable() const { return retryable_; }

private:
    bool retryable_;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual ChatResponse send(const ChatRequest& request) = 0;
};

// Scripted transport for tests and offline pipeline runs. Responses are
// keyed by request fingerprint; an ordered queue is consulted first. In
// strict mode an unmatched request throws; otherwise the default template
// is used with "{fp}" replaced by the request fingerprint, which keeps
// fully-mocked runs deterministic.
class MockScript : public Transport {
public:
    void add_keyed(const ChatRequest& request, std::string response_text);
    void add_keyed_fingerprint(const std::string& fp, std::string response_text);
    void push_ordered(std::string response_text);
    // Next send() for this fingerprint fails; retryable errors exercise the
    // retry path.
    void push_error(const std::string& fp, bool retryable, const std::string& message);
    void set_strict(bool strict) { strict_ = strict; }
    void set_default_template(std::string tmpl) { default_template_ = std::move(tmpl); }

    ChatResponse send(const ChatRequest& request) override;
    int sends() const { return sends_; }

private:
    std::unordered_map<std::string, std::string> keyed_;
    std::deque<std::string> ordered_;
    std::unordered_map<std::string, std::deque<std::pair<bool, std::string>>> errors_;
    std::string default_template_;
    bool strict_ = false;
    int sends_ = 0;
    std::mutex mu_;
};

struct HttpEndpoint {
    std::string base_url;            // e.g. http://localhost:8000
    std::string path = "/v1/chat/completions";
    std::string api_key_env = "TELCOKIT_API_KEY";  // credential comes from env only
};

// Chat-completions JSON over HTTP (messages array, model, temperature).
class HttpTransport : public Transport {
public:
    explicit HttpTransport(HttpEndpoint endpoint);
    ChatResponse send(const ChatRequest& request) override;

private:
    HttpEndpoint endpoint_;
};

struct ClientConfig {
    int max_retries = 3;
    std::chrono::milliseconds backoff_base{250};
    bool cache_enabled = true;
    std::string cache_dir;  // empty = in-memory only
    int max_in_flight = 4;
    std::function<void(std::chrono::milliseconds)> sleep_fn;  // injectable for tests
};

class ChatClient {
public:
    ChatClient(std::shared_ptr<Transport> transport, ClientConfig config = {});

    // Retries retryable transport failures with exponential backoff, caches
    // successful responses, and bounds concurrent in-flight requests.
    ChatResponse chat(const ChatRequest& request);

    int transport_calls() const { return transport_calls_; }

private:
    std::optional<ChatResponse> cache_lookup(const std::string& key);
    void cache_store(const std::string& key, const ChatResponse& response);

    std::shared_ptr<Transport> transport_;
    ClientConfig config_;
    std::unordered_map<std::string, ChatResponse> memory_cache_;
    std::mutex cache_mu_;
    std::mutex inflight_mu_;
    std::condition_variable_any inflight_cv_;
    int in_flight_ = 0;
    int transport_calls_ = 0;
};

}  // namespace telcokit::llm
