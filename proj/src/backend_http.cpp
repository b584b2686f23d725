#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "lexkg/errors.hpp"
#include "lexkg/extraction.hpp"

namespace lexkg::extract {

using nlohmann::json;

void BackendConfig::validate() const {
    if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0)
        throw ConfigError("backend endpoint must start with http:// or https://: '" + endpoint + "'");
    if (model.empty()) throw ConfigError("backend model must not be empty");
    if (!(temperature >= 0.0 && temperature <= 2.0)) throw ConfigError("temperature must be in [0, 2]");
    if (max_output_tokens <= 0) throw ConfigError("max_output_tokens must be positive");
    if (!(timeout_seconds > 0.0) || !std::isfinite(timeout_seconds))
        throw ConfigError("timeout must be a positive number of seconds");
    if (api_key_env.empty()) throw ConfigError("api_key_env must name an environment variable");
}

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) { config_.validate(); }

std::string HttpBackend::request_body(const Prompt& prompt) const {
    json body = {
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"max_tokens", config_.max_output_tokens},
        {"messages", json::array({{{"role", "system"}, {"content", prompt.system}},
                                  {{"role", "user"}, {"content", prompt.user}}})},
    };
    return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

BackendReply HttpBackend::parse_response_body(std::string_view body, const Prompt& prompt) {
    json doc = json::parse(body.begin(), body.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw BackendError("backend response is not a JSON object");
    if (doc.contains("error")) {
        const auto& e = doc["error"];
        std::string msg = e.is_object() && e.contains("message") && e["message"].is_string()
                              ? e["message"].get<std::string>()
                              : e.dump();
        throw BackendError("backend error: " + msg);
    }
    const auto choices = doc.find("choices");
    if (choices == doc.end() || !choices->is_array() || choices->empty())
        throw BackendError("backend response has no choices");
    const auto& first = (*choices)[0];
    BackendReply reply;
    if (first.contains("message") && first["message"].is_object() && first["message"].contains("content") &&
        first["message"]["content"].is_string())
        reply.text = first["message"]["content"].get<std::string>();
    else if (first.contains("text") && first["text"].is_string())
        reply.text = first["text"].get<std::string>();
    else
        throw BackendError("backend response has no text content");

    reply.input_tokens = prompt.token_estimate;
    reply.output_tokens = estimate_tokens(reply.text);
    if (auto u = doc.find("usage"); u != doc.end() && u->is_object()) {
        if (u->contains("prompt_tokens") && (*u)["prompt_tokens"].is_number_unsigned())
            reply.input_tokens = (*u)["prompt_tokens"].get<std::size_t>();
        if (u->contains("completion_tokens") && (*u)["completion_tokens"].is_number_unsigned())
            reply.output_tokens = (*u)["completion_tokens"].get<std::size_t>();
    }
    return reply;
}

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

BackendReply HttpBackend::send(const Prompt& prompt, const RequestContext&) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    const Endpoint ep = split_endpoint(config_.endpoint);

    httplib::Client client(ep.origin);
    const auto secs = static_cast<time_t>(config_.timeout_seconds);
    const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    httplib::Headers headers;
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = client.Post(ep.path, headers, request_body(prompt), "application/json");
    if (!res) throw BackendError("request to " + config_.endpoint + " failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
        std::string detail = res->body.substr(0, 300);
        throw BackendError("backend returned HTTP " + std::to_string(res->status) + ": " + detail);
    }
    return parse_response_body(res->body, prompt);
}

}  // namespace lexkg::extract
