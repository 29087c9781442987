// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/remote.hpp"

#include <cmath>
#include <httplib.h>
#include <json.hpp>

#include "empra/errors.hpp"

namespace empra {

using nlohmann::json;

namespace {

class SlotGuard {
public:
    explicit SlotGuard(std::counting_semaphore<>& sem) : sem_(sem) { sem_.acquire(); }
    ~SlotGuard() { sem_.release(); }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;

private:
    std::counting_semaphore<>& sem_;
};

const json& field(const json& body, const char* name, const std::string& endpoint) {
    if (!body.is_object() || !body.contains(name)) {
        throw RemoteError(endpoint, std::string("response lacks field '") + name + "'");
    }
    return body.at(name);
}

double finite_number(const json& v, const std::string& endpoint) {
    if (!v.is_number()) throw RemoteError(endpoint, "non-numeric value in response");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw RemoteError(endpoint, "non-finite value in response");
    return x;
}

std::vector<double> number_array(const json& arr, std::size_t expected, const std::string& endpoint) {
    if (!arr.is_array()) throw RemoteError(endpoint, "expected an array");
    if (arr.size() != expected) {
        throw RemoteError(endpoint, "expected " + std::to_string(expected) + " values, got " +
                                        std::to_string(arr.size()));
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.push_back(finite_number(v, endpoint));
    return out;
}

json parse_body(const std::string& body, const std::string& endpoint) {
    auto parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) throw RemoteError(endpoint, "response is not valid JSON");
    return parsed;
}

}  // namespace

RemoteClient::RemoteClient(std::string base_url) : RemoteClient(std::move(base_url), Options{}) {}

RemoteClient::RemoteClient(std::string base_url, Options options)
    : base_url_(std::move(base_url)), options_(options) {
    if (base_url_.empty()) throw ContractError("remote client requires a server URL");
    while (base_url_.size() > 1 && base_url_.back() == '/') base_url_.pop_back();
    if (options_.max_in_flight == 0) throw ContractError("max_in_flight must be positive");
    slots_ = std::make_unique<std::counting_semaphore<>>(static_cast<std::ptrdiff_t>(options_.max_in_flight));
}

std::string RemoteClient::post(const std::string& path, const std::string& body) {
    const std::string endpoint = base_url_ + path;
    SlotGuard slot(*slots_);
    httplib::Client cli(base_url_);
    cli.set_connection_timeout(options_.timeout);
    cli.set_read_timeout(options_.timeout);
    cli.set_write_timeout(options_.timeout);
    auto res = cli.Post(path, body, "application/json");
    if (!res) throw RemoteError(endpoint, "transport failure: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
        std::string cause = "HTTP " + std::to_string(res->status);
        auto err = json::parse(res->body, nullptr, false);
        if (!err.is_discarded() && err.is_object() && err.contains("error") && err["error"].is_string()) {
            cause += ": " + err["error"].get<std::string>();
        }
        throw RemoteError(endpoint, cause);
    }
    return std::move(res->body);
}

std::vector<EmbeddingVector> RemoteClient::embed(std::span<const std::string> texts) {
    if (texts.empty()) return {};
    const std::string endpoint = base_url_ + "/embed";
    const auto body = parse_body(post("/embed", json{{"texts", texts}}.dump()), endpoint);
    const auto& vectors = field(body, "vectors", endpoint);
    const auto& dim_field = field(body, "dim", endpoint);
    if (!dim_field.is_number_integer() || dim_field.get<long long>() <= 0) {
        throw RemoteError(endpoint, "'dim' must be a positive integer");
    }
    const auto dim = static_cast<std::size_t>(dim_field.get<long long>());
    if (!vectors.is_array() || vectors.size() != texts.size()) {
        throw RemoteError(endpoint, "expected " + std::to_string(texts.size()) + " vectors");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        auto values = number_array(v, dim, endpoint);
        out.emplace_back(std::move(values));
    }
    return out;
}

std::vector<double> RemoteClient::score(const std::string& query, std::span<const std::string> docs) {
    if (docs.empty()) return {};
    const std::string endpoint = base_url_ + "/score";
    const auto body = parse_body(post("/score", json{{"query", query}, {"docs", docs}}.dump()), endpoint);
    return number_array(field(body, "scores", endpoint), docs.size(), endpoint);
}

std::vector<double> RemoteClient::nsp(std::span<const TextPair> pairs) {
    if (pairs.empty()) return {};
    const std::string endpoint = base_url_ + "/nsp";
    json arr = json::array();
    for (const auto& [a, b] : pairs) arr.push_back(json::array({a, b}));
    const auto body = parse_body(post("/nsp", json{{"pairs", std::move(arr)}}.dump()), endpoint);
    auto probs = number_array(field(body, "probs", endpoint), pairs.size(), endpoint);
    for (double p : probs) {
        if (p < 0.0 || p > 1.0) throw RemoteError(endpoint, "probability outside [0, 1]: " + std::to_string(p));
    }
    return probs;
}

std::vector<double> RemoteClient::perplexity(std::span<const std::string> texts) {
    if (texts.empty()) return {};
    const std::string endpoint = base_url_ + "/perplexity";
    const auto body = parse_body(post("/perplexity", json{{"texts", texts}}.dump()), endpoint);
    const auto& ppl = field(body, "ppl", endpoint);
    if (ppl.is_array()) {
        for (std::size_t i = 0; i < ppl.size(); ++i) {
            if (ppl[i].is_null()) throw RemoteError(endpoint, "no perplexity for text " + std::to_string(i));
        }
    }
    auto values = number_array(ppl, texts.size(), endpoint);
    for (double v : values) {
        if (v <= 0.0) throw RemoteError(endpoint, "non-positive perplexity " + std::to_string(v));
    }
    return values;
}

std::string RemoteClient::health() {
    const std::string endpoint = base_url_ + "/healthz";
    SlotGuard slot(*slots_);
    httplib::Client cli(base_url_);
    cli.set_connection_timeout(options_.timeout);
    cli.set_read_timeout(options_.timeout);
    auto res = cli.Get("/healthz");
    if (!res) throw RemoteError(endpoint, "transport failure: " + httplib::to_string(res.error()));
    if (res->status != 200) throw RemoteError(endpoint, "HTTP " + std::to_string(res->status));
    return std::move(res->body);
}

}  // namespace empra
