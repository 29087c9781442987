// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <semaphore>
#include <span>
#include <string>
#include <vector>

#include "empra/scorers.hpp"

namespace empra {

/// JSON-over-HTTP client for the model server.
///
/// Endpoints: POST /embed, /score, /nsp, /perplexity and GET /healthz.
/// Every call checks cardinality, ordering-relevant shape and value ranges
/// of the response and throws RemoteError (endpoint + cause) otherwise.
/// At most `max_in_flight` requests run concurrently per client; each call
/// owns its connection, so responses cannot be mixed up between callers.
class RemoteClient {
public:
    struct Options {
        std::size_t max_in_flight = 4;
        std::chrono::seconds timeout{120};
    };

    explicit RemoteClient(std::string base_url);
    RemoteClient(std::string base_url, Options options);

    const std::string& base_url() const noexcept { return base_url_; }

    std::vector<EmbeddingVector> embed(std::span<const std::string> texts);
    std::vector<double> score(const std::string& query, std::span<const std::string> docs);
    std::vector<double> nsp(std::span<const TextPair> pairs);
    std::vector<double> perplexity(std::span<const std::string> texts);

    /// Returns the raw /healthz body.
    std::string health();

private:
    std::string post(const std::string& path, const std::string& body);

    std::string base_url_;
    Options options_;
    std::unique_ptr<std::counting_semaphore<>> slots_;
};

class RemoteEmbedder final : public Embedder {
public:
    explicit RemoteEmbedder(std::shared_ptr<RemoteClient> client) : client_(std::move(client)) {}
    std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override { return client_->embed(texts); }

private:
    std::shared_ptr<RemoteClient> client_;
};

class RemoteRelevance final : public RelevanceScorer {
public:
    explicit RemoteRelevance(std::shared_ptr<RemoteClient> client) : client_(std::move(client)) {}
    std::vector<double> score(const std::string& query, std::span<const std::string> docs) override {
        return client_->score(query, docs);
    }

private:
    std::shared_ptr<RemoteClient> client_;
};

class RemoteCoherence final : public CoherenceScorer {
public:
    explicit RemoteCoherence(std::shared_ptr<RemoteClient> client) : client_(std::move(client)) {}
    std::vector<double> next_sentence(std::span<const TextPair> pairs) override { return client_->nsp(pairs); }

private:
    std::shared_ptr<RemoteClient> client_;
};

class RemotePerplexity final : public PerplexityScorer {
public:
    explicit RemotePerplexity(std::shared_ptr<RemoteClient> client) : client_(std::move(client)) {}
    std::vector<double> perplexity(std::span<const std::string> texts) override { return client_->perplexity(texts); }

private:
    std::shared_ptr<RemoteClient> client_;
};

}  // namespace empra
