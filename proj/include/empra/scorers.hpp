// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "empra/vecmath.hpp"

namespace empra {

using TextPair = std::pair<std::string, std::string>;

/// Maps texts to embeddings. Implementations must be safe to call concurrently.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;

    EmbeddingVector embed_one(const std::string& text);
};

/// Query-document relevance f_rel. Used for both the relevance and the victim roles.
class RelevanceScorer {
public:
    virtual ~RelevanceScorer() = default;
    virtual std::vector<double> score(const std::string& query, std::span<const std::string> docs) = 0;
};

/// Next-sentence compatibility f_nsp(first, second) in [0, 1].
class CoherenceScorer {
public:
    virtual ~CoherenceScorer() = default;
    virtual std::vector<double> next_sentence(std::span<const TextPair> pairs) = 0;
};

class PerplexityScorer {
public:
    virtual ~PerplexityScorer() = default;
    virtual std::vector<double> perplexity(std::span<const std::string> texts) = 0;
};

struct EmbedderSpec {
    enum class Kind { reference, remote };

    Kind kind = Kind::reference;
    std::size_t dim = 256;
    std::uint64_t seed = 0;
    std::string endpoint;

    static EmbedderSpec reference(std::size_t dim, std::uint64_t seed);
    static EmbedderSpec remote(std::string endpoint);

    /// Throws ContractError when the kind-specific fields are missing.
    void validate() const;
};

/// Signed hashing-trick bag of words, L2-normalised.
///
/// Tokens come from tokenize_words(). Each distinct token hashes with 64-bit
/// FNV-1a over the seed (8 bytes, little-endian) followed by the token bytes.
/// The bucket is hash mod dim and the sign is negative when bit 63 is set.
/// A token occurring tf times contributes sign * (1 + ln tf).
EmbeddingVector embed_reference(std::string_view text, const EmbedderSpec& spec);

/// cosine(embed_reference(query), embed_reference(doc))
double rel_score_reference(std::string_view query, std::string_view doc_text, const EmbedderSpec& spec);

/// (1 + cosine(embed_reference(prefix), embed_reference(suffix))) / 2
double coherence_reference(std::string_view prefix, std::string_view suffix, const EmbedderSpec& spec);

class ReferenceEmbedder final : public Embedder {
public:
    explicit ReferenceEmbedder(EmbedderSpec spec);
    std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
    const EmbedderSpec& spec() const noexcept { return spec_; }

private:
    EmbedderSpec spec_;
};

class ReferenceRelevance final : public RelevanceScorer {
public:
    explicit ReferenceRelevance(EmbedderSpec spec);
    std::vector<double> score(const std::string& query, std::span<const std::string> docs) override;

private:
    EmbedderSpec spec_;
};

class ReferenceCoherence final : public CoherenceScorer {
public:
    explicit ReferenceCoherence(EmbedderSpec spec);
    std::vector<double> next_sentence(std::span<const TextPair> pairs) override;

private:
    EmbedderSpec spec_;
};

/// Memoises another embedder by exact text for the lifetime of a run.
class CachingEmbedder final : public Embedder {
public:
    explicit CachingEmbedder(std::shared_ptr<Embedder> inner);
    std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

    std::size_t cache_size() const;

private:
    std::shared_ptr<Embedder> inner_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, EmbeddingVector> cache_;
};

/// The scorer handles an attack needs. `victim` is only consulted for rank
/// evaluation, never while generating or constructing adversarial documents.
struct ScorerRoles {
    std::shared_ptr<Embedder> embedder;
    std::shared_ptr<RelevanceScorer> relevance;
    std::shared_ptr<CoherenceScorer> coherence;
    std::shared_ptr<RelevanceScorer> victim;

    /// Reference scorers sharing one spec for embedder, relevance and coherence;
    /// the victim is a reference relevance scorer seeded with `victim_seed`.
    static ScorerRoles reference(std::size_t dim, std::uint64_t seed, std::uint64_t victim_seed);
};

}  // namespace empra
