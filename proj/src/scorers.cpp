// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/scorers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t seed, std::string_view token) {
    std::uint64_t h = kFnvOffset;
    for (int i = 0; i < 8; ++i) {
        h ^= (seed >> (8 * i)) & 0xffU;
        h *= kFnvPrime;
    }
    for (unsigned char c : token) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

void require_reference(const EmbedderSpec& spec) {
    if (spec.kind != EmbedderSpec::Kind::reference) {
        throw ContractError("reference scorer requires a reference embedder spec");
    }
    spec.validate();
}

}  // namespace

EmbeddingVector Embedder::embed_one(const std::string& text) {
    auto out = embed(std::span<const std::string>(&text, 1));
    if (out.size() != 1) throw ContractError("embedder returned wrong number of vectors");
    return std::move(out.front());
}

EmbedderSpec EmbedderSpec::reference(std::size_t dim, std::uint64_t seed) {
    EmbedderSpec s;
    s.kind = Kind::reference;
    s.dim = dim;
    s.seed = seed;
    s.validate();
    return s;
}

EmbedderSpec EmbedderSpec::remote(std::string endpoint) {
    EmbedderSpec s;
    s.kind = Kind::remote;
    s.endpoint = std::move(endpoint);
    s.validate();
    return s;
}

void EmbedderSpec::validate() const {
    if (kind == Kind::reference && dim < 2) throw ContractError("embedder dim must be at least 2");
    if (kind == Kind::remote && endpoint.empty()) throw ContractError("remote embedder requires an endpoint");
}

EmbeddingVector embed_reference(std::string_view text, const EmbedderSpec& spec) {
    require_reference(spec);
    // Lowercased tokens live in one buffer; sorting the views gives the same
    // lexicographic accumulation order as an ordered map, without a node per
    // token. The order matters: bucket sums must not depend on token layout.
    std::string buf;
    buf.reserve(text.size());
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t start = 0;
    bool in_token = false;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            if (!in_token) {
                start = buf.size();
                in_token = true;
            }
            buf.push_back(static_cast<char>(std::tolower(u)));
        } else if (in_token) {
            spans.emplace_back(start, buf.size() - start);
            in_token = false;
        }
    }
    if (in_token) spans.emplace_back(start, buf.size() - start);

    std::vector<double> v(spec.dim, 0.0);
    if (spans.empty()) return EmbeddingVector(std::move(v));
    std::vector<std::string_view> toks;
    toks.reserve(spans.size());
    for (const auto& [b, n] : spans) toks.emplace_back(buf.data() + b, n);
    std::sort(toks.begin(), toks.end());

    for (std::size_t i = 0; i < toks.size();) {
        std::size_t j = i + 1;
        while (j < toks.size() && toks[j] == toks[i]) ++j;
        const std::uint64_t h = fnv1a(spec.seed, toks[i]);
        const double sign = (h >> 63) == 0 ? 1.0 : -1.0;
        v[h % spec.dim] += sign * (1.0 + std::log(static_cast<double>(j - i)));
        i = j;
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    // Colliding tokens of opposite sign can cancel out completely.
    if (norm > 0.0) {
        for (double& x : v) x /= norm;
    }
    return EmbeddingVector(std::move(v));
}

double rel_score_reference(std::string_view query, std::string_view doc_text, const EmbedderSpec& spec) {
    return cosine(embed_reference(query, spec), embed_reference(doc_text, spec));
}

double coherence_reference(std::string_view prefix, std::string_view suffix, const EmbedderSpec& spec) {
    return (1.0 + cosine(embed_reference(prefix, spec), embed_reference(suffix, spec))) / 2.0;
}

ReferenceEmbedder::ReferenceEmbedder(EmbedderSpec spec) : spec_(std::move(spec)) { require_reference(spec_); }

std::vector<EmbeddingVector> ReferenceEmbedder::embed(std::span<const std::string> texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_reference(t, spec_));
    return out;
}

ReferenceRelevance::ReferenceRelevance(EmbedderSpec spec) : spec_(std::move(spec)) { require_reference(spec_); }

std::vector<double> ReferenceRelevance::score(const std::string& query, std::span<const std::string> docs) {
    const auto q = embed_reference(query, spec_);
    std::vector<double> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(cosine(q, embed_reference(d, spec_)));
    return out;
}

ReferenceCoherence::ReferenceCoherence(EmbedderSpec spec) : spec_(std::move(spec)) { require_reference(spec_); }

std::vector<double> ReferenceCoherence::next_sentence(std::span<const TextPair> pairs) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) out.push_back(coherence_reference(a, b, spec_));
    return out;
}

CachingEmbedder::CachingEmbedder(std::shared_ptr<Embedder> inner) : inner_(std::move(inner)) {
    if (!inner_) throw ContractError("CachingEmbedder requires an inner embedder");
}

std::vector<EmbeddingVector> CachingEmbedder::embed(std::span<const std::string> texts) {
    std::vector<std::string> missing;
    {
        std::lock_guard lock(mu_);
        for (const auto& t : texts) {
            if (!cache_.contains(t)) missing.push_back(t);
        }
    }
    if (!missing.empty()) {
        // Deduplicate so one batch never asks for the same text twice.
        std::vector<std::string> unique;
        {
            std::unordered_map<std::string, bool> seen;
            for (auto& t : missing) {
                if (seen.emplace(t, true).second) unique.push_back(std::move(t));
            }
        }
        auto fresh = inner_->embed(unique);
        if (fresh.size() != unique.size()) throw ContractError("embedder returned wrong number of vectors");
        std::lock_guard lock(mu_);
        for (std::size_t i = 0; i < unique.size(); ++i) cache_.emplace(std::move(unique[i]), std::move(fresh[i]));
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    std::lock_guard lock(mu_);
    for (const auto& t : texts) out.push_back(cache_.at(t));
    return out;
}

std::size_t CachingEmbedder::cache_size() const {
    std::lock_guard lock(mu_);
    return cache_.size();
}

ScorerRoles ScorerRoles::reference(std::size_t dim, std::uint64_t seed, std::uint64_t victim_seed) {
    const auto spec = EmbedderSpec::reference(dim, seed);
    ScorerRoles roles;
    roles.embedder = std::make_shared<ReferenceEmbedder>(spec);
    roles.relevance = std::make_shared<ReferenceRelevance>(spec);
    roles.coherence = std::make_shared<ReferenceCoherence>(spec);
    roles.victim = std::make_shared<ReferenceRelevance>(EmbedderSpec::reference(dim, victim_seed));
    return roles;
}

}  // namespace empra
