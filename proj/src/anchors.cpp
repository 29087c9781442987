// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/anchors.hpp"

#include <algorithm>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

std::string_view to_string(AnchorKind k) {
    switch (k) {
        case AnchorKind::query: return "query";
        case AnchorKind::top_doc: return "top_doc";
        case AnchorKind::aligned_sentence: return "aligned_sentence";
    }
    return "query";
}

AnchorKind parse_anchor_kind(std::string_view s) {
    if (s == "query") return AnchorKind::query;
    if (s == "top_doc" || s == "top-doc") return AnchorKind::top_doc;
    if (s == "aligned_sentence" || s == "aligned-sentence") return AnchorKind::aligned_sentence;
    throw ContractError("unknown anchor kind '" + std::string(s) + "'");
}

std::vector<AnchorKind> parse_anchor_kinds(std::string_view csv) {
    std::vector<AnchorKind> kinds;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const auto comma = csv.find(',', start);
        const auto end = comma == std::string_view::npos ? csv.size() : comma;
        const auto item = collapse_whitespace(csv.substr(start, end - start));
        if (!item.empty()) {
            const auto k = parse_anchor_kind(item);
            if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (kinds.empty()) throw ContractError("at least one anchor kind is required");
    std::sort(kinds.begin(), kinds.end());
    return kinds;
}

std::vector<AnchorKind> all_anchor_kinds() {
    return {AnchorKind::query, AnchorKind::top_doc, AnchorKind::aligned_sentence};
}

namespace {

std::size_t argmax_cosine(const EmbeddingVector& probe, const std::vector<EmbeddingVector>& pool) {
    std::size_t best = 0;
    double best_sim = cosine(probe, pool.front());
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const double sim = cosine(probe, pool[i]);
        if (sim > best_sim) {
            best_sim = sim;
            best = i;
        }
    }
    return best;
}

}  // namespace

AlignedSentence most_similar_sentence(const std::string& sentence, const Document& top_doc, Embedder& embedder) {
    if (top_doc.sentences.empty()) throw ContractError("top-ranked document has no sentences");
    const auto pool = embedder.embed(top_doc.sentences);
    const auto idx = argmax_cosine(embedder.embed_one(sentence), pool);
    return {top_doc.sentences[idx], idx};
}

AnchorSet build_anchor_set(const Document& d, const Query& q, const Document* top_doc,
                           const std::vector<AnchorKind>& kinds_in, Embedder& embedder) {
    if (kinds_in.empty()) throw ContractError("anchor kinds must not be empty");
    auto kinds = kinds_in;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

    const bool needs_top = std::any_of(kinds.begin(), kinds.end(), [](AnchorKind k) { return k != AnchorKind::query; });
    if (needs_top && top_doc == nullptr) {
        throw ContractError("anchor kinds top_doc/aligned_sentence require a top-ranked document");
    }
    const bool aligned = std::find(kinds.begin(), kinds.end(), AnchorKind::aligned_sentence) != kinds.end();
    if (aligned && top_doc->sentences.empty()) throw ContractError("top-ranked document has no sentences");

    // Top-document sentences and target sentences are embedded once each.
    std::vector<EmbeddingVector> top_vecs;
    std::vector<EmbeddingVector> sent_vecs;
    if (aligned) {
        top_vecs = embedder.embed(top_doc->sentences);
        sent_vecs = embedder.embed(d.sentences);
    }

    AnchorSet set;
    for (std::size_t i = 0; i < d.sentences.size(); ++i) {
        auto& list = set.per_sentence[i];
        for (auto k : kinds) {
            switch (k) {
                case AnchorKind::query:
                    list.push_back({q.text, k, std::nullopt});
                    break;
                case AnchorKind::top_doc:
                    list.push_back({top_doc->text, k, std::nullopt});
                    break;
                case AnchorKind::aligned_sentence: {
                    const auto idx = argmax_cosine(sent_vecs[i], top_vecs);
                    list.push_back({top_doc->sentences[idx], k, idx});
                    break;
                }
            }
        }
    }
    return set;
}

std::optional<std::string> top_document_id(const RankedList& ranked, std::string_view target_docid) {
    for (const auto& e : ranked.entries()) {
        if (e.docid != target_docid) return e.docid;
    }
    return std::nullopt;
}

}  // namespace empra
