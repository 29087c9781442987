// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "empra/scorers.hpp"
#include "empra/types.hpp"

namespace empra {

enum class AnchorKind { query, top_doc, aligned_sentence };

std::string_view to_string(AnchorKind k);
AnchorKind parse_anchor_kind(std::string_view s);

/// Parses a comma-separated list such as "query,top_doc". Order and
/// duplicates in the input do not matter.
std::vector<AnchorKind> parse_anchor_kinds(std::string_view csv);

/// All three kinds, in canonical order.
std::vector<AnchorKind> all_anchor_kinds();

struct AnchorText {
    std::string text;
    AnchorKind kind = AnchorKind::query;
    std::optional<std::size_t> source_sentence_idx;
};

struct AnchorSet {
    /// Sentence index of the target document -> anchors in kind order.
    std::map<std::size_t, std::vector<AnchorText>> per_sentence;
};

struct AlignedSentence {
    std::string text;
    std::size_t index = 0;
};

/// The sentence of `top_doc` closest to `sentence` by embedding cosine;
/// lowest index wins ties.
AlignedSentence most_similar_sentence(const std::string& sentence, const Document& top_doc, Embedder& embedder);

/// Anchors for every sentence of `d`. `top_doc` is required when `kinds`
/// contains top_doc or aligned_sentence.
AnchorSet build_anchor_set(const Document& d, const Query& q, const Document* top_doc,
                           const std::vector<AnchorKind>& kinds, Embedder& embedder);

/// Docid of the highest-ranked document other than `target_docid`.
std::optional<std::string> top_document_id(const RankedList& ranked, std::string_view target_docid);

}  // namespace empra
