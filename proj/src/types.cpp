// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/types.hpp"

#include <unordered_set>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

Document Document::from_text(std::string docid, std::string text) {
    Document d;
    d.docid = std::move(docid);
    d.sentences = split_sentences(text);
    d.text = std::move(text);
    return d;
}

Document Document::from_sentences(std::string docid, std::vector<std::string> sentences) {
    Document d;
    d.docid = std::move(docid);
    d.text = join(sentences);
    d.sentences = std::move(sentences);
    return d;
}

RankedList::RankedList(std::string qid, std::vector<RankedEntry> entries)
    : qid_(std::move(qid)), entries_(std::move(entries)) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.rank != static_cast<int>(i) + 1) {
            throw ValidationError("query " + qid_ + ": ranks are not consecutive from 1 (expected " +
                                  std::to_string(i + 1) + ", found " + std::to_string(e.rank) + ")");
        }
        if (i > 0 && e.score > entries_[i - 1].score) {
            throw ValidationError("query " + qid_ + ": score increases at rank " + std::to_string(e.rank));
        }
        if (!seen.insert(e.docid).second) {
            throw ValidationError("query " + qid_ + ": duplicate docid " + e.docid);
        }
    }
}

std::optional<int> RankedList::rank_of(std::string_view docid) const {
    for (const auto& e : entries_) {
        if (e.docid == docid) return e.rank;
    }
    return std::nullopt;
}

const RankedEntry& RankedList::at_rank(int rank) const {
    if (rank < 1 || rank > static_cast<int>(entries_.size())) {
        throw ContractError("rank " + std::to_string(rank) + " outside list of depth " +
                            std::to_string(entries_.size()));
    }
    return entries_[static_cast<std::size_t>(rank - 1)];
}

std::string_view to_string(Difficulty d) {
    switch (d) {
        case Difficulty::easy: return "easy";
        case Difficulty::hard: return "hard";
        case Difficulty::mixture: return "mixture";
    }
    return "mixture";
}

Difficulty parse_difficulty(std::string_view s) {
    if (s == "easy") return Difficulty::easy;
    if (s == "hard") return Difficulty::hard;
    if (s == "mixture") return Difficulty::mixture;
    throw ContractError("unknown difficulty '" + std::string(s) + "'");
}

}  // namespace empra
