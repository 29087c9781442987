// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace empra {

struct Query {
    std::string qid;
    std::string text;
};

/// A document and its sentence segmentation. `text` keeps the original bytes;
/// `sentences` are the segments S_1..S_|d| in order.
struct Document {
    std::string docid;
    std::string text;
    std::vector<std::string> sentences;

    /// Segments `text` with split_sentences().
    static Document from_text(std::string docid, std::string text);
    /// Builds a document whose text is the single-space join of `sentences`.
    static Document from_sentences(std::string docid, std::vector<std::string> sentences);

    std::size_t size() const noexcept { return sentences.size(); }
};

struct RankedEntry {
    std::string docid;
    double score = 0.0;
    int rank = 0;
};

/// One query's ranking. Entries are ordered by rank, 1..m without gaps.
class RankedList {
public:
    RankedList() = default;
    /// Validates the rank/score/docid invariants; throws ValidationError.
    RankedList(std::string qid, std::vector<RankedEntry> entries);

    const std::string& qid() const noexcept { return qid_; }
    const std::vector<RankedEntry>& entries() const noexcept { return entries_; }
    std::size_t depth() const noexcept { return entries_.size(); }

    /// Rank of `docid`, or nullopt when absent.
    std::optional<int> rank_of(std::string_view docid) const;
    const RankedEntry& at_rank(int rank) const;

private:
    std::string qid_;
    std::vector<RankedEntry> entries_;
};

enum class Difficulty { easy, hard, mixture };

std::string_view to_string(Difficulty d);
Difficulty parse_difficulty(std::string_view s);

struct TargetSpec {
    std::string qid;
    std::string docid;
    Difficulty difficulty = Difficulty::mixture;
    int original_rank = 0;

    friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

}  // namespace empra
