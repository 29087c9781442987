// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "empra/pipeline.hpp"

namespace empra {

struct RankChange {
    int orig_rank = 0;
    int adv_rank = 0;
};

/// Outcomes grouped by query id.
using OutcomeGroups = std::map<std::string, std::vector<RankChange>>;

OutcomeGroups group_by_query(std::span<const AttackOutcome> outcomes);

/// Attack success rate: per query, the fraction of targets whose rank
/// improved; averaged over queries with equal weight.
double asr(const OutcomeGroups& groups);

/// Per query, the fraction of targets that started below rank k and ended
/// at rank <= k; averaged over queries.
double boosted_topk(const OutcomeGroups& groups, int k);

/// Per query, the mean of orig_rank - adv_rank; averaged over queries.
double avg_boost(const OutcomeGroups& groups);

struct QueryMetrics {
    double asr = 0.0;
    double boosted_top10 = 0.0;
    double boosted_top50 = 0.0;
    double boost = 0.0;
    std::size_t targets = 0;
};

struct Readability {
    double pooled_mean = 0.0;
    double per_query_mean = 0.0;
};

struct MetricsReport {
    double asr = 0.0;
    double boosted_top10 = 0.0;
    double boosted_top50 = 0.0;
    double avg_boost = 0.0;
    std::map<std::string, QueryMetrics> per_query;
    std::size_t num_queries = 0;
    /// Optional extra cutoff requested by the caller.
    std::optional<std::pair<int, double>> boosted_topk;
    std::optional<Readability> readability;
};

MetricsReport compute_metrics(std::span<const AttackOutcome> outcomes, std::optional<int> extra_k = std::nullopt);

/// Dale-Chall readability of `text`:
///   0.1579 * (% words not in familiar_words) + 0.0496 * (words per sentence),
/// plus 3.6365 when more than 5% of the words are unfamiliar. Words are
/// tokenize_words() tokens; sentences come from split_sentences(). 0 for
/// text without words.
double dale_chall(std::string_view text, const std::unordered_set<std::string>& familiar_words);

/// Dale-Chall over the adversarial documents: the mean over all documents
/// and the mean of per-query means.
Readability readability_of(std::span<const AttackOutcome> outcomes,
                           const std::unordered_set<std::string>& familiar_words);

/// Serialises the report as a single JSON object.
std::string to_json(const MetricsReport& report);

}  // namespace empra
