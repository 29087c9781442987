// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/metrics.hpp"

#include <json.hpp>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

namespace {

// Mean over queries of a per-query statistic.
template <typename PerQuery>
double query_mean(const OutcomeGroups& groups, PerQuery&& stat) {
    if (groups.empty()) throw ContractError("metrics need at least one query");
    double sum = 0.0;
    for (const auto& [qid, changes] : groups) {
        if (changes.empty()) throw ContractError("query " + qid + " has no targets");
        sum += stat(changes);
    }
    return sum / static_cast<double>(groups.size());
}

template <typename Pred>
double fraction(const std::vector<RankChange>& changes, Pred&& pred) {
    std::size_t hits = 0;
    for (const auto& c : changes) hits += pred(c) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(changes.size());
}

double improved_fraction(const std::vector<RankChange>& c) {
    return fraction(c, [](const RankChange& r) { return r.adv_rank < r.orig_rank; });
}

double topk_fraction(const std::vector<RankChange>& c, int k) {
    return fraction(c, [k](const RankChange& r) { return r.orig_rank > k && r.adv_rank <= k; });
}

double mean_boost(const std::vector<RankChange>& c) {
    double sum = 0.0;
    for (const auto& r : c) sum += r.orig_rank - r.adv_rank;
    return sum / static_cast<double>(c.size());
}

}  // namespace

OutcomeGroups group_by_query(std::span<const AttackOutcome> outcomes) {
    OutcomeGroups groups;
    for (const auto& o : outcomes) groups[o.qid].push_back({o.orig_rank, o.adv_rank});
    return groups;
}

double asr(const OutcomeGroups& groups) { return query_mean(groups, improved_fraction); }

double boosted_topk(const OutcomeGroups& groups, int k) {
    if (k < 1) throw ContractError("k must be positive");
    return query_mean(groups, [k](const auto& c) { return topk_fraction(c, k); });
}

double avg_boost(const OutcomeGroups& groups) { return query_mean(groups, mean_boost); }

MetricsReport compute_metrics(std::span<const AttackOutcome> outcomes, std::optional<int> extra_k) {
    const auto groups = group_by_query(outcomes);
    MetricsReport r;
    r.asr = asr(groups);
    r.boosted_top10 = boosted_topk(groups, 10);
    r.boosted_top50 = boosted_topk(groups, 50);
    r.avg_boost = avg_boost(groups);
    r.num_queries = groups.size();
    for (const auto& [qid, changes] : groups) {
        r.per_query[qid] = QueryMetrics{improved_fraction(changes), topk_fraction(changes, 10),
                                        topk_fraction(changes, 50), mean_boost(changes), changes.size()};
    }
    if (extra_k) r.boosted_topk = std::make_pair(*extra_k, boosted_topk(groups, *extra_k));
    return r;
}

double dale_chall(std::string_view text, const std::unordered_set<std::string>& familiar_words) {
    const auto words = tokenize_words(text);
    if (words.empty()) return 0.0;
    std::size_t unfamiliar = 0;
    for (const auto& w : words) unfamiliar += familiar_words.contains(w) ? 0 : 1;
    const auto sentences = std::max<std::size_t>(1, split_sentences(text).size());
    const double pct = 100.0 * static_cast<double>(unfamiliar) / static_cast<double>(words.size());
    const double avg_len = static_cast<double>(words.size()) / static_cast<double>(sentences);
    double score = 0.1579 * pct + 0.0496 * avg_len;
    if (pct > 5.0) score += 3.6365;
    return score;
}

Readability readability_of(std::span<const AttackOutcome> outcomes,
                           const std::unordered_set<std::string>& familiar_words) {
    if (outcomes.empty()) throw ContractError("readability needs at least one document");
    std::map<std::string, std::pair<double, std::size_t>> per_query;
    double pooled = 0.0;
    for (const auto& o : outcomes) {
        const double s = dale_chall(o.adv_document, familiar_words);
        pooled += s;
        auto& [sum, n] = per_query[o.qid];
        sum += s;
        ++n;
    }
    double query_sum = 0.0;
    for (const auto& [qid, acc] : per_query) query_sum += acc.first / static_cast<double>(acc.second);
    return {pooled / static_cast<double>(outcomes.size()), query_sum / static_cast<double>(per_query.size())};
}

std::string to_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["asr"] = report.asr;
    j["boosted_top10"] = report.boosted_top10;
    j["boosted_top50"] = report.boosted_top50;
    j["avg_boost"] = report.avg_boost;
    auto& per_query = j["per_query"] = nlohmann::ordered_json::object();
    nlohmann::ordered_json targets = nlohmann::ordered_json::object();
    for (const auto& [qid, m] : report.per_query) {
        per_query[qid] = {{"asr", m.asr}, {"boosted_top10", m.boosted_top10}, {"boosted_top50", m.boosted_top50},
                          {"boost", m.boost}};
        targets[qid] = m.targets;
    }
    j["counts"] = {{"queries", report.num_queries}, {"targets_per_query", std::move(targets)}};
    if (report.boosted_topk) {
        j["boosted_topk"] = {{"k", report.boosted_topk->first}, {"value", report.boosted_topk->second}};
    }
    if (report.readability) {
        j["readability"] = {{"pooled_mean", report.readability->pooled_mean},
                            {"per_query_mean", report.readability->per_query_mean}};
    }
    return j.dump();
}

}  // namespace empra
