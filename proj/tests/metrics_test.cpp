// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "empra/errors.hpp"
#include "empra/metrics.hpp"
#include "oracles.hpp"

namespace empra {
namespace {

AttackOutcome O(std::string qid, int orig, int adv, std::string doc = "") {
    AttackOutcome o;
    o.qid = std::move(qid);
    o.docid = "d" + std::to_string(orig);
    o.set_ranks(orig, adv);
    o.adv_document = std::move(doc);
    return o;
}

OutcomeGroups groups(std::vector<AttackOutcome> v) { return group_by_query(v); }

TEST(Asr, Examples) {
    EXPECT_DOUBLE_EQ(asr(groups({O("q", 60, 3), O("q", 70, 3), O("q", 80, 3), O("q", 90, 3), O("q", 99, 99)})), 0.8);
    // Per-query fractions 1.0 and 0.5; a pooled mean would give 2/3.
    EXPECT_DOUBLE_EQ(asr(groups({O("a", 9, 1), O("b", 9, 1), O("b", 9, 10)})), 0.75);
    EXPECT_DOUBLE_EQ(asr(groups({O("q", 5, 5), O("q", 7, 7)})), 0.0);
    EXPECT_THROW(asr(OutcomeGroups{}), ContractError);
}

TEST(BoostedTopK, IndicatorCases) {
    EXPECT_DOUBLE_EQ(boosted_topk(groups({O("q", 51, 8)}), 10), 1.0);
    EXPECT_DOUBLE_EQ(boosted_topk(groups({O("q", 9, 5)}), 10), 0.0);
    EXPECT_DOUBLE_EQ(boosted_topk(groups({O("q", 996, 11)}), 10), 0.0);
    EXPECT_DOUBLE_EQ(boosted_topk(groups({O("q", 996, 11)}), 50), 1.0);
    EXPECT_DOUBLE_EQ(boosted_topk(groups({O("q", 11, 10)}), 10), 1.0);
    EXPECT_THROW(boosted_topk(groups({O("q", 1, 1)}), 0), ContractError);
}

TEST(BoostedTopK, NotMonotoneInK) {
    const auto g = groups({O("q", 15, 5)});
    EXPECT_DOUBLE_EQ(boosted_topk(g, 10), 1.0);
    EXPECT_DOUBLE_EQ(boosted_topk(g, 20), 0.0);
}

TEST(AvgBoost, Examples) {
    EXPECT_DOUBLE_EQ(avg_boost(groups({O("q", 91, 1)})), 90.0);
    EXPECT_DOUBLE_EQ(avg_boost(groups({O("a", 91, 1), O("b", 100, 50)})), 70.0);
    EXPECT_DOUBLE_EQ(avg_boost(groups({O("a", 5, 5)})), 0.0);
    EXPECT_DOUBLE_EQ(avg_boost(groups({O("a", 5, 8)})), -3.0);
}

TEST(ComputeMetrics, MatchesOracleOnRandomSets) {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<AttackOutcome> v;
        const auto queries = 1 + rng() % 6;
        for (std::size_t q = 0; q < queries; ++q) {
            const auto n = 1 + rng() % 7;
            for (std::size_t k = 0; k < n; ++k) {
                v.push_back(O("q" + std::to_string(q), 1 + static_cast<int>(rng() % 1000), 1 + static_cast<int>(rng() % 1000)));
            }
        }
        const auto r = compute_metrics(v, 20);
        const auto o = oracle::metrics(v);
        EXPECT_NEAR(r.asr, o.asr, 1e-12);
        EXPECT_NEAR(r.boosted_top10, o.top10, 1e-12);
        EXPECT_NEAR(r.boosted_top50, o.top50, 1e-12);
        EXPECT_NEAR(r.avg_boost, o.boost, 1e-9);
        EXPECT_EQ(r.num_queries, queries);
        for (double x : {r.asr, r.boosted_top10, r.boosted_top50}) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
        EXPECT_LE(std::abs(r.avg_boost), 999.0);
        // Not monotone in k: a target already inside a larger cutoff never
        // counts as boosted into it.
        ASSERT_TRUE(r.boosted_topk.has_value());
        EXPECT_EQ(r.boosted_topk->first, 20);
        EXPECT_GE(r.boosted_topk->second, 0.0);
        EXPECT_LE(r.boosted_topk->second, 1.0);
    }
}

TEST(ToJson, FieldNames) {
    const std::vector<AttackOutcome> v{O("q1", 91, 1, "Short text here."), O("q2", 9, 5, "Other.")};
    auto r = compute_metrics(v, 5);
    r.readability = readability_of(v, {"short", "text", "here"});
    const auto j = nlohmann::json::parse(to_json(r));
    EXPECT_DOUBLE_EQ(j.at("avg_boost").get<double>(), 47.0);
    EXPECT_DOUBLE_EQ(j.at("asr").get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j.at("boosted_top10").get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j.at("per_query").at("q1").at("boost").get<double>(), 90.0);
    EXPECT_EQ(j.at("counts").at("queries").get<int>(), 2);
    EXPECT_EQ(j.at("boosted_topk").at("k").get<int>(), 5);
    EXPECT_TRUE(j.at("readability").contains("pooled_mean"));
    EXPECT_TRUE(j.at("readability").contains("per_query_mean"));
}

TEST(DaleChall, Fixtures) {
    const std::unordered_set<std::string> familiar{"the", "cat", "sat", "on", "a", "mat", "and", "then", "it", "slept"};
    EXPECT_NEAR(dale_chall("The cat sat on a mat and then it slept.", familiar), 0.496, 1e-9);
    EXPECT_EQ(dale_chall("", familiar), 0.0);
    EXPECT_NEAR(dale_chall("The cat ate quinoa.", {"the", "cat"}), 11.7299, 1e-9);
    // Exactly 5% unfamiliar does not trigger the adjustment.
    std::string text;
    for (int i = 0; i < 19; ++i) text += "the ";
    text += "zyzzyva.";
    EXPECT_NEAR(dale_chall(text, {"the"}), 0.1579 * 5 + 0.0496 * 20, 1e-9);
}

TEST(Readability, PooledAndPerQuery) {
    const std::unordered_set<std::string> familiar{"a", "b"};
    const std::vector<AttackOutcome> v{O("q1", 2, 1, "a b."), O("q1", 3, 1, "a b a b."), O("q2", 4, 1, "a.")};
    const auto r = readability_of(v, familiar);
    const double s1 = 0.0496 * 2;
    const double s2 = 0.0496 * 4;
    const double s3 = 0.0496 * 1;
    EXPECT_NEAR(r.pooled_mean, (s1 + s2 + s3) / 3, 1e-12);
    EXPECT_NEAR(r.per_query_mean, ((s1 + s2) / 2 + s3) / 2, 1e-12);
    EXPECT_THROW(readability_of({}, familiar), ContractError);
}

}  // namespace
}  // namespace empra
