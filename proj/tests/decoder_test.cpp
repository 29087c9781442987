// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "empra/decoder.hpp"
#include "empra/errors.hpp"
#include "empra/text.hpp"
#include "oracles.hpp"

namespace empra {
namespace {

using Tokens = std::vector<std::string>;

EmbeddingVector to_embedding(const std::vector<double>& v) { return EmbeddingVector(v); }

TEST(Params, Construction) {
    EXPECT_THROW(DecoderParams({}, 8, 4), ContractError);
    EXPECT_THROW(DecoderParams({""}, 8, 4), ContractError);
    EXPECT_THROW(DecoderParams({"a"}, 0, 4), ContractError);
    EXPECT_THROW(DecoderParams({"a"}, 8, 0), ContractError);
    const DecoderParams p({"a", "b", "a"}, 3, 5);
    EXPECT_EQ(p.lexicon(), (Tokens{"a", "b"}));
    const auto q = DecoderParams::for_seed({"a"}, "one two  three");
    EXPECT_EQ(q.length_cap(), 14u);
    EXPECT_EQ(q.max_accepted_edits(), 8u);
}

TEST(Lexicon, FirstOccurrenceOrder) {
    const Tokens texts{"Prenatal vitamins, daily.", "VITAMINS and iron"};
    EXPECT_EQ(build_lexicon(texts), (Tokens{"prenatal", "vitamins", "daily", "and", "iron"}));
}

TEST(Moves, SingleTokenTwoWordLexicon) {
    const DecoderParams p({"a", "b"}, 8, 10);
    const auto moves = candidate_moves(Hypothesis{{"a"}}, p);
    ASSERT_EQ(moves.size(), 5u);
    EXPECT_EQ(moves[0].tokens, (Tokens{"b"}));
    EXPECT_EQ(moves[1].tokens, (Tokens{"a", "a"}));
    EXPECT_EQ(moves[2].tokens, (Tokens{"b", "a"}));
    EXPECT_EQ(moves[3].tokens, (Tokens{"a", "a"}));
    EXPECT_EQ(moves[4].tokens, (Tokens{"a", "b"}));
}

TEST(Moves, CapAndDeletion) {
    const DecoderParams p({"a", "b"}, 8, 2);
    const auto moves = candidate_moves(Hypothesis{{"a", "b"}}, p);
    // 2 substitutions, no insertions at the cap, 2 deletions.
    ASSERT_EQ(moves.size(), 4u);
    for (const auto& m : moves) EXPECT_LE(m.tokens.size(), 2u);
    EXPECT_EQ(moves[2].tokens, (Tokens{"b"}));
    EXPECT_EQ(moves[3].tokens, (Tokens{"a"}));
}

TEST(Moves, CountFormula) {
    std::mt19937_64 rng(3);
    const Tokens lex{"x", "y", "z"};
    for (int i = 0; i < 50; ++i) {
        Hypothesis h;
        const auto n = 1 + rng() % 5;
        for (std::size_t k = 0; k < n; ++k) h.tokens.push_back(lex[rng() % 3]);
        const DecoderParams p(lex, 8, 4);
        const std::size_t subs = n * 2;
        const std::size_t ins = n < 4 ? (n + 1) * 3 : 0;
        const std::size_t dels = n > 1 ? n : 0;
        EXPECT_EQ(candidate_moves(h, p).size(), subs + ins + dels);
    }
}

TEST(Decode, AlreadyOptimalSeedUnchanged) {
    ReferenceEmbedder e(EmbedderSpec::reference(64, 2));
    const std::string seed = "Prenatal  vitamins help.";
    const auto target = e.embed_one(seed);
    const auto r = decode_trace(target, seed, e, DecoderParams::for_seed({"prenatal", "vitamins", "iron"}, seed));
    EXPECT_EQ(r.text, seed);
    EXPECT_EQ(r.edits(), 0u);
}

TEST(Decode, TinyUniverse) {
    ReferenceEmbedder e(EmbedderSpec::reference(8, 0));
    const auto target = e.embed_one("y");
    const DecoderParams p({"x", "y"}, 8, 10);
    EXPECT_EQ(decode(target, "x", e, p), "y");
    const auto best = oracle::exhaustive_best({"x", "y"}, oracle::embed("y", 8, 0), 8, 0, 3);
    EXPECT_NEAR(best.second, 1.0, 1e-12);
}

TEST(Decode, EmptySeedVerbatim) {
    ReferenceEmbedder e(EmbedderSpec::reference(8, 0));
    const DecoderParams p({"x"}, 8, 10);
    EXPECT_EQ(decode(e.embed_one("x"), "   ", e, p), "   ");
    EXPECT_EQ(decode(e.embed_one("x"), "", e, p), "");
}

TEST(Decode, MonotoneBudgetedDeterministicAndMatchesOracle) {
    std::mt19937_64 rng(77);
    const Tokens pool{"iron", "folic", "acid", "prenatal", "vitamins", "daily", "take", "doctor"};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 4 + rng() % 29;
        const std::uint64_t seed = rng();
        ReferenceEmbedder e(EmbedderSpec::reference(dim, seed));
        Tokens lex;
        for (std::size_t k = 0; k < 4; ++k) lex.push_back(pool[rng() % pool.size()]);
        std::vector<double> target(dim);
        std::normal_distribution<double> n(0.0, 1.0);
        for (auto& x : target) x = n(rng);
        const std::size_t budget = 1 + rng() % 6;
        const Tokens seed_tokens{pool[rng() % pool.size()], pool[rng() % pool.size()]};
        const DecoderParams p(lex, budget, 5);

        const auto r = decode_trace(to_embedding(target), join(seed_tokens), e, p);
        EXPECT_LE(r.edits(), budget);
        double prev = r.initial_score;
        for (double s : r.accepted_scores) {
            EXPECT_GT(s, prev);
            prev = s;
        }
        EXPECT_GE(r.score, r.initial_score);
        EXPECT_EQ(r.text, decode(to_embedding(target), join(seed_tokens), e, p));

        Tokens dedup;
        for (const auto& w : lex) {
            if (std::find(dedup.begin(), dedup.end(), w) == dedup.end()) dedup.push_back(w);
        }
        const auto trace = oracle::greedy_scores(seed_tokens, dedup, target, dim, seed, budget, 5);
        ASSERT_EQ(trace.size(), r.edits() + 1);
        EXPECT_NEAR(trace.front(), r.initial_score, 1e-12);
        for (std::size_t k = 0; k < r.edits(); ++k) EXPECT_NEAR(trace[k + 1], r.accepted_scores[k], 1e-12);
    }
}

}  // namespace
}  // namespace empra
