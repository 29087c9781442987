// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "empra/anchors.hpp"
#include "empra/constructor.hpp"
#include "empra/scorers.hpp"
#include "empra/types.hpp"

namespace empra {

using Corpus = std::map<std::string, Document>;
using QuerySet = std::map<std::string, Query>;
using RunSet = std::map<std::string, RankedList>;

struct AttackOutcome {
    std::string qid;
    std::string docid;
    int orig_rank = 0;
    int adv_rank = 0;
    int boost = 0;
    bool success = false;
    std::string adv_text;
    int position = -1;
    double c_coh = 0.0;
    double c_rel_norm = 0.0;
    double score_interp = 0.0;
    double core_sim = 1.0;
    bool below_core_threshold = false;
    std::string adv_document;

    /// Sets boost and success from the two ranks.
    void set_ranks(int orig, int adv);
};

struct TargetError {
    std::string qid;
    std::string docid;
    std::string message;
};

struct RunResult {
    std::vector<AttackOutcome> outcomes;  // sorted by (qid, docid)
    std::vector<TargetError> errors;
};

/// Stage 1. For every sentence and each of its anchors, transports the
/// sentence embedding toward the anchor and decodes the iterates back to
/// text. The decoder lexicon is the vocabulary of `d`, the anchors and
/// `extra_vocabulary`. Output keeps first occurrences in (sentence, anchor)
/// order.
std::vector<std::string> generate_adversarial_texts(const Document& d, const AnchorSet& anchors,
                                                    const AttackConfig& cfg, Embedder& embedder,
                                                    std::span<const std::string> extra_vocabulary = {});

/// Victim scores of every document in one query's ranked list.
class VictimScores {
public:
    VictimScores(const Query& q, const RankedList& ranked, const Corpus& corpus, RelevanceScorer& victim);

    const RankedList& ranked() const noexcept { return *ranked_; }
    double score_of(std::size_t list_index) const { return scores_.at(list_index); }

    /// Rank the document would get if its content scored `victim_score`,
    /// competing with every other listed document. Ties go to documents that
    /// were ranked above the target originally; the attack never gains from
    /// a tie.
    int rank_with_score(std::string_view target_docid, double victim_score) const;

private:
    const RankedList* ranked_;
    std::vector<double> scores_;
};

/// Scores a document's text with the victim and places it against the list.
int evaluate_rank(const Query& q, const Document& doc, const VictimScores& others, RelevanceScorer& victim);

/// Runs both attack stages for one target and re-ranks the result with the
/// victim. Passing `victim_scores` reuses the per-query scores of the other
/// documents; otherwise they are computed here.
AttackOutcome attack_document(const Query& q, const Document& d, const RankedList& ranked, const Corpus& corpus,
                              const AttackConfig& cfg, const ScorerRoles& roles,
                              const VictimScores* victim_scores = nullptr);

/// Prepends the query text as a new first sentence.
Document query_plus_baseline(const Query& q, const Document& d);

enum class SampleMode { easy5, hard5, mixture };

SampleMode parse_sample_mode(std::string_view s);

/// easy5: one uniform draw from each of ranks 51-60, ..., 91-100.
/// hard5: ranks 996..1000.
/// mixture: the union of both for this list.
std::vector<TargetSpec> sample_targets(const RankedList& ranked, SampleMode mode, std::mt19937_64& rng);
std::vector<TargetSpec> sample_targets(const RankedList& ranked, SampleMode mode, std::uint64_t rng_seed);

/// Mixture set across queries: draws alternate between easy and hard pools,
/// picking a random query and a random remaining target each time, until
/// `total` targets are drawn or the pools run dry.
std::vector<TargetSpec> sample_mixture(const RunSet& runs, std::uint64_t rng_seed, std::size_t total = 32);

/// Samples every query of `runs` (sorted by qid) with one seeded generator.
std::vector<TargetSpec> sample_run(const RunSet& runs, SampleMode mode, std::uint64_t rng_seed);

struct RunOptions {
    std::size_t workers = 1;
    /// One line per finished target, when set.
    std::ostream* log = nullptr;
};

/// Attacks every target. Failures are isolated per target and reported in
/// RunResult::errors. Victim scores are computed once per query.
RunResult attack_run(const QuerySet& queries, const Corpus& corpus, const RunSet& runs,
                     std::span<const TargetSpec> targets, const AttackConfig& cfg, const ScorerRoles& roles,
                     const RunOptions& options = {});

}  // namespace empra
