// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used as test oracles. Nothing here
// calls into the code paths it is used to check.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "empra/pipeline.hpp"

namespace empra::oracle {

using Vec = std::vector<double>;

double cosine(const Vec& u, const Vec& v);

/// Central finite differences of cosine(s, a) with respect to s.
Vec fd_cosine_gradient(const Vec& s, const Vec& a, double step = 1e-6);

/// ||x - y||_inf / ||y||_inf
double rel_error(const Vec& x, const Vec& y);

/// Scratch hashing-trick embedder (FNV-1a 64, sign bit 63, 1 + ln tf, L2 norm).
Vec embed(const std::string& text, std::size_t dim, std::uint64_t seed);

/// Steepest-ascent search over single-token edits, mirroring the decoder's
/// move order (substitute, insert, delete). Returns the accepted-score trace;
/// the first element is the seed score.
std::vector<double> greedy_scores(const std::vector<std::string>& seed_tokens, const std::vector<std::string>& lexicon,
                                  const Vec& target, std::size_t dim, std::uint64_t seed, std::size_t max_edits,
                                  std::size_t length_cap);

/// Best cosine to `target` over every token sequence of length 1..max_len.
std::pair<std::string, double> exhaustive_best(const std::vector<std::string>& lexicon, const Vec& target,
                                               std::size_t dim, std::uint64_t seed, std::size_t max_len);

struct PoolWinner {
    std::size_t text_index = 0;
    std::size_t position = 0;
    double score = 0.0;
    std::vector<std::string> sentences;
};

/// Re-enumerates all (text, position) insertions and scores them with the
/// reference coherence proxy and reference relevance under (dim, seed).
std::optional<PoolWinner> best_insertion(const std::vector<std::string>& sentences, const std::string& query,
                                         const std::vector<std::string>& t_adv, double alpha, std::size_t dim,
                                         std::uint64_t seed);

/// Every insertion candidate's text, in (i, p) order.
std::vector<std::string> all_insertions(const std::vector<std::string>& sentences, const std::vector<std::string>& t_adv);

/// 1 + #others scoring higher + #others tied and ranked above the target.
int rank_against(const std::vector<double>& list_scores, std::size_t target_index, double score);

struct Metrics {
    double asr = 0.0;
    double top10 = 0.0;
    double top50 = 0.0;
    double boost = 0.0;
};

Metrics metrics(const std::vector<AttackOutcome>& outcomes);

}  // namespace empra::oracle
