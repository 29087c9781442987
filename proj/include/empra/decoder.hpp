// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "empra/scorers.hpp"
#include "empra/vecmath.hpp"

namespace empra {

struct Hypothesis {
    std::vector<std::string> tokens;

    std::string text() const;
    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

/// Search space of the embedding-to-text decoder.
class DecoderParams {
public:
    static constexpr std::size_t kDefaultMaxEdits = 8;

    /// Throws ContractError for an empty lexicon or zero caps. Duplicate
    /// lexicon entries are dropped, keeping first occurrences.
    DecoderParams(std::vector<std::string> lexicon, std::size_t max_accepted_edits, std::size_t length_cap);

    /// length_cap = 2 * |seed tokens| + 8
    static DecoderParams for_seed(std::vector<std::string> lexicon, std::string_view seed_text,
                                  std::size_t max_accepted_edits = kDefaultMaxEdits);

    const std::vector<std::string>& lexicon() const noexcept { return lexicon_; }
    std::size_t max_accepted_edits() const noexcept { return max_accepted_edits_; }
    std::size_t length_cap() const noexcept { return length_cap_; }

private:
    std::vector<std::string> lexicon_;
    std::size_t max_accepted_edits_;
    std::size_t length_cap_;
};

/// Distinct tokenize_words() tokens of `texts`, in first-occurrence order.
std::vector<std::string> build_lexicon(std::span<const std::string> texts);

/// All single-token edits of `h`, in this order: substitutions (by position,
/// then lexicon order; replacing a token by itself is skipped), insertions at
/// positions 0..|h| (then lexicon order; none when |h| is at the length cap),
/// deletions by position (none when |h| == 1).
std::vector<Hypothesis> candidate_moves(const Hypothesis& h, const DecoderParams& params);

struct DecodeResult {
    std::string text;
    double initial_score = 0.0;
    double score = 0.0;
    /// Scores of the accepted hypotheses, in acceptance order.
    std::vector<double> accepted_scores;

    std::size_t edits() const noexcept { return accepted_scores.size(); }
};

/// Steepest-ascent refinement of `seed_text` toward `target`.
///
/// Each round embeds every candidate move in one batch and accepts the best
/// one if it strictly improves cosine similarity to `target` (earliest move
/// wins ties). Stops when nothing improves or the edit budget is spent.
/// Without any accepted edit the seed is returned verbatim.
DecodeResult decode_trace(const EmbeddingVector& target, const std::string& seed_text, Embedder& embedder,
                          const DecoderParams& params);

std::string decode(const EmbeddingVector& target, const std::string& seed_text, Embedder& embedder,
                   const DecoderParams& params);

}  // namespace empra
