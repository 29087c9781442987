// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "empra/anchors.hpp"
#include "empra/scorers.hpp"
#include "empra/transporter.hpp"
#include "empra/types.hpp"

namespace empra {

struct DecoderSettings {
    std::size_t max_accepted_edits = 8;
    /// Unset: 2 * |source sentence tokens| + 8.
    std::optional<std::size_t> length_cap;
    /// Decode only the final transported state instead of every iterate.
    bool decode_final_only = false;
};

struct AttackConfig {
    double alpha = 0.5;
    TransportParams transport;
    DecoderSettings decoder;
    std::vector<AnchorKind> anchor_kinds = all_anchor_kinds();
    /// Core-content similarity threshold; winners below it are flagged, not rejected.
    double lambda_core = 0.0;
    bool include_original_as_candidate = false;

    void validate() const;
};

/// One insertion of adversarial text `adv_text_idx` at slot `position`.
/// The unmodified document (when it takes part) has no index and position -1.
struct Candidate {
    std::optional<std::size_t> adv_text_idx;
    int position = -1;
    Document doc;
    double c_coh = 0.0;
    double c_rel_raw = 0.0;
    double c_rel_norm = 0.0;
    double score_interp = 0.0;

    bool is_insertion() const noexcept { return adv_text_idx.has_value(); }
};

struct Selection {
    Document doc;
    Candidate winner;
    /// Every scored candidate, in enumeration order.
    std::vector<Candidate> pool;
    double core_sim = 1.0;
    bool below_core_threshold = false;
};

/// Places `t` as a new sentence after the first `p` sentences of `d`.
Document insert(const Document& d, const std::string& t, std::size_t p);

/// The one or two (first, second) pairs whose next-sentence scores define
/// the coherence of inserting `t` at slot `p`.
std::vector<TextPair> coherence_pairs(const Document& d, const std::string& t, std::size_t p);

/// f_nsp(t, d) at p = 0, f_nsp(d, t) at p = |d|, otherwise the mean of
/// f_nsp(d[..p], t + d[p..]) and f_nsp(d[..p] + t, d[p..]).
double coherence_score(const Document& d, const std::string& t, std::size_t p, CoherenceScorer& nsp);

/// Min-max scaling over the pool; all 0.5 when every value is equal.
std::vector<double> normalize_relevance(std::span<const double> raw);

double interp_score(double c_coh, double c_rel_norm, double alpha);

double core_similarity(const Document& d, const Document& d_adv, Embedder& embedder);

/// Scores every (text, position) insertion and returns the candidate with the
/// strictly greatest interpolated score, first in (i, p) order on ties.
/// With no adversarial texts the original document is returned unchanged.
Selection select_best(const Document& d, const Query& q, std::span<const std::string> t_adv,
                      const AttackConfig& cfg, const ScorerRoles& roles);

}  // namespace empra
