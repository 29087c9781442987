// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "empra/errors.hpp"
#include "empra/stage.hpp"
#include "empra/text.hpp"

namespace empra {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

std::string sentence_range(const Document& d, std::size_t begin, std::size_t end) {
    return join(std::span<const std::string>(d.sentences).subspan(begin, end - begin));
}

template <typename Fn>
auto with_context(const std::string& context, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const RemoteError& e) {
        throw RemoteError(e.endpoint(), std::string(e.what()) + " [" + context + "]");
    }
}

}  // namespace

void AttackConfig::validate() const {
    if (!in_unit(alpha)) throw ContractError("alpha must lie in [0, 1]");
    if (!in_unit(lambda_core)) throw ContractError("lambda_core must lie in [0, 1]");
    if (anchor_kinds.empty()) throw ContractError("at least one anchor kind is required");
    if (decoder.length_cap && *decoder.length_cap == 0) throw ContractError("length_cap must be positive");
    transport.validate();
}

Document insert(const Document& d, const std::string& t, std::size_t p) {
    if (p > d.size()) {
        throw ContractError("insert position " + std::to_string(p) + " outside [0, " + std::to_string(d.size()) + "]");
    }
    std::vector<std::string> sentences;
    sentences.reserve(d.size() + 1);
    sentences.insert(sentences.end(), d.sentences.begin(), d.sentences.begin() + static_cast<std::ptrdiff_t>(p));
    sentences.push_back(t);
    sentences.insert(sentences.end(), d.sentences.begin() + static_cast<std::ptrdiff_t>(p), d.sentences.end());
    return Document::from_sentences(d.docid, std::move(sentences));
}

std::vector<TextPair> coherence_pairs(const Document& d, const std::string& t, std::size_t p) {
    const std::size_t n = d.size();
    if (p > n) throw ContractError("coherence position " + std::to_string(p) + " out of range");
    if (p == 0) return {{t, d.text}};
    if (p == n) return {{d.text, t}};
    const auto head = sentence_range(d, 0, p);
    const auto tail = sentence_range(d, p, n);
    return {{head, t + " " + tail}, {head + " " + t, tail}};
}

double coherence_score(const Document& d, const std::string& t, std::size_t p, CoherenceScorer& nsp) {
    const auto pairs = coherence_pairs(d, t, p);
    const auto probs = nsp.next_sentence(pairs);
    if (probs.size() != pairs.size()) throw ContractError("coherence scorer returned wrong number of values");
    return pairs.size() == 1 ? probs[0] : (probs[0] + probs[1]) / 2.0;
}

std::vector<double> normalize_relevance(std::span<const double> raw) {
    if (raw.empty()) throw ContractError("normalize_relevance: empty pool");
    for (double x : raw) {
        if (!std::isfinite(x)) throw ContractError("normalize_relevance: non-finite score");
    }
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(raw.size(), 0.5);
    if (hi == lo) return out;
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = std::clamp((raw[i] - lo) / (hi - lo), 0.0, 1.0);
    return out;
}

double interp_score(double c_coh, double c_rel_norm, double alpha) {
    if (!in_unit(c_coh) || !in_unit(c_rel_norm) || !in_unit(alpha)) {
        throw ContractError("interp_score: inputs must lie in [0, 1]");
    }
    return alpha * c_coh + (1.0 - alpha) * c_rel_norm;
}

double core_similarity(const Document& d, const Document& d_adv, Embedder& embedder) {
    const std::vector<std::string> texts{d.text, d_adv.text};
    const auto v = embedder.embed(texts);
    return cosine(v.at(0), v.at(1));
}

Selection select_best(const Document& d, const Query& q, std::span<const std::string> t_adv,
                      const AttackConfig& cfg, const ScorerRoles& roles) {
    cfg.validate();
    StageScope stage(AttackStage::construction);
    Selection sel;
    sel.doc = d;
    sel.winner.doc = d;
    if (t_adv.empty()) return sel;

    // Enumerate (i, p) candidates and the NSP pairs each one needs.
    std::vector<Candidate> pool;
    std::vector<TextPair> pairs;
    std::vector<std::size_t> pair_count;
    if (cfg.include_original_as_candidate) {
        Candidate orig;
        orig.doc = d;
        pool.push_back(std::move(orig));
        // Coherence of the untouched document: mean over its adjacent sentence pairs.
        std::size_t k = 0;
        for (std::size_t j = 0; j + 1 < d.size(); ++j, ++k) pairs.emplace_back(d.sentences[j], d.sentences[j + 1]);
        pair_count.push_back(k);
    }
    for (std::size_t i = 0; i < t_adv.size(); ++i) {
        for (std::size_t p = 0; p <= d.size(); ++p) {
            Candidate c;
            c.adv_text_idx = i;
            c.position = static_cast<int>(p);
            c.doc = insert(d, t_adv[i], p);
            auto cp = coherence_pairs(d, t_adv[i], p);
            pair_count.push_back(cp.size());
            pairs.insert(pairs.end(), cp.begin(), cp.end());
            pool.push_back(std::move(c));
        }
    }

    const std::string context = "query " + q.qid + ", document " + d.docid + ", " + std::to_string(pool.size()) +
                                " candidates";
    const auto probs = with_context(context, [&] { return roles.coherence->next_sentence(pairs); });
    if (probs.size() != pairs.size()) throw ContractError("coherence scorer returned wrong number of values");

    std::vector<std::string> docs;
    docs.reserve(pool.size());
    for (const auto& c : pool) docs.push_back(c.doc.text);
    const auto raw = with_context(context, [&] { return roles.relevance->score(q.text, docs); });
    if (raw.size() != pool.size()) throw ContractError("relevance scorer returned wrong number of values");
    const auto norm = normalize_relevance(raw);

    std::size_t offset = 0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        auto& c = pool[k];
        const std::size_t n = pair_count[k];
        if (n == 0) {
            c.c_coh = 1.0;
        } else {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) sum += probs[offset + j];
            c.c_coh = sum / static_cast<double>(n);
        }
        offset += n;
        c.c_rel_raw = raw[k];
        c.c_rel_norm = norm[k];
        c.score_interp = interp_score(c.c_coh, c.c_rel_norm, cfg.alpha);
    }

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (pool[k].score_interp > best_score) {
            best_score = pool[k].score_interp;
            best = k;
        }
    }
    sel.winner = pool[best];
    sel.doc = sel.winner.doc;
    sel.pool = std::move(pool);
    sel.core_sim = with_context(context, [&] { return core_similarity(d, sel.doc, *roles.embedder); });
    sel.below_core_threshold = cfg.lambda_core > 0.0 && sel.core_sim < cfg.lambda_core;
    return sel;
}

}  // namespace empra
