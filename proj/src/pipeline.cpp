// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <unordered_set>

#include "empra/decoder.hpp"
#include "empra/errors.hpp"
#include "empra/stage.hpp"
#include "empra/text.hpp"
#include "empra/transporter.hpp"

namespace empra {

void AttackOutcome::set_ranks(int orig, int adv) {
    orig_rank = orig;
    adv_rank = adv;
    boost = orig - adv;
    success = boost > 0;
}

// ---------------------------------------------------------------------------
// Stage 1

namespace {

std::string decode_pair(const Trajectory& traj, const std::string& sentence, const DecoderParams& params,
                        const DecoderSettings& settings, Embedder& embedder) {
    if (traj.states.size() < 2) return sentence;
    if (settings.decode_final_only) return decode(traj.final_state(), sentence, embedder, params);
    // Warm start: each iterate is decoded from the previous hypothesis.
    // Consecutive iterates mostly revisit the same hypotheses, so their move
    // embeddings are cached for the length of the trajectory.
    CachingEmbedder cached(std::shared_ptr<Embedder>(std::shared_ptr<Embedder>{}, &embedder));
    std::string hyp = sentence;
    for (std::size_t t = 1; t < traj.states.size(); ++t) hyp = decode(traj.states[t], hyp, cached, params);
    return hyp;
}

}  // namespace

std::vector<std::string> generate_adversarial_texts(const Document& d, const AnchorSet& anchors,
                                                    const AttackConfig& cfg, Embedder& embedder,
                                                    std::span<const std::string> extra_vocabulary) {
    cfg.validate();
    StageScope stage(AttackStage::generation);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!anchors.per_sentence.contains(i) || anchors.per_sentence.at(i).empty()) {
            throw ContractError("anchor set does not cover sentence " + std::to_string(i));
        }
    }

    std::vector<std::string> vocab_sources(d.sentences.begin(), d.sentences.end());
    for (const auto& [idx, list] : anchors.per_sentence) {
        for (const auto& a : list) vocab_sources.push_back(a.text);
    }
    vocab_sources.insert(vocab_sources.end(), extra_vocabulary.begin(), extra_vocabulary.end());
    const auto lexicon = build_lexicon(vocab_sources);
    const bool decoding = !lexicon.empty() && cfg.decoder.max_accepted_edits > 0 && cfg.transport.iters > 0;

    // Every sentence and anchor text is embedded once, in one batch.
    std::vector<std::string> texts(d.sentences.begin(), d.sentences.end());
    for (const auto& [idx, list] : anchors.per_sentence) {
        for (const auto& a : list) texts.push_back(a.text);
    }
    const auto vecs = embedder.embed(texts);
    if (vecs.size() != texts.size()) throw ContractError("embedder returned wrong number of vectors");
    std::map<std::string, const EmbeddingVector*> by_text;
    for (std::size_t k = 0; k < texts.size(); ++k) by_text.emplace(texts[k], &vecs[k]);

    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& sentence = d.sentences[i];
        const auto& s0 = *by_text.at(sentence);
        std::optional<DecoderParams> params;
        if (decoding) {
            const std::size_t cap = cfg.decoder.length_cap.value_or(2 * split_whitespace(sentence).size() + 8);
            params.emplace(lexicon, cfg.decoder.max_accepted_edits, cap);
        }
        for (const auto& anchor : anchors.per_sentence.at(i)) {
            std::string text = sentence;
            if (params) {
                try {
                    const auto traj = transport(s0, *by_text.at(anchor.text), cfg.transport);
                    text = decode_pair(traj, sentence, *params, cfg.decoder, embedder);
                } catch (const RemoteError& e) {
                    throw RemoteError(e.endpoint(), std::string(e.what()) + " [sentence " + std::to_string(i) +
                                                        ", anchor " + std::string(to_string(anchor.kind)) + "]");
                }
            }
            if (seen.insert(text).second) out.push_back(std::move(text));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank evaluation

VictimScores::VictimScores(const Query& q, const RankedList& ranked, const Corpus& corpus, RelevanceScorer& victim)
    : ranked_(&ranked) {
    StageScope stage(AttackStage::evaluation);
    std::vector<std::string> docs;
    docs.reserve(ranked.depth());
    for (const auto& e : ranked.entries()) {
        auto it = corpus.find(e.docid);
        if (it == corpus.end()) {
            throw ContractError("ranked document " + e.docid + " for query " + q.qid + " is not in the corpus");
        }
        docs.push_back(it->second.text);
    }
    scores_ = victim.score(q.text, docs);
    if (scores_.size() != docs.size()) throw ContractError("victim returned wrong number of scores");
}

int VictimScores::rank_with_score(std::string_view target_docid, double victim_score) const {
    const auto target_rank = ranked_->rank_of(target_docid);
    if (!target_rank) throw ContractError("document " + std::string(target_docid) + " is not in the ranked list");
    int rank = 1;
    const auto& entries = ranked_->entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].docid == target_docid) continue;
        const double other = scores_[k];
        if (other > victim_score || (other == victim_score && entries[k].rank < *target_rank)) ++rank;
    }
    return rank;
}

int evaluate_rank(const Query& q, const Document& doc, const VictimScores& others, RelevanceScorer& victim) {
    StageScope stage(AttackStage::evaluation);
    const std::vector<std::string> texts{doc.text};
    const auto scores = victim.score(q.text, texts);
    if (scores.size() != 1) throw ContractError("victim returned wrong number of scores");
    return others.rank_with_score(doc.docid, scores[0]);
}

// ---------------------------------------------------------------------------
// Attack

AttackOutcome attack_document(const Query& q, const Document& d, const RankedList& ranked, const Corpus& corpus,
                              const AttackConfig& cfg, const ScorerRoles& roles, const VictimScores* victim_scores) {
    cfg.validate();
    const auto orig_rank = ranked.rank_of(d.docid);
    if (!orig_rank) throw ContractError("document " + d.docid + " is not ranked for query " + q.qid);

    const Document* top_doc = nullptr;
    if (auto top_id = top_document_id(ranked, d.docid)) {
        auto it = corpus.find(*top_id);
        if (it == corpus.end()) throw ContractError("top-ranked document " + *top_id + " is not in the corpus");
        top_doc = &it->second;
    }
    const bool needs_top = std::any_of(cfg.anchor_kinds.begin(), cfg.anchor_kinds.end(),
                                       [](AnchorKind k) { return k != AnchorKind::query; });
    if (needs_top && top_doc == nullptr) {
        throw ContractError("query " + q.qid + " has no other ranked document to anchor to");
    }

    std::vector<std::string> t_adv;
    {
        StageScope stage(AttackStage::generation);
        const auto anchors = build_anchor_set(d, q, top_doc, cfg.anchor_kinds, *roles.embedder);
        std::vector<std::string> extra;
        if (top_doc) extra.push_back(top_doc->text);
        t_adv = generate_adversarial_texts(d, anchors, cfg, *roles.embedder, extra);
    }
    const auto sel = select_best(d, q, t_adv, cfg, roles);

    std::optional<VictimScores> own;
    if (victim_scores == nullptr) {
        own.emplace(q, ranked, corpus, *roles.victim);
        victim_scores = &*own;
    }

    AttackOutcome out;
    out.qid = q.qid;
    out.docid = d.docid;
    const int adv_rank = sel.winner.is_insertion() ? evaluate_rank(q, sel.doc, *victim_scores, *roles.victim)
                                                   : *orig_rank;
    out.set_ranks(*orig_rank, adv_rank);
    if (sel.winner.is_insertion()) out.adv_text = t_adv[*sel.winner.adv_text_idx];
    out.position = sel.winner.position;
    out.c_coh = sel.winner.c_coh;
    out.c_rel_norm = sel.winner.c_rel_norm;
    out.score_interp = sel.winner.score_interp;
    out.core_sim = sel.core_sim;
    out.below_core_threshold = sel.below_core_threshold;
    out.adv_document = sel.doc.text;
    return out;
}

Document query_plus_baseline(const Query& q, const Document& d) { return insert(d, q.text, 0); }

// ---------------------------------------------------------------------------
// Target sampling

SampleMode parse_sample_mode(std::string_view s) {
    if (s == "easy5") return SampleMode::easy5;
    if (s == "hard5") return SampleMode::hard5;
    if (s == "mixture") return SampleMode::mixture;
    throw ContractError("unknown sample mode '" + std::string(s) + "'");
}

namespace {

void require_depth(const RankedList& ranked, std::size_t depth, const char* mode) {
    if (ranked.depth() < depth) {
        throw ContractError(std::string(mode) + " sampling needs a ranked list of depth >= " + std::to_string(depth) +
                            "; query " + ranked.qid() + " has " + std::to_string(ranked.depth()));
    }
}

TargetSpec spec_at(const RankedList& ranked, int rank, Difficulty difficulty) {
    const auto& e = ranked.at_rank(rank);
    return {ranked.qid(), e.docid, difficulty, rank};
}

std::vector<TargetSpec> easy5(const RankedList& ranked, std::mt19937_64& rng) {
    require_depth(ranked, 100, "easy5");
    std::vector<TargetSpec> out;
    for (int lo = 51; lo <= 91; lo += 10) {
        const int rank = lo + static_cast<int>(rng() % 10);
        out.push_back(spec_at(ranked, rank, Difficulty::easy));
    }
    return out;
}

std::vector<TargetSpec> hard5(const RankedList& ranked) {
    require_depth(ranked, 1000, "hard5");
    std::vector<TargetSpec> out;
    for (int rank = 996; rank <= 1000; ++rank) out.push_back(spec_at(ranked, rank, Difficulty::hard));
    return out;
}

}  // namespace

std::vector<TargetSpec> sample_targets(const RankedList& ranked, SampleMode mode, std::mt19937_64& rng) {
    switch (mode) {
        case SampleMode::easy5: return easy5(ranked, rng);
        case SampleMode::hard5: return hard5(ranked);
        case SampleMode::mixture: {
            require_depth(ranked, 1000, "mixture");
            auto out = easy5(ranked, rng);
            auto hard = hard5(ranked);
            out.insert(out.end(), hard.begin(), hard.end());
            return out;
        }
    }
    return {};
}

std::vector<TargetSpec> sample_targets(const RankedList& ranked, SampleMode mode, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return sample_targets(ranked, mode, rng);
}

std::vector<TargetSpec> sample_mixture(const RunSet& runs, std::uint64_t rng_seed, std::size_t total) {
    std::mt19937_64 rng(rng_seed);
    struct Pools {
        std::vector<TargetSpec> easy;
        std::vector<TargetSpec> hard;
    };
    std::vector<Pools> pools;
    for (const auto& [qid, ranked] : runs) {
        require_depth(ranked, 1000, "mixture");
        pools.push_back({easy5(ranked, rng), hard5(ranked)});
    }

    std::vector<TargetSpec> out;
    for (std::size_t draw = 0; out.size() < total; ++draw) {
        bool want_easy = draw % 2 == 0;
        auto holders = [&](bool easy) {
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < pools.size(); ++k) {
                if (!(easy ? pools[k].easy : pools[k].hard).empty()) idx.push_back(k);
            }
            return idx;
        };
        auto candidates = holders(want_easy);
        if (candidates.empty()) {
            want_easy = !want_easy;
            candidates = holders(want_easy);
        }
        if (candidates.empty()) break;
        auto& pool = want_easy ? pools[candidates[rng() % candidates.size()]].easy
                               : pools[candidates[rng() % candidates.size()]].hard;
        const std::size_t pick = rng() % pool.size();
        TargetSpec t = pool[pick];
        t.difficulty = Difficulty::mixture;
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const TargetSpec& a, const TargetSpec& b) {
        return std::tie(a.qid, a.original_rank) < std::tie(b.qid, b.original_rank);
    });
    return out;
}

std::vector<TargetSpec> sample_run(const RunSet& runs, SampleMode mode, std::uint64_t rng_seed) {
    if (mode == SampleMode::mixture) return sample_mixture(runs, rng_seed);
    std::mt19937_64 rng(rng_seed);
    std::vector<TargetSpec> out;
    for (const auto& [qid, ranked] : runs) {
        auto part = sample_targets(ranked, mode, rng);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Batch driver

namespace {

class VictimCache {
public:
    VictimCache(const Corpus& corpus, RelevanceScorer& victim) : corpus_(corpus), victim_(victim) {}

    const VictimScores& get(const Query& q, const RankedList& ranked) {
        Slot* slot = nullptr;
        {
            std::lock_guard lock(mu_);
            auto& p = slots_[q.qid];
            if (!p) p = std::make_unique<Slot>();
            slot = p.get();
        }
        std::lock_guard lock(slot->mu);
        if (!slot->scores) slot->scores.emplace(q, ranked, corpus_, victim_);
        return *slot->scores;
    }

private:
    struct Slot {
        std::mutex mu;
        std::optional<VictimScores> scores;
    };
    const Corpus& corpus_;
    RelevanceScorer& victim_;
    std::mutex mu_;
    std::map<std::string, std::unique_ptr<Slot>> slots_;
};

}  // namespace

RunResult attack_run(const QuerySet& queries, const Corpus& corpus, const RunSet& runs,
                     std::span<const TargetSpec> targets, const AttackConfig& cfg, const ScorerRoles& roles,
                     const RunOptions& options) {
    cfg.validate();
    VictimCache cache(corpus, *roles.victim);
    std::vector<std::optional<AttackOutcome>> outcomes(targets.size());
    std::vector<std::optional<TargetError>> errors(targets.size());
    std::mutex log_mu;

    auto run_one = [&](std::size_t k) {
        const auto& t = targets[k];
        try {
            auto q = queries.find(t.qid);
            if (q == queries.end()) throw ContractError("unknown query " + t.qid);
            auto d = corpus.find(t.docid);
            if (d == corpus.end()) throw ContractError("unknown document " + t.docid);
            auto r = runs.find(t.qid);
            if (r == runs.end()) throw ContractError("no ranked list for query " + t.qid);
            if (!r->second.rank_of(t.docid)) throw ContractError("document " + t.docid + " is not ranked for query " + t.qid);
            const auto& scores = cache.get(q->second, r->second);
            outcomes[k] = attack_document(q->second, d->second, r->second, corpus, cfg, roles, &scores);
            if (options.log) {
                const auto& o = *outcomes[k];
                std::lock_guard lock(log_mu);
                *options.log << "target " << o.qid << " " << o.docid << ": rank " << o.orig_rank << " -> "
                             << o.adv_rank << (o.below_core_threshold ? " (below core similarity threshold)" : "")
                             << "\n";
            }
        } catch (const std::exception& e) {
            errors[k] = TargetError{t.qid, t.docid, e.what()};
            if (options.log) {
                std::lock_guard lock(log_mu);
                *options.log << "target " << t.qid << " " << t.docid << ": error: " << e.what() << "\n";
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, targets.size()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < targets.size(); ++k) run_one(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < targets.size(); k = next++) run_one(k);
            });
        }
    }

    RunResult result;
    for (auto& o : outcomes) {
        if (o) result.outcomes.push_back(std::move(*o));
    }
    for (auto& e : errors) {
        if (e) result.errors.push_back(std::move(*e));
    }
    auto by_key = [](const auto& a, const auto& b) { return std::tie(a.qid, a.docid) < std::tie(b.qid, b.docid); };
    std::stable_sort(result.outcomes.begin(), result.outcomes.end(), by_key);
    std::stable_sort(result.errors.begin(), result.errors.end(), by_key);
    return result;
}

}  // namespace empra
