// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/decoder.hpp"

#include <algorithm>
#include <unordered_set>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

std::string Hypothesis::text() const { return join(tokens); }

DecoderParams::DecoderParams(std::vector<std::string> lexicon, std::size_t max_accepted_edits,
                             std::size_t length_cap)
    : max_accepted_edits_(max_accepted_edits), length_cap_(length_cap) {
    std::unordered_set<std::string> seen;
    for (auto& w : lexicon) {
        if (w.empty()) continue;
        if (seen.insert(w).second) lexicon_.push_back(std::move(w));
    }
    if (lexicon_.empty()) throw ContractError("decoder lexicon must not be empty");
    if (max_accepted_edits_ == 0) throw ContractError("max_accepted_edits must be positive");
    if (length_cap_ == 0) throw ContractError("length_cap must be positive");
}

DecoderParams DecoderParams::for_seed(std::vector<std::string> lexicon, std::string_view seed_text,
                                      std::size_t max_accepted_edits) {
    const std::size_t n = split_whitespace(seed_text).size();
    return DecoderParams(std::move(lexicon), max_accepted_edits, 2 * n + 8);
}

std::vector<std::string> build_lexicon(std::span<const std::string> texts) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& t : texts) {
        for (auto& w : tokenize_words(t)) {
            if (seen.insert(w).second) out.push_back(std::move(w));
        }
    }
    return out;
}

namespace {

struct Move {
    enum Kind { substitute, insert, erase } kind;
    std::size_t pos;
    const std::string* word;  // null for deletions
};

// Same order as candidate_moves: substitutions, insertions, deletions, each
// by position and then lexicon order.
std::vector<Move> enumerate_moves(const Hypothesis& h, const DecoderParams& params) {
    const auto& lex = params.lexicon();
    const std::size_t n = h.tokens.size();
    std::vector<Move> out;
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (const auto& w : lex) {
            if (h.tokens[pos] != w) out.push_back({Move::substitute, pos, &w});
        }
    }
    if (n < params.length_cap()) {
        for (std::size_t pos = 0; pos <= n; ++pos) {
            for (const auto& w : lex) out.push_back({Move::insert, pos, &w});
        }
    }
    if (n > 1) {
        for (std::size_t pos = 0; pos < n; ++pos) out.push_back({Move::erase, pos, nullptr});
    }
    return out;
}

Hypothesis apply(const Hypothesis& h, const Move& m) {
    Hypothesis next = h;
    const auto at = next.tokens.begin() + static_cast<std::ptrdiff_t>(m.pos);
    switch (m.kind) {
        case Move::substitute: next.tokens[m.pos] = *m.word; break;
        case Move::insert: next.tokens.insert(at, *m.word); break;
        case Move::erase: next.tokens.erase(at); break;
    }
    return next;
}

// Text of apply(h, m) without materialising the token vector.
std::string move_text(const Hypothesis& h, const Move& m, std::size_t reserve) {
    std::string out;
    out.reserve(reserve);
    auto put = [&out](const std::string& tok) {
        if (!out.empty()) out.push_back(' ');
        out += tok;
    };
    for (std::size_t i = 0; i <= h.tokens.size(); ++i) {
        if (i == m.pos) {
            if (m.kind == Move::insert) put(*m.word);
            if (m.kind == Move::substitute) {
                put(*m.word);
                continue;
            }
            if (m.kind == Move::erase) continue;
        }
        if (i < h.tokens.size()) put(h.tokens[i]);
    }
    return out;
}

// cosine(u, v) with ||v|| supplied by the caller; same arithmetic.
double cosine_with(const EmbeddingVector& u, const EmbeddingVector& v, double nv) {
    if (u.dim() != v.dim()) return cosine(u, v);  // throws
    const double nu = u.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

}  // namespace

std::vector<Hypothesis> candidate_moves(const Hypothesis& h, const DecoderParams& params) {
    std::vector<Hypothesis> out;
    for (const auto& m : enumerate_moves(h, params)) out.push_back(apply(h, m));
    return out;
}

DecodeResult decode_trace(const EmbeddingVector& target, const std::string& seed_text, Embedder& embedder,
                          const DecoderParams& params) {
    DecodeResult result;
    result.text = seed_text;
    Hypothesis current{split_whitespace(seed_text)};
    if (current.tokens.empty()) return result;

    result.initial_score = cosine(embedder.embed_one(seed_text), target);
    result.score = result.initial_score;

    // The target's norm is fixed for the whole search.
    const double target_norm = target.norm();
    std::size_t longest_word = 0;
    for (const auto& w : params.lexicon()) longest_word = std::max(longest_word, w.size());

    while (result.edits() < params.max_accepted_edits()) {
        const auto moves = enumerate_moves(current, params);
        if (moves.empty()) break;
        const std::size_t reserve = result.text.size() + longest_word + 2;
        std::vector<std::string> texts;
        texts.reserve(moves.size());
        for (const auto& m : moves) texts.push_back(move_text(current, m, reserve));
        const auto vecs = embedder.embed(texts);
        if (vecs.size() != moves.size()) throw ContractError("embedder returned wrong number of vectors");

        std::size_t best = moves.size();
        double best_score = result.score;
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            const double s = cosine_with(vecs[i], target, target_norm);
            if (s > best_score) {
                best_score = s;
                best = i;
            }
        }
        if (best == moves.size()) break;
        current = apply(current, moves[best]);
        result.score = best_score;
        result.accepted_scores.push_back(best_score);
        result.text = std::move(texts[best]);
    }
    return result;
}

std::string decode(const EmbeddingVector& target, const std::string& seed_text, Embedder& embedder,
                   const DecoderParams& params) {
    return decode_trace(target, seed_text, embedder, params).text;
}

}  // namespace empra
