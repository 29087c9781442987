// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "empra/pipeline.hpp"
#include "empra/types.hpp"

namespace empra {

enum class TextFormat { tsv, jsonl };

/// jsonl for *.jsonl / *.json, tsv otherwise.
TextFormat format_from_path(const std::filesystem::path& path);

/// Rows are "docid<TAB>text" (tsv) or {"docid": ..., "text": ...} (jsonl).
Corpus load_corpus(const std::filesystem::path& path, TextFormat format);
Corpus read_corpus(std::istream& in, TextFormat format);

/// As load_corpus with fields qid and text. Query text must not be blank.
QuerySet load_queries(const std::filesystem::path& path, TextFormat format);
QuerySet read_queries(std::istream& in, TextFormat format);

/// Six-column run rows "qid Q0 docid rank score tag".
RunSet load_run(const std::filesystem::path& path);
RunSet read_run(std::istream& in);

void write_run(std::ostream& out, const RunSet& runs, const std::string& tag = "empra");

/// One JSON object per outcome, sorted by (qid, docid), with the fields
/// qid, docid, orig_rank, adv_rank, boost, adv_text, position, c_coh, c_rel,
/// score_interp, adv_document.
void write_report(std::span<const AttackOutcome> outcomes, const std::filesystem::path& path);
void write_report(std::span<const AttackOutcome> outcomes, std::ostream& out);

std::vector<AttackOutcome> load_report(const std::filesystem::path& path);
std::vector<AttackOutcome> read_report(std::istream& in);

/// TargetSpec JSONL: {"qid", "docid", "difficulty", "original_rank"}.
/// difficulty and original_rank are optional when reading.
std::vector<TargetSpec> load_targets(const std::filesystem::path& path);
std::vector<TargetSpec> read_targets(std::istream& in);
void write_targets(std::span<const TargetSpec> targets, std::ostream& out);

/// One lowercase word per line.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

}  // namespace empra
