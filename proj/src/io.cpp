// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "empra/errors.hpp"
#include "empra/text.hpp"

namespace empra {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot open " + path.string());
    return in;
}

// Calls fn(line, line_no) for every non-blank line, with any trailing '\r' removed.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (collapse_whitespace(line).empty()) continue;
        fn(line, no);
    }
}

struct IdText {
    std::string id;
    std::string text;
};

IdText parse_id_text(const std::string& line, std::size_t no, TextFormat format, const char* id_field) {
    IdText row;
    if (format == TextFormat::tsv) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("expected '<id><TAB><text>'", no);
        row.id = line.substr(0, tab);
        row.text = line.substr(tab + 1);
    } else {
        auto obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) throw ParseError("not a JSON object", no);
        for (const char* f : {id_field, "text"}) {
            if (!obj.contains(f) || !obj[f].is_string()) {
                throw ParseError(std::string("missing string field '") + f + "'", no);
            }
        }
        row.id = obj[id_field].get<std::string>();
        row.text = obj["text"].get<std::string>();
    }
    if (collapse_whitespace(row.id).empty()) throw ParseError(std::string("empty ") + id_field, no);
    return row;
}

int parse_int(std::string_view s, std::size_t no, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", no);
    }
    return v;
}

double parse_double(std::string_view s, std::size_t no, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", no);
    }
    return v;
}

template <typename T>
T required(const json& obj, const char* name, std::size_t no) {
    if (!obj.contains(name)) throw ParseError(std::string("missing field '") + name + "'", no);
    try {
        return obj.at(name).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("field '") + name + "' has the wrong type", no);
    }
}

}  // namespace

TextFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return ext == ".jsonl" || ext == ".json" ? TextFormat::jsonl : TextFormat::tsv;
}

Corpus read_corpus(std::istream& in, TextFormat format) {
    Corpus corpus;
    for_each_line(in, [&](const std::string& line, std::size_t no) {
        auto row = parse_id_text(line, no, format, "docid");
        if (corpus.contains(row.id)) {
            throw IngestionError("duplicate docid '" + row.id + "' at line " + std::to_string(no));
        }
        auto id = row.id;
        corpus.emplace(std::move(id), Document::from_text(std::move(row.id), std::move(row.text)));
    });
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, TextFormat format) {
    auto in = open_in(path);
    return read_corpus(in, format);
}

QuerySet read_queries(std::istream& in, TextFormat format) {
    QuerySet queries;
    for_each_line(in, [&](const std::string& line, std::size_t no) {
        auto row = parse_id_text(line, no, format, "qid");
        if (collapse_whitespace(row.text).empty()) throw ParseError("empty query text", no);
        if (queries.contains(row.id)) {
            throw IngestionError("duplicate qid '" + row.id + "' at line " + std::to_string(no));
        }
        auto id = row.id;
        queries.emplace(std::move(id), Query{std::move(row.id), std::move(row.text)});
    });
    return queries;
}

QuerySet load_queries(const std::filesystem::path& path, TextFormat format) {
    auto in = open_in(path);
    return read_queries(in, format);
}

RunSet read_run(std::istream& in) {
    std::map<std::string, std::vector<RankedEntry>> rows;
    for_each_line(in, [&](const std::string& line, std::size_t no) {
        const auto cols = split_whitespace(line);
        if (cols.size() != 6) {
            throw ParseError("expected 6 columns 'qid Q0 docid rank score tag', got " + std::to_string(cols.size()), no);
        }
        RankedEntry e;
        e.docid = cols[2];
        e.rank = parse_int(cols[3], no, "rank");
        e.score = parse_double(cols[4], no, "score");
        rows[cols[0]].push_back(std::move(e));
    });
    RunSet runs;
    for (auto& [qid, entries] : rows) {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const RankedEntry& a, const RankedEntry& b) { return a.rank < b.rank; });
        runs.emplace(qid, RankedList(qid, std::move(entries)));
    }
    return runs;
}

RunSet load_run(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_run(in);
}

void write_run(std::ostream& out, const RunSet& runs, const std::string& tag) {
    for (const auto& [qid, ranked] : runs) {
        for (const auto& e : ranked.entries()) {
            out << qid << " Q0 " << e.docid << " " << e.rank << " " << json(e.score).dump() << " " << tag << "\n";
        }
    }
}

void write_report(std::span<const AttackOutcome> outcomes, std::ostream& out) {
    std::vector<const AttackOutcome*> order;
    order.reserve(outcomes.size());
    for (const auto& o : outcomes) order.push_back(&o);
    std::stable_sort(order.begin(), order.end(), [](const AttackOutcome* a, const AttackOutcome* b) {
        return std::tie(a->qid, a->docid) < std::tie(b->qid, b->docid);
    });
    for (const auto* o : order) {
        ordered_json row;
        row["qid"] = o->qid;
        row["docid"] = o->docid;
        row["orig_rank"] = o->orig_rank;
        row["adv_rank"] = o->adv_rank;
        row["boost"] = o->boost;
        row["adv_text"] = o->adv_text;
        row["position"] = o->position;
        row["c_coh"] = o->c_coh;
        row["c_rel"] = o->c_rel_norm;
        row["score_interp"] = o->score_interp;
        row["adv_document"] = o->adv_document;
        out << row.dump() << "\n";
    }
}

void write_report(std::span<const AttackOutcome> outcomes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot open " + path.string() + " for writing");
    write_report(outcomes, out);
    out.flush();
    if (!out) throw WriteError("failed writing " + path.string());
}

std::vector<AttackOutcome> read_report(std::istream& in) {
    std::vector<AttackOutcome> out;
    for_each_line(in, [&](const std::string& line, std::size_t no) {
        auto obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) throw ParseError("not a JSON object", no);
        AttackOutcome o;
        o.qid = required<std::string>(obj, "qid", no);
        o.docid = required<std::string>(obj, "docid", no);
        o.set_ranks(required<int>(obj, "orig_rank", no), required<int>(obj, "adv_rank", no));
        if (required<int>(obj, "boost", no) != o.boost) throw ParseError("boost != orig_rank - adv_rank", no);
        o.adv_text = required<std::string>(obj, "adv_text", no);
        o.position = required<int>(obj, "position", no);
        o.c_coh = required<double>(obj, "c_coh", no);
        o.c_rel_norm = required<double>(obj, "c_rel", no);
        o.score_interp = required<double>(obj, "score_interp", no);
        o.adv_document = required<std::string>(obj, "adv_document", no);
        out.push_back(std::move(o));
    });
    return out;
}

std::vector<AttackOutcome> load_report(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_report(in);
}

std::vector<TargetSpec> read_targets(std::istream& in) {
    std::vector<TargetSpec> out;
    for_each_line(in, [&](const std::string& line, std::size_t no) {
        auto obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) throw ParseError("not a JSON object", no);
        TargetSpec t;
        t.qid = required<std::string>(obj, "qid", no);
        t.docid = required<std::string>(obj, "docid", no);
        if (obj.contains("difficulty")) {
            try {
                t.difficulty = parse_difficulty(required<std::string>(obj, "difficulty", no));
            } catch (const ContractError& e) {
                throw ParseError(e.what(), no);
            }
        }
        if (obj.contains("original_rank")) t.original_rank = required<int>(obj, "original_rank", no);
        out.push_back(std::move(t));
    });
    return out;
}

std::vector<TargetSpec> load_targets(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_targets(in);
}

void write_targets(std::span<const TargetSpec> targets, std::ostream& out) {
    for (const auto& t : targets) {
        ordered_json row;
        row["qid"] = t.qid;
        row["docid"] = t.docid;
        row["difficulty"] = std::string(to_string(t.difficulty));
        row["original_rank"] = t.original_rank;
        out << row.dump() << "\n";
    }
}

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::unordered_set<std::string> words;
    for_each_line(in, [&](const std::string& line, std::size_t) {
        auto w = collapse_whitespace(line);
        std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
        words.insert(std::move(w));
    });
    return words;
}

}  // namespace empra
