// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "empra/errors.hpp"
#include "empra/io.hpp"
#include "empra/metrics.hpp"
#include "empra/pipeline.hpp"
#include "empra/remote.hpp"

namespace empra::cli {

namespace {

namespace fs = std::filesystem;

/// Configuration problem detected after parsing; maps to kExitFatal.
struct FatalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_path(const std::string& value, const char* flag) {
    if (value.empty()) throw FatalError(std::string("missing required flag ") + flag);
    if (!fs::exists(value)) throw FatalError(std::string(flag) + ": no such file: " + value);
}

std::string role_kind(const std::string& role, const CliConfig& c) { return role == "auto" ? c.embedder : role; }

ScorerRoles build_roles(const CliConfig& c) {
    const bool any_remote = c.embedder == "remote" || role_kind(c.relevance, c) == "remote" ||
                            role_kind(c.coherence, c) == "remote";
    const bool victim_remote = role_kind(c.victim, c) == "remote";
    std::shared_ptr<RemoteClient> client;
    RemoteClient::Options opts;
    opts.max_in_flight = c.max_inflight;
    if (any_remote || (victim_remote && c.victim_url.empty())) {
        if (c.server_url.empty()) throw FatalError("remote scorers need --server-url or EMPRA_SERVER_URL");
        client = std::make_shared<RemoteClient>(c.server_url, opts);
    }

    const auto spec = EmbedderSpec::reference(c.dim, c.seed);
    ScorerRoles roles;
    if (c.embedder == "remote") {
        roles.embedder = std::make_shared<CachingEmbedder>(std::make_shared<RemoteEmbedder>(client));
    } else {
        roles.embedder = std::make_shared<ReferenceEmbedder>(spec);
    }
    if (role_kind(c.relevance, c) == "remote") {
        roles.relevance = std::make_shared<RemoteRelevance>(client);
    } else {
        roles.relevance = std::make_shared<ReferenceRelevance>(spec);
    }
    if (role_kind(c.coherence, c) == "remote") {
        roles.coherence = std::make_shared<RemoteCoherence>(client);
    } else {
        roles.coherence = std::make_shared<ReferenceCoherence>(spec);
    }
    if (victim_remote) {
        auto victim_client = c.victim_url.empty() ? client : std::make_shared<RemoteClient>(c.victim_url, opts);
        roles.victim = std::make_shared<RemoteRelevance>(victim_client);
    } else {
        const auto seed = c.victim_seed_set ? c.victim_seed : c.seed;
        roles.victim = std::make_shared<ReferenceRelevance>(EmbedderSpec::reference(c.dim, seed));
    }
    return roles;
}

int run_attack(const CliConfig& c, std::ostream& err) {
    require_path(c.corpus, "--corpus");
    require_path(c.queries, "--queries");
    require_path(c.run, "--run");
    require_path(c.targets, "--targets");
    if (c.report.empty()) throw FatalError("missing required flag --report");

    const auto corpus = load_corpus(c.corpus, format_from_path(c.corpus));
    const auto queries = load_queries(c.queries, format_from_path(c.queries));
    const auto runs = load_run(c.run);
    const auto targets = load_targets(c.targets);
    const auto roles = build_roles(c);

    RunOptions options;
    options.workers = c.workers;
    options.log = &err;
    const auto result = attack_run(queries, corpus, runs, targets, c.attack, roles, options);
    write_report(result.outcomes, fs::path(c.report));
    err << "attacked " << targets.size() << " targets: " << result.outcomes.size() << " outcomes, "
        << result.errors.size() << " errors\n";
    return result.errors.empty() ? kExitOk : kExitPartial;
}

int run_evaluate(const CliConfig& c, std::ostream& out) {
    require_path(c.report, "--report");
    const auto outcomes = load_report(c.report);
    if (outcomes.empty()) throw FatalError("report " + c.report + " has no outcomes");
    auto report = compute_metrics(outcomes, c.k > 0 ? std::optional<int>(c.k) : std::nullopt);
    if (!c.word_list.empty()) {
        require_path(c.word_list, "--word-list");
        report.readability = readability_of(outcomes, load_word_list(c.word_list));
    }
    out << to_json(report) << "\n";
    return kExitOk;
}

int run_sample(const CliConfig& c, std::ostream& out) {
    require_path(c.run, "--run");
    const auto runs = load_run(c.run);
    const auto targets = sample_run(runs, parse_sample_mode(c.mode), c.seed);
    if (c.targets.empty()) {
        write_targets(targets, out);
    } else {
        std::ofstream f(c.targets, std::ios::binary | std::ios::trunc);
        if (!f) throw WriteError("cannot open " + c.targets + " for writing");
        write_targets(targets, f);
        if (!f.flush()) throw WriteError("failed writing " + c.targets);
    }
    return kExitOk;
}

int run_probe(const CliConfig& c, std::ostream& out, std::ostream& err) {
    if (c.server_url.empty()) throw FatalError("probe needs --server-url or EMPRA_SERVER_URL");
    RemoteClient::Options opts;
    opts.max_in_flight = c.max_inflight;
    opts.timeout = std::chrono::seconds(30);
    RemoteClient client(c.server_url, opts);

    bool all_ok = true;
    auto check = [&](const char* endpoint, const std::function<std::string()>& fn) {
        const auto start = std::chrono::steady_clock::now();
        nlohmann::ordered_json row;
        row["endpoint"] = endpoint;
        try {
            const auto detail = fn();
            row["ok"] = true;
            row["detail"] = detail;
        } catch (const std::exception& e) {
            all_ok = false;
            row["ok"] = false;
            row["detail"] = e.what();
            err << "probe " << endpoint << ": " << e.what() << "\n";
        }
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        row["latency_ms"] = ms;
        out << row.dump() << "\n";
    };

    check("/healthz", [&] {
        auto body = nlohmann::json::parse(client.health(), nullptr, false);
        if (body.is_discarded() || !body.is_object() || body.value("status", "") != "ok") {
            throw RemoteError(client.base_url() + "/healthz", "status is not \"ok\"");
        }
        return body.contains("endpoints") ? body["endpoints"].dump() : std::string("ok");
    });
    check("/embed", [&] {
        const std::vector<std::string> texts{"can anyone take prenatal vitamins?", "prenatal vitamins",
                                             "can anyone take prenatal vitamins?"};
        const auto v = client.embed(texts);
        if (v[0] != v[2]) throw RemoteError(client.base_url() + "/embed", "identical texts gave different vectors");
        return std::to_string(v.size()) + " vectors of dim " + std::to_string(v[0].dim());
    });
    check("/score", [&] {
        const std::vector<std::string> docs{"Prenatal vitamins consist of a variety of vitamins and minerals.",
                                            "The weather was mild.", "Prenatal vitamins consist of a variety of vitamins and minerals."};
        const auto s = client.score("can anyone take prenatal vitamins?", docs);
        if (s[0] != s[2]) throw RemoteError(client.base_url() + "/score", "identical documents scored differently");
        return std::to_string(s.size()) + " scores";
    });
    check("/nsp", [&] {
        const std::vector<TextPair> pairs{{"Prenatal vitamins help.", "Ask your doctor first."},
                                          {"Ask your doctor first.", "Prenatal vitamins help."}};
        return std::to_string(client.nsp(pairs).size()) + " probabilities in [0, 1]";
    });
    check("/perplexity", [&] {
        const std::vector<std::string> texts{"Always let your health care provider know what you are taking."};
        return "ppl " + nlohmann::json(client.perplexity(texts).at(0)).dump();
    });
    return all_ok ? kExitOk : kExitPartial;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Embedding-perturbation rank attacks against text rankers", "empra"};
    app.set_config("--config", "", "key=value configuration file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig c;
    c.workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    std::string bound_mode = "grad-clip";
    std::string anchor_kinds = "query,top_doc,aligned_sentence";

    app.add_option("--corpus", c.corpus, "Corpus file (.tsv or .jsonl)");
    app.add_option("--queries", c.queries, "Query file (.tsv or .jsonl)");
    app.add_option("--run", c.run, "Six-column run file");
    app.add_option("--targets", c.targets, "Target list (JSONL); output path for sample");
    app.add_option("--report", c.report, "Attack report (JSONL)");
    app.add_option("--word-list", c.word_list, "Familiar-word list for readability");
    app.add_option("--embedder", c.embedder, "Sentence embedder")->check(CLI::IsMember({"reference", "remote"}));
    app.add_option("--relevance", c.relevance, "Relevance scorer")->check(CLI::IsMember({"auto", "reference", "remote"}));
    app.add_option("--coherence", c.coherence, "Coherence scorer")->check(CLI::IsMember({"auto", "reference", "remote"}));
    app.add_option("--victim", c.victim, "Victim ranker")->check(CLI::IsMember({"auto", "reference", "remote"}));
    app.add_option("--dim", c.dim, "Reference embedding dimension")->check(CLI::Range(2, 1 << 20));
    app.add_option("--seed", c.seed, "Reference embedder seed and sampling seed");
    auto* victim_seed = app.add_option("--victim-seed", c.victim_seed, "Reference victim seed (default: --seed)");
    app.add_option("--server-url", c.server_url, "Model server base URL")->envname("EMPRA_SERVER_URL");
    app.add_option("--victim-url", c.victim_url, "Separate model server for the victim");
    app.add_option("--max-inflight", c.max_inflight, "Concurrent requests per server")->check(CLI::Range(1, 256));
    app.add_option("--eta", c.attack.transport.eta, "Transport step size")->check(CLI::PositiveNumber);
    app.add_option("--epsilon", c.attack.transport.epsilon, "Gradient clip bound / ball radius")->check(CLI::PositiveNumber);
    app.add_option("--iters", c.attack.transport.iters, "Transport iterations")->check(CLI::NonNegativeNumber);
    app.add_option("--alpha", c.attack.alpha, "Coherence weight in the interpolated score")->check(CLI::Range(0.0, 1.0));
    app.add_option("--bound-mode", bound_mode, "Perturbation bound")->check(CLI::IsMember({"grad-clip", "ball-project"}));
    app.add_option("--anchor-kinds", anchor_kinds, "Comma list of query,top_doc,aligned_sentence");
    app.add_option("--max-edits", c.attack.decoder.max_accepted_edits, "Decoder edit budget per decode");
    app.add_flag("--decode-final-only", c.attack.decoder.decode_final_only, "Decode only the last transported state");
    app.add_option("--lambda-core", c.attack.lambda_core, "Core similarity threshold (flag only)")->check(CLI::Range(0.0, 1.0));
    app.add_flag("--include-original", c.attack.include_original_as_candidate, "Let the unmodified document compete");
    app.add_option("--mode", c.mode, "Target sampling mode")->check(CLI::IsMember({"easy5", "hard5", "mixture"}));
    app.add_option("--k", c.k, "Extra boosted top-k cutoff for evaluate")->check(CLI::PositiveNumber);
    app.add_option("--workers", c.workers, "Parallel targets")->check(CLI::Range(1, 1024));

    app.add_subcommand("attack", "Attack targets and write a report")->callback([&] { c.subcommand = Subcommand::attack; });
    app.add_subcommand("evaluate", "Compute metrics from a report")->callback([&] { c.subcommand = Subcommand::evaluate; });
    app.add_subcommand("sample", "Sample targets from a run")->callback([&] { c.subcommand = Subcommand::sample; });
    app.add_subcommand("probe", "Check the model server protocol")->callback([&] { c.subcommand = Subcommand::probe; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "empra: " << e.what() << "\n";
        return kExitFatal;
    }

    try {
        c.victim_seed_set = victim_seed->count() > 0;
        c.attack.transport.bound_mode = parse_bound_mode(bound_mode);
        c.attack.anchor_kinds = parse_anchor_kinds(anchor_kinds);
        c.attack.validate();
        switch (c.subcommand) {
            case Subcommand::attack: return run_attack(c, err);
            case Subcommand::evaluate: return run_evaluate(c, out);
            case Subcommand::sample: return run_sample(c, out);
            case Subcommand::probe: return run_probe(c, out, err);
        }
    } catch (const FatalError& e) {
        err << "empra: " << e.what() << "\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        err << "empra: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitFatal;
}

}  // namespace empra::cli
