// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "empra/io.hpp"
#include "fake_server.hpp"

namespace empra::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const fs::path kToy = fs::path(EMPRA_SOURCE_DIR) / "data" / "toy";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::vector<const char*> argv{"empra"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const auto dir = fs::temp_directory_path() / "empra_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        if (!l.empty()) out.push_back(l);
    }
    return out;
}

fs::path deep_run() {
    const auto p = scratch() / "deep_run.txt";
    std::ofstream f(p);
    for (int r = 1; r <= 1000; ++r) f << "q1 Q0 doc" << r << " " << r << " " << (2000 - r) << " bm25\n";
    return p;
}

std::vector<std::string> toy_attack_args(const fs::path& report) {
    return {"attack",  "--corpus", (kToy / "corpus.tsv").string(), "--queries", (kToy / "queries.tsv").string(),
            "--run",   (kToy / "run.txt").string(), "--targets", (kToy / "targets.jsonl").string(),
            "--report", report.string(), "--seed", "3", "--victim-seed", "11", "--workers", "2"};
}

TEST(Cli, AttackOnToyFixtureIsDeterministic) {
    const auto a = scratch() / "report_a.jsonl";
    const auto b = scratch() / "report_b.jsonl";
    const auto r1 = run(toy_attack_args(a));
    ASSERT_EQ(r1.code, kExitOk) << r1.err;
    const auto r2 = run(toy_attack_args(b));
    ASSERT_EQ(r2.code, kExitOk) << r2.err;
    const auto targets = load_targets(kToy / "targets.jsonl");
    EXPECT_EQ(lines(slurp(a)).size(), targets.size());
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, AttackReportsPartialFailure) {
    const auto targets = scratch() / "targets_bad.jsonl";
    std::ofstream(targets) << R"({"qid":"q1","docid":"nope"})" "\n" << lines(slurp(kToy / "targets.jsonl")).at(0) << "\n";
    auto args = toy_attack_args(scratch() / "report_partial.jsonl");
    args[8] = targets.string();
    const auto r = run(args);
    EXPECT_EQ(r.code, kExitPartial);
    EXPECT_EQ(lines(slurp(scratch() / "report_partial.jsonl")).size(), 1u);
}

TEST(Cli, EvaluateSingleOutcome) {
    const auto report = scratch() / "t6.jsonl";
    AttackOutcome o;
    o.qid = "q1";
    o.docid = "d1";
    o.set_ranks(91, 1);
    o.adv_document = "Can anyone take prenatal vitamins? Prenatal vitamins help.";
    write_report(std::vector<AttackOutcome>{o}, report);
    const auto words = scratch() / "words.txt";
    std::ofstream(words) << "can\nanyone\ntake\nhelp\n";
    const auto r = run({"evaluate", "--report", report.string(), "--k", "3", "--word-list", words.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_DOUBLE_EQ(j.at("avg_boost").get<double>(), 90.0);
    EXPECT_DOUBLE_EQ(j.at("asr").get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j.at("boosted_top10").get<double>(), 1.0);
    EXPECT_EQ(j.at("boosted_topk").at("k").get<int>(), 3);
    EXPECT_TRUE(j.contains("readability"));
}

TEST(Cli, EvaluateEmptyReportIsFatal) {
    const auto report = scratch() / "empty.jsonl";
    std::ofstream(report).close();
    EXPECT_EQ(run({"evaluate", "--report", report.string()}).code, kExitFatal);
}

TEST(Cli, SampleHard5) {
    const auto r = run({"sample", "--run", deep_run().string(), "--mode", "hard5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);
    for (int i = 0; i < 5; ++i) {
        const auto j = Json::parse(rows[i]);
        EXPECT_EQ(j.at("original_rank").get<int>(), 996 + i);
        EXPECT_EQ(j.at("difficulty"), "hard");
    }
}

TEST(Cli, SampleWritesTargetsFile) {
    const auto out = scratch() / "sampled.jsonl";
    const auto r = run({"sample", "--run", deep_run().string(), "--mode", "easy5", "--seed", "4", "--targets", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(load_targets(out).size(), 5u);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const auto cfg = scratch() / "empra.conf";
    std::ofstream(cfg) << "mode=hard5\n";
    const auto from_file = run({"--config", cfg.string(), "sample", "--run", deep_run().string()});
    ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
    EXPECT_EQ(Json::parse(lines(from_file.out).at(0)).at("original_rank").get<int>(), 996);
    const auto flag_wins =
        run({"--config", cfg.string(), "sample", "--run", deep_run().string(), "--mode", "easy5"});
    ASSERT_EQ(flag_wins.code, kExitOk) << flag_wins.err;
    EXPECT_LE(Json::parse(lines(flag_wins.out).at(0)).at("original_rank").get<int>(), 60);
}

TEST(Cli, FatalConfigurationErrors) {
    EXPECT_EQ(run({"sample", "--bogus"}).code, kExitFatal);
    EXPECT_EQ(run({}).code, kExitFatal);
    EXPECT_EQ(run({"sample", "--run", "/nonexistent/run.txt"}).code, kExitFatal);
    EXPECT_EQ(run({"attack", "--corpus", (kToy / "corpus.tsv").string()}).code, kExitFatal);
    EXPECT_EQ(run({"sample", "--run", deep_run().string(), "--mode", "medium"}).code, kExitFatal);
    EXPECT_EQ(run({"sample", "--run", deep_run().string(), "--alpha", "2"}).code, kExitFatal);
    EXPECT_EQ(run({"sample", "--run", deep_run().string(), "--anchor-kinds", "query,nope"}).code, kExitFatal);
    auto remote = toy_attack_args(scratch() / "never.jsonl");
    remote.push_back("--embedder");
    remote.push_back("remote");
    EXPECT_EQ(run(remote).code, kExitFatal);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ProbeAgainstFakeServer) {
    testing::FakeModelServer server;
    const auto r = run({"probe", "--server-url", server.url()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& row : rows) {
        const auto j = Json::parse(row);
        EXPECT_TRUE(j.at("ok").get<bool>()) << row;
        EXPECT_GE(j.at("latency_ms").get<double>(), 0.0);
    }
    EXPECT_EQ(Json::parse(rows[0]).at("endpoint"), "/healthz");
}

TEST(Cli, ProbeReportsContractViolations) {
    testing::FakeModelServer server;
    server.set("/nsp", [](const Json&) { return std::pair{200, std::string(R"({"probs":[1.5,0.1]})")}; });
    ::setenv("EMPRA_SERVER_URL", server.url().c_str(), 1);
    const auto r = run({"probe"});
    ::unsetenv("EMPRA_SERVER_URL");
    EXPECT_EQ(r.code, kExitPartial);
    bool nsp_failed = false;
    for (const auto& row : lines(r.out)) {
        const auto j = Json::parse(row);
        if (j.at("endpoint") == "/nsp") nsp_failed = !j.at("ok").get<bool>();
    }
    EXPECT_TRUE(nsp_failed);
    EXPECT_EQ(run({"probe"}).code, kExitFatal);
}

TEST(Cli, AttackAgainstRemoteScorers) {
    testing::FakeModelServer server(EmbedderSpec::reference(64, 3));
    auto args = toy_attack_args(scratch() / "remote_report.jsonl");
    const auto targets = scratch() / "two_targets.jsonl";
    const auto all = lines(slurp(kToy / "targets.jsonl"));
    std::ofstream(targets) << all.at(0) << "\n" << all.at(1) << "\n";
    args[8] = targets.string();
    for (const char* extra : {"--embedder", "remote", "--victim", "reference", "--server-url"}) args.push_back(extra);
    args.push_back(server.url());
    const auto r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(lines(slurp(scratch() / "remote_report.jsonl")).size(), 2u);
    EXPECT_GT(server.requests(), 0u);
}

}  // namespace
}  // namespace empra::cli
