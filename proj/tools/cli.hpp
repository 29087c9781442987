// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "empra/constructor.hpp"

namespace empra::cli {

enum class Subcommand { attack, evaluate, sample, probe };

/// Exit statuses of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitFatal = 2;

struct CliConfig {
    Subcommand subcommand = Subcommand::attack;

    std::string corpus;
    std::string queries;
    std::string run;
    std::string targets;
    std::string report;
    std::string word_list;

    std::string embedder = "reference";
    /// Per-role scorer kinds; "auto" follows --embedder.
    std::string relevance = "auto";
    std::string coherence = "auto";
    std::string victim = "auto";
    std::size_t dim = 256;
    std::uint64_t seed = 0;
    /// Reference victim seed; defaults to --seed.
    std::uint64_t victim_seed = 0;
    bool victim_seed_set = false;
    std::string server_url;
    std::string victim_url;
    std::size_t max_inflight = 4;

    AttackConfig attack;
    std::string mode = "easy5";
    int k = 0;
    std::size_t workers = 1;
};

/// Parses argv and runs the chosen subcommand. Normal output goes to `out`,
/// diagnostics and the per-target log to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace empra::cli
