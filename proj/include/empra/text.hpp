// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace empra {

/// Rule-based sentence segmentation.
///
/// A boundary is a run of '.', '!' or '?' (optionally followed by closing
/// quotes or brackets) that is followed by whitespace or end of text. A '.'
/// run does not end a sentence when the word it terminates is one of
/// mr, mrs, dr, st, e.g, i.e, etc, vs (case-insensitive), or when that word
/// is a single letter and the next word is longer than one letter (an
/// initial, as in "J. Smith"). Segments are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

/// Lowercased ASCII-alphanumeric runs; everything else separates tokens.
std::vector<std::string> tokenize_words(std::string_view text);

/// Whitespace-separated tokens with their original spelling.
std::vector<std::string> split_whitespace(std::string_view text);

/// Replaces every whitespace run by one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

std::string join(std::span<const std::string> parts, std::string_view sep = " ");

}  // namespace empra
