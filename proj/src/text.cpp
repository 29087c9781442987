// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace empra {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

constexpr std::array<std::string_view, 8> kAbbreviations = {"mr", "mrs", "dr", "st", "e.g", "i.e", "etc", "vs"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

// The word immediately before position `end`, without leading punctuation.
std::string_view word_before(std::string_view text, std::size_t end) {
    std::size_t b = end;
    while (b > 0 && !is_space(text[b - 1])) --b;
    while (b < end && !is_alnum(text[b])) ++b;
    return text.substr(b, end - b);
}

std::size_t alnum_length_of_next_word(std::string_view text, std::size_t from) {
    while (from < text.size() && is_space(text[from])) ++from;
    std::size_t n = 0;
    for (; from < text.size() && !is_space(text[from]); ++from) {
        if (is_alnum(text[from])) ++n;
    }
    return n;
}

bool suppresses_boundary(std::string_view text, std::size_t term_begin, std::size_t after) {
    const std::string word = lower(word_before(text, term_begin));
    if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end()) {
        return true;
    }
    if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) {
        return alnum_length_of_next_word(text, after) > 1;
    }
    return false;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto emit = [&](std::size_t end) {
        auto piece = trim(text.substr(start, end - start));
        if (!piece.empty()) out.emplace_back(piece);
        start = end;
    };
    while (i < n) {
        if (!is_terminator(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_terminator(text[j])) ++j;
        std::size_t k = j;
        while (k < n && is_closer(text[k])) ++k;
        const bool at_gap = k == n || is_space(text[k]);
        const bool single_period = j - i == 1 && text[i] == '.';
        if (at_gap && !(k < n && single_period && suppresses_boundary(text, i, k))) {
            emit(k);
        }
        i = k;
    }
    emit(n);
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (is_alnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t b = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > b) out.emplace_back(text.substr(b, i - b));
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    return join(split_whitespace(text));
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace empra
