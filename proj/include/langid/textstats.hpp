#pragma once

// Text normalization and the character-level statistics every other module
// consumes: frequency distribution, top-m ranking, within-word bigram counts
// and per-language diacritic counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "langid/unicode.hpp"

namespace langid {

using Bigram = std::pair<CodePoint, CodePoint>;

// Lowercased, composed letters of the input. word_boundaries holds the
// indices into `chars` where a new word begins (never 0, strictly
// increasing); everything the input had between letters collapses into a
// single boundary.
struct NormalizedText {
    std::u32string chars;
    std::vector<std::size_t> word_boundaries;
    std::size_t original_length_chars = 0;
    std::size_t original_length_bytes = 0;
};

struct FrequencyDistribution {
    std::map<CodePoint, std::int64_t> counts;
    std::int64_t total = 0;

    double relative(CodePoint cp) const {
        if (total == 0) return 0.0;
        auto it = counts.find(cp);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    }
};

struct TextStats {
    FrequencyDistribution dist;
    std::vector<CodePoint> top_chars;              // descending count, ties by code point
    std::map<Bigram, std::int64_t> bigram_counts;  // adjacent pairs within one word
    std::map<std::string, std::int64_t> diacritic_counts;  // language id -> letters seen
    std::int64_t letter_total = 0;
};

struct TopKEntry {
    CodePoint letter;
    double percent;  // rounded to two decimals
};

inline NormalizedText normalize(std::string_view raw) {
    NormalizedText out;
    out.original_length_bytes = raw.size();

    const std::u32string scalars = utf8_decode(raw);
    out.original_length_chars = scalars.size();

    // Lowercase, then compose combining marks onto the preceding letter.
    // Marks that do not compose are dropped rather than treated as
    // separators, so a word never splits on an unknown accent.
    std::u32string nfc;
    nfc.reserve(scalars.size());
    for (CodePoint cp : scalars) {
        cp = to_lower(cp);
        if (is_combining_mark(cp)) {
            if (!nfc.empty()) {
                if (auto composed = compose(nfc.back(), cp)) nfc.back() = *composed;
            }
            continue;
        }
        nfc.push_back(cp);
    }

    bool pending_boundary = false;
    for (CodePoint cp : nfc) {
        if (is_letter(cp)) {
            if (pending_boundary && !out.chars.empty()) out.word_boundaries.push_back(out.chars.size());
            pending_boundary = false;
            out.chars.push_back(cp);
        } else {
            pending_boundary = true;
        }
    }
    return out;
}

namespace detail {

// Ranks map entries by descending count; ties broken by ascending key.
template <typename Key>
std::vector<std::pair<Key, std::int64_t>> rank_by_count(const std::map<Key, std::int64_t>& counts,
                                                        std::size_t limit) {
    std::vector<std::pair<Key, std::int64_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > limit) ranked.resize(limit);
    return ranked;
}

template <typename Fn>
void for_each_word(const NormalizedText& text, Fn&& fn) {
    std::size_t start = 0;
    for (std::size_t boundary : text.word_boundaries) {
        fn(start, boundary);
        start = boundary;
    }
    if (start < text.chars.size()) fn(start, text.chars.size());
}

}  // namespace detail

using DiacriticInventories = std::map<std::string, std::set<CodePoint>>;

inline TextStats compute_stats(const NormalizedText& text, int m,
                               const DiacriticInventories& inventories = {}) {
    TextStats stats;
    stats.letter_total = static_cast<std::int64_t>(text.chars.size());

    for (CodePoint cp : text.chars) ++stats.dist.counts[cp];
    stats.dist.total = stats.letter_total;

    detail::for_each_word(text, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i + 1 < end; ++i)
            ++stats.bigram_counts[{text.chars[i], text.chars[i + 1]}];
    });

    const auto ranked = detail::rank_by_count(stats.dist.counts, static_cast<std::size_t>(std::max(m, 0)));
    stats.top_chars.reserve(ranked.size());
    for (const auto& [cp, count] : ranked) stats.top_chars.push_back(cp);

    for (const auto& [language, inventory] : inventories) {
        std::int64_t seen = 0;
        for (CodePoint cp : inventory) {
            auto it = stats.dist.counts.find(cp);
            if (it != stats.dist.counts.end()) seen += it->second;
        }
        stats.diacritic_counts[language] = seen;
    }
    return stats;
}

// First k letters by frequency with percentages rounded to two decimals.
inline std::vector<TopKEntry> top_k_report(const TextStats& stats, int k) {
    const auto ranked = detail::rank_by_count(stats.dist.counts, static_cast<std::size_t>(std::max(k, 0)));
    std::vector<TopKEntry> out;
    out.reserve(ranked.size());
    for (const auto& [cp, count] : ranked) {
        const double pct = stats.dist.total == 0
                               ? 0.0
                               : 100.0 * static_cast<double>(count) / static_cast<double>(stats.dist.total);
        out.push_back({cp, std::round(pct * 100.0) / 100.0});
    }
    return out;
}

}  // namespace langid
