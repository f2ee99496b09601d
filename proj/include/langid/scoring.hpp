#pragma once

// Combined-norm scoring and the detection decision. The per-language total
// is Sum|X_i| + Sum|F_i * i| + bonus, where X holds the profile scores of
// the text's top-m characters, F_i counts occurrences of the profile bigram
// scored i, and the bonus rewards a language's diacritic share of the text.
// All score arithmetic is integer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "langid/profile.hpp"
#include "langid/textstats.hpp"

namespace langid {

struct DetectorConfig {
    int m = 10;                        // top-character count
    bool enable_bigrams = true;        // Method 2 on/off
    bool enable_diacritic_bonus = true;
    std::int64_t bonus_unit = 100;
    double threshold_low = 0.05;       // bonus x1 above this share
    double threshold_high = 0.10;      // bonus x2 above this share
    std::int64_t low_confidence_margin = 10;

    static DetectorConfig method1() {
        DetectorConfig c;
        c.enable_bigrams = false;
        return c;
    }
    static DetectorConfig method2() { return DetectorConfig{}; }

    void validate() const {
        if (m < 1 || m > kMaxRankedChars)
            throw Error("DetectorConfig: m must be in [1, " + std::to_string(kMaxRankedChars) + "]");
        if (!(threshold_low > 0.0 && threshold_low < threshold_high && threshold_high < 1.0))
            throw Error("DetectorConfig: thresholds must satisfy 0 < low < high < 1");
        if (bonus_unit < 0) throw Error("DetectorConfig: bonus_unit must be non-negative");
    }
};

struct ScoreBreakdown {
    std::string language_id;
    std::vector<int> x;            // length m, zero-padded
    std::vector<std::int64_t> f;   // length 10; f[i-1] = occurrences of the bigram scored i
    std::int64_t monogram_total = 0;
    std::int64_t bigram_total = 0;
    double p = 0.0;                // diacritic proportion of the text's letters
    int k = 0;                     // bonus multiplier, 0/1/2
    std::int64_t bonus = 0;
    std::int64_t total = 0;
};

struct DetectionResult {
    std::vector<ScoreBreakdown> scores;  // descending total, ties by ascending language id
    std::string winner;
    std::int64_t margin = 0;             // winner total minus runner-up total
    bool tie = false;
    bool low_confidence = false;
    std::size_t text_length_chars = 0;
};

inline std::pair<std::vector<int>, std::int64_t> monogram_score(const TextStats& stats,
                                                                const LanguageProfile& profile,
                                                                int m) {
    std::vector<int> x(static_cast<std::size_t>(std::max(m, 0)), 0);
    std::int64_t total = 0;
    const std::size_t n = std::min(x.size(), stats.top_chars.size());
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = profile.char_score(stats.top_chars[i]);
        total += x[i];
    }
    return {std::move(x), total};
}

inline std::pair<std::vector<std::int64_t>, std::int64_t> bigram_score(
    const TextStats& stats, const LanguageProfile& profile) {
    std::vector<std::int64_t> f(kMaxRankedBigrams, 0);
    std::int64_t total = 0;
    for (int score = 1; score <= kMaxRankedBigrams; ++score) {
        if (const Bigram* bg = profile.bigram_with_score(score)) {
            auto it = stats.bigram_counts.find(*bg);
            if (it != stats.bigram_counts.end()) {
                f[static_cast<std::size_t>(score - 1)] = it->second;
                total += it->second * score;
            }
        }
    }
    return {std::move(f), total};
}

inline int bonus_multiplier(double p, const DetectorConfig& config = {}) {
    if (p > config.threshold_high) return 2;
    if (p > config.threshold_low) return 1;
    return 0;
}

struct DiacriticBonus {
    double p = 0.0;
    int k = 0;
    std::int64_t bonus = 0;
};

inline DiacriticBonus diacritic_bonus(const TextStats& stats, const LanguageProfile& profile,
                                      const DetectorConfig& config = {}) {
    DiacriticBonus result;
    if (stats.letter_total == 0) return result;

    std::int64_t count = 0;
    auto it = stats.diacritic_counts.find(profile.language_id);
    if (it != stats.diacritic_counts.end()) {
        count = it->second;
    } else {
        for (CodePoint cp : profile.diacritics) {
            auto c = stats.dist.counts.find(cp);
            if (c != stats.dist.counts.end()) count += c->second;
        }
    }
    result.p = static_cast<double>(count) / static_cast<double>(stats.letter_total);
    result.k = bonus_multiplier(result.p, config);
    result.bonus = config.bonus_unit * result.k;
    return result;
}

inline ScoreBreakdown combined_score(const TextStats& stats, const LanguageProfile& profile,
                                     const DetectorConfig& config = {}) {
    ScoreBreakdown breakdown;
    breakdown.language_id = profile.language_id;

    auto [x, monogram_total] = monogram_score(stats, profile, config.m);
    breakdown.x = std::move(x);
    breakdown.monogram_total = monogram_total;

    breakdown.f.assign(kMaxRankedBigrams, 0);
    if (config.enable_bigrams) {
        auto [f, bigram_total] = bigram_score(stats, profile);
        breakdown.f = std::move(f);
        breakdown.bigram_total = bigram_total;
    }

    const DiacriticBonus db = diacritic_bonus(stats, profile, config);
    breakdown.p = db.p;
    if (config.enable_diacritic_bonus) {
        breakdown.k = db.k;
        breakdown.bonus = db.bonus;
    }

    breakdown.total = breakdown.monogram_total + breakdown.bigram_total + breakdown.bonus;
    return breakdown;
}

// The bonus-free object whose norm axioms hold: Sum|X_i| + Sum|F_i * i|.
inline double norm_value(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size())
        throw Error("norm_value: vector lengths differ (" + std::to_string(x.size()) + " vs " +
                    std::to_string(f.size()) + ")");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sum += std::abs(x[i]) + std::abs(f[i] * static_cast<double>(i + 1));
    return sum;
}

inline DetectionResult detect(std::string_view raw, const ProfileSet& profiles,
                              const DetectorConfig& config = {}) {
    config.validate();
    if (profiles.profiles.size() < 2)
        throw Error("detect: at least 2 profiles required, have " +
                    std::to_string(profiles.profiles.size()));

    const NormalizedText norm = normalize(raw);
    if (norm.chars.empty())
        throw UndeterminableError("detect: no letters after normalization");

    const TextStats stats = compute_stats(norm, config.m, profiles.diacritic_inventories());

    DetectionResult result;
    result.text_length_chars = norm.original_length_chars;
    result.scores.reserve(profiles.profiles.size());
    for (const auto& [id, profile] : profiles.profiles)
        result.scores.push_back(combined_score(stats, profile, config));

    std::stable_sort(result.scores.begin(), result.scores.end(), [](const auto& a, const auto& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.language_id < b.language_id;
    });

    result.winner = result.scores.front().language_id;
    result.margin = result.scores.front().total - result.scores[1].total;
    result.tie = result.margin == 0;
    result.low_confidence = result.margin < config.low_confidence_margin;
    return result;
}

}  // namespace langid
