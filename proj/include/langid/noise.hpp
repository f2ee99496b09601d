#pragma once

// The three-text corruption model and the Monte-Carlo experiment measuring
// how each operation shifts the l1 norm of the top-10 character score
// vector. Trials are independently seeded, so runs are reproducible and
// may be chunked across threads with an order-independent integer reducer.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "langid/scoring.hpp"

namespace langid {

enum class NoiseKind { VowelDeletion, VowelSubstitution, SymbolSubstitution };

inline std::string_view noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::VowelDeletion: return "vowel-deletion";
        case NoiseKind::VowelSubstitution: return "vowel-substitution";
        case NoiseKind::SymbolSubstitution: return "symbol-substitution";
    }
    return "unknown";
}

inline NoiseKind noise_kind_from_name(std::string_view name) {
    if (name == "vowel-deletion") return NoiseKind::VowelDeletion;
    if (name == "vowel-substitution") return NoiseKind::VowelSubstitution;
    if (name == "symbol-substitution") return NoiseKind::SymbolSubstitution;
    throw Error("unknown noise op '" + std::string(name) + "'");
}

inline const std::set<CodePoint>& base_vowels() {
    static const std::set<CodePoint> vowels = {U'a', U'e', U'i', U'o', U'u'};
    return vowels;
}

// a e i o u plus whatever vowel letters the language's diacritic inventory
// contributes (consonant diacritics like ş or ç stay out).
inline std::set<CodePoint> vowel_set_for(const LanguageProfile& profile) {
    static const std::set<CodePoint> accented_vowels = {
        0x00E0, 0x00E1, 0x00E2, 0x00E3, 0x00E4, 0x00E5, 0x00E8, 0x00E9, 0x00EA, 0x00EB,
        0x00EC, 0x00ED, 0x00EE, 0x00EF, 0x00F2, 0x00F3, 0x00F4, 0x00F5, 0x00F6, 0x00F9,
        0x00FA, 0x00FB, 0x00FC, 0x0103, 0x0131, 0x0151, 0x0171,
    };
    std::set<CodePoint> vowels = base_vowels();
    for (CodePoint cp : profile.diacritics)
        if (accented_vowels.count(cp)) vowels.insert(cp);
    return vowels;
}

inline std::vector<CodePoint> default_consonant_pool() {
    return {U'b', U'c', U'd', U'f', U'g', U'h', U'j', U'k', U'l', U'm',
            U'n', U'p', U'q', U'r', U's', U't', U'v', U'w', U'x', U'z'};
}

inline std::vector<CodePoint> default_symbol_pool() {
    return {U'#', U'@', U'%', U'&', U'*', U'+', U'=', U'?', U'!', U'~'};
}

struct NoiseOp {
    NoiseKind kind = NoiseKind::VowelDeletion;
    double rate = 0.3;   // fraction of eligible positions, (0, 1]
    std::uint64_t seed = 0;
    std::set<CodePoint> vowel_set = base_vowels();
    std::vector<CodePoint> consonant_pool = default_consonant_pool();
    std::vector<CodePoint> symbol_pool = default_symbol_pool();

    void validate() const {
        if (!(rate > 0.0 && rate <= 1.0)) throw Error("NoiseOp: rate must be in (0, 1]");
        if (kind == NoiseKind::VowelSubstitution && consonant_pool.empty())
            throw Error("NoiseOp: vowel-substitution needs a non-empty consonant pool");
        if (kind == NoiseKind::SymbolSubstitution && symbol_pool.empty())
            throw Error("NoiseOp: symbol-substitution needs a non-empty symbol pool");
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Unbiased draw from [0, n) via rejection; mt19937_64 output is specified
// by the standard, so sequences are identical across platforms.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

// First n elements of a seeded uniform shuffle of indices [0, count).
inline std::vector<std::size_t> sample_positions(std::size_t count, std::size_t n,
                                                 std::mt19937_64& rng) {
    std::vector<std::size_t> indices(count);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, count - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(n);
    return indices;
}

}  // namespace detail

// Applies exactly ceil(rate * eligible) transformations at positions chosen
// uniformly without replacement. Pure given (text, op): the seed fixes both
// the positions and the replacement draws.
inline std::string apply_noise(std::string_view raw, const NoiseOp& op) {
    op.validate();
    std::u32string scalars = utf8_decode(raw);
    if (scalars.empty()) throw NoiseError(std::string(noise_kind_name(op.kind)) + ": empty text");

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < scalars.size(); ++i) {
        const CodePoint lower = to_lower(scalars[i]);
        const bool hit = op.kind == NoiseKind::SymbolSubstitution ? is_alphanumeric(scalars[i])
                                                                  : op.vowel_set.count(lower) > 0;
        if (hit) eligible.push_back(i);
    }
    if (eligible.empty())
        throw NoiseError(std::string(noise_kind_name(op.kind)) + ": no eligible positions");

    const std::size_t n = std::min(
        eligible.size(),
        static_cast<std::size_t>(std::ceil(op.rate * static_cast<double>(eligible.size()) - 1e-9)));

    std::mt19937_64 rng(op.seed);
    const auto chosen = detail::sample_positions(eligible.size(), std::max<std::size_t>(n, 1), rng);

    constexpr CodePoint kDeleted = 0xFFFFFFFF;
    for (std::size_t pick : chosen) {
        const std::size_t pos = eligible[pick];
        switch (op.kind) {
            case NoiseKind::VowelDeletion:
                scalars[pos] = kDeleted;
                break;
            case NoiseKind::VowelSubstitution:
                scalars[pos] =
                    op.consonant_pool[detail::uniform_below(rng, op.consonant_pool.size())];
                break;
            case NoiseKind::SymbolSubstitution:
                scalars[pos] = op.symbol_pool[detail::uniform_below(rng, op.symbol_pool.size())];
                break;
        }
    }

    std::string out;
    out.reserve(raw.size());
    for (CodePoint cp : scalars)
        if (cp != kDeleted) utf8_append(out, cp);
    return out;
}

// l1 norm of g: the occurrence counts of the text's top-10 characters.
// A newcomer to the top 10 enters with a count no higher than the one it
// displaces, which is what makes the expected change under noise negative.
inline std::int64_t top10_frequency_norm(std::string_view text) {
    const NormalizedText norm = normalize(text);
    const TextStats stats = compute_stats(norm, 10);
    std::int64_t total = 0;
    for (CodePoint cp : stats.top_chars) total += stats.dist.counts.at(cp);
    return total;
}

struct NoiseTrialResult {
    NoiseOp op;
    std::int64_t norm_before = 0;
    std::int64_t norm_after = 0;
    std::int64_t delta = 0;
    std::string detection_before;
    std::string detection_after;  // empty when the noisy text is undeterminable
};

inline NoiseTrialResult run_noise_trial(std::string_view text, const ProfileSet& profiles,
                                        const NoiseOp& op, const DetectorConfig& config = {}) {
    NoiseTrialResult trial;
    trial.op = op;
    trial.norm_before = top10_frequency_norm(text);
    trial.detection_before = detect(text, profiles, config).winner;

    const std::string noisy = apply_noise(text, op);
    trial.norm_after = top10_frequency_norm(noisy);
    trial.delta = trial.norm_after - trial.norm_before;
    try {
        trial.detection_after = detect(noisy, profiles, config).winner;
    } catch (const UndeterminableError&) {
        trial.detection_after.clear();
    }
    return trial;
}

struct NoiseSummary {
    NoiseKind kind = NoiseKind::VowelDeletion;
    double rate = 0.0;
    int trials = 0;
    double mean_delta = 0.0;
    double std_delta = 0.0;
    double fraction_negative = 0.0;
    double flip_rate = 0.0;
    std::int64_t norm_before = 0;
};

// Runs `trials` independently seeded applications of op (trial t uses
// splitmix64(op.seed + t)) and aggregates integer deltas, so the summary is
// identical for any thread count.
inline NoiseSummary measure_degradation(std::string_view text, const ProfileSet& profiles,
                                        const std::string& language_id, const NoiseOp& op,
                                        int trials, const DetectorConfig& config = {},
                                        unsigned threads = 1) {
    op.validate();
    if (trials < 1) throw Error("measure_degradation: trials must be >= 1");
    if (!profiles.profiles.count(language_id))
        throw Error("measure_degradation: unknown language '" + language_id + "'");

    const std::int64_t norm_before = top10_frequency_norm(text);
    const std::string detection_before = detect(text, profiles, config).winner;

    struct Partial {
        std::int64_t sum = 0;
        std::int64_t sum_sq = 0;
        std::int64_t negative = 0;
        std::int64_t flips = 0;
    };

    auto run_range = [&](int begin, int end, Partial& partial) {
        for (int t = begin; t < end; ++t) {
            NoiseOp trial_op = op;
            trial_op.seed = detail::splitmix64(op.seed + static_cast<std::uint64_t>(t));
            const std::string noisy = apply_noise(text, trial_op);
            const std::int64_t norm_after = top10_frequency_norm(noisy);
            const std::int64_t delta = norm_after - norm_before;
            partial.sum += delta;
            partial.sum_sq += delta * delta;
            if (delta < 0) ++partial.negative;
            std::string detection_after;
            try {
                detection_after = detect(noisy, profiles, config).winner;
            } catch (const UndeterminableError&) {
            }
            if (detection_after != detection_before) ++partial.flips;
        }
    };

    const unsigned worker_count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    std::vector<Partial> partials(worker_count);
    if (worker_count == 1) {
        run_range(0, trials, partials[0]);
    } else {
        std::vector<std::thread> workers;
        const int chunk = (trials + static_cast<int>(worker_count) - 1) / static_cast<int>(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            const int begin = static_cast<int>(w) * chunk;
            const int end = std::min(trials, begin + chunk);
            workers.emplace_back([&, begin, end, w] { run_range(begin, end, partials[w]); });
        }
        for (auto& worker : workers) worker.join();
    }

    Partial merged;
    for (const Partial& partial : partials) {
        merged.sum += partial.sum;
        merged.sum_sq += partial.sum_sq;
        merged.negative += partial.negative;
        merged.flips += partial.flips;
    }

    NoiseSummary summary;
    summary.kind = op.kind;
    summary.rate = op.rate;
    summary.trials = trials;
    summary.norm_before = norm_before;
    summary.mean_delta = static_cast<double>(merged.sum) / trials;
    if (trials > 1) {
        const double variance =
            (static_cast<double>(merged.sum_sq) -
             static_cast<double>(merged.sum) * static_cast<double>(merged.sum) / trials) /
            (trials - 1);
        summary.std_delta = std::sqrt(std::max(variance, 0.0));
    }
    summary.fraction_negative = static_cast<double>(merged.negative) / trials;
    summary.flip_rate = static_cast<double>(merged.flips) / trials;
    return summary;
}

// CSV row: op,rate,trials,mean_delta,std,fraction_negative,flip_rate
inline std::string noise_summary_csv_header() {
    return "op,rate,trials,mean_delta,std,fraction_negative,flip_rate";
}

inline std::string noise_summary_csv_row(const NoiseSummary& summary) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%.4f,%d,%.6f,%.6f,%.6f,%.6f",
                  std::string(noise_kind_name(summary.kind)).c_str(), summary.rate, summary.trials,
                  summary.mean_delta, summary.std_delta, summary.fraction_negative,
                  summary.flip_rate);
    return buf;
}

}  // namespace langid
