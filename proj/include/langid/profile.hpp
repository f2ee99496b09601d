#pragma once

// Per-language reference profiles: the 25 highest-ranked characters (scored
// 25 down to 1), the 10 highest-ranked bigrams (scored 10 down to 1) and the
// language's diacritic inventory, built from corpora and persisted as JSON.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "langid/textstats.hpp"

namespace langid {

inline constexpr int kMaxRankedChars = 25;
inline constexpr int kMaxRankedBigrams = 10;
inline constexpr int kProfileFormatVersion = 1;

struct LanguageProfile {
    std::string language_id;
    std::vector<CodePoint> ranked_chars;  // index 0 = most frequent
    std::vector<Bigram> ranked_bigrams;   // index 0 = most frequent
    std::set<CodePoint> diacritics;
    std::string source_meta;

    // 25 for the most frequent char down to 26 - |ranked_chars|; 0 if absent.
    int char_score(CodePoint cp) const {
        for (std::size_t i = 0; i < ranked_chars.size(); ++i)
            if (ranked_chars[i] == cp) return kMaxRankedChars - static_cast<int>(i);
        return 0;
    }

    // 10 for the most frequent bigram down to 11 - |ranked_bigrams|; 0 if absent.
    int bigram_score(const Bigram& bg) const {
        for (std::size_t i = 0; i < ranked_bigrams.size(); ++i)
            if (ranked_bigrams[i] == bg) return kMaxRankedBigrams - static_cast<int>(i);
        return 0;
    }

    // The profile bigram holding score `score`, if any.
    const Bigram* bigram_with_score(int score) const {
        const int rank = kMaxRankedBigrams - score;  // 0-based index
        if (score < 1 || score > kMaxRankedBigrams) return nullptr;
        if (rank >= static_cast<int>(ranked_bigrams.size())) return nullptr;
        return &ranked_bigrams[static_cast<std::size_t>(rank)];
    }
};

struct ProfileSet {
    std::map<std::string, LanguageProfile> profiles;

    DiacriticInventories diacritic_inventories() const {
        DiacriticInventories out;
        for (const auto& [id, profile] : profiles) out.emplace(id, profile.diacritics);
        return out;
    }
};

// Inventories from the bundled languages. Turkish's dotted lowercase i is
// deliberately absent: it is not a single scalar in this scheme and plain
// 'i' occurs in every language anyway.
inline std::set<CodePoint> default_diacritics(std::string_view language_id) {
    if (language_id == "ro") return {0x0103, 0x00E2, 0x00EE, 0x015F, 0x0163, 0x0219, 0x021B};  // ă â î ş ţ ș ț
    if (language_id == "de") return {0x00E4, 0x00F6, 0x00FC, 0x00DF};                          // ä ö ü ß
    if (language_id == "hu")
        return {0x00E1, 0x00E9, 0x00ED, 0x00F3, 0x00F6, 0x0151, 0x00FA, 0x00FC, 0x0171};      // á é í ó ö ő ú ü ű
    if (language_id == "tr") return {0x00E7, 0x011F, 0x0131, 0x00F6, 0x015F, 0x00FC};          // ç ğ ı ö ş ü
    return {};
}

namespace detail {

inline std::string cp_to_utf8(CodePoint cp) {
    std::string s;
    utf8_append(s, cp);
    return s;
}

inline std::string bigram_to_utf8(const Bigram& bg) {
    std::string s;
    utf8_append(s, bg.first);
    utf8_append(s, bg.second);
    return s;
}

inline std::string format_percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

}  // namespace detail

// Aggregates counts over all corpus texts and ranks them. Order of the
// input texts does not matter. Texts with fewer than 25 distinct letters
// yield a shorter profile, flagged in source_meta.
inline LanguageProfile build_profile(std::span<const std::string> corpus_texts,
                                     std::string language_id, std::set<CodePoint> diacritics,
                                     std::string_view source_name = "corpus") {
    LanguageProfile profile;
    profile.language_id = std::move(language_id);
    profile.diacritics = std::move(diacritics);

    std::map<CodePoint, std::int64_t> char_counts;
    std::map<Bigram, std::int64_t> bigram_counts;
    std::int64_t letter_total = 0;
    std::int64_t diacritic_total = 0;

    for (const std::string& text : corpus_texts) {
        const NormalizedText norm = normalize(text);
        const TextStats stats = compute_stats(norm, kMaxRankedChars);
        for (const auto& [cp, count] : stats.dist.counts) char_counts[cp] += count;
        for (const auto& [bg, count] : stats.bigram_counts) bigram_counts[bg] += count;
        letter_total += stats.letter_total;
        for (CodePoint cp : profile.diacritics) {
            auto it = stats.dist.counts.find(cp);
            if (it != stats.dist.counts.end()) diacritic_total += it->second;
        }
    }
    if (corpus_texts.empty() || letter_total == 0)
        throw Error("build_profile: corpus for '" + profile.language_id + "' contains no letters");

    for (const auto& [cp, count] : detail::rank_by_count(char_counts, kMaxRankedChars))
        profile.ranked_chars.push_back(cp);
    for (const auto& [bg, count] : detail::rank_by_count(bigram_counts, kMaxRankedBigrams))
        profile.ranked_bigrams.push_back(bg);

    const double diacritic_pct =
        100.0 * static_cast<double>(diacritic_total) / static_cast<double>(letter_total);
    std::ostringstream meta;
    meta << source_name << "; files=" << corpus_texts.size() << "; letters=" << letter_total
         << "; diacritic_share=" << detail::format_percent(diacritic_pct) << "%";
    if (profile.ranked_chars.size() < kMaxRankedChars)
        meta << "; warning: only " << profile.ranked_chars.size() << " distinct letters";
    profile.source_meta = meta.str();
    return profile;
}

namespace detail {

inline void validate_profile(const LanguageProfile& profile, const std::string& field_prefix) {
    if (profile.language_id.empty())
        throw ValidationError(field_prefix + ".language_id", "must not be empty");
    if (profile.ranked_chars.size() > kMaxRankedChars)
        throw ValidationError(field_prefix + ".ranked_chars",
                              "exceeds " + std::to_string(kMaxRankedChars) + " entries");
    if (profile.ranked_bigrams.size() > kMaxRankedBigrams)
        throw ValidationError(field_prefix + ".ranked_bigrams",
                              "exceeds " + std::to_string(kMaxRankedBigrams) + " entries");
    std::set<CodePoint> seen_chars;
    for (CodePoint cp : profile.ranked_chars) {
        if (!is_letter(cp))
            throw ValidationError(field_prefix + ".ranked_chars",
                                  "'" + cp_to_utf8(cp) + "' is not a letter");
        if (!seen_chars.insert(cp).second)
            throw ValidationError(field_prefix + ".ranked_chars",
                                  "duplicate entry '" + cp_to_utf8(cp) + "'");
    }
    std::set<Bigram> seen_bigrams;
    for (const Bigram& bg : profile.ranked_bigrams) {
        if (!is_letter(bg.first) || !is_letter(bg.second))
            throw ValidationError(field_prefix + ".ranked_bigrams",
                                  "'" + bigram_to_utf8(bg) + "' is not a letter pair");
        if (!seen_bigrams.insert(bg).second)
            throw ValidationError(field_prefix + ".ranked_bigrams",
                                  "duplicate entry '" + bigram_to_utf8(bg) + "'");
    }
    for (CodePoint cp : profile.diacritics) {
        if (!is_letter(cp) || to_lower(cp) != cp)
            throw ValidationError(field_prefix + ".diacritics",
                                  "'" + cp_to_utf8(cp) + "' is not a lowercase letter");
    }
}

inline std::u32string decode_single_field(const std::string& raw, const std::string& field,
                                          std::size_t expected_scalars) {
    std::u32string cps;
    try {
        cps = utf8_decode(raw);
    } catch (const DecodeError& e) {
        throw ValidationError(field, e.what());
    }
    if (cps.size() != expected_scalars)
        throw ValidationError(field, "expected " + std::to_string(expected_scalars) +
                                         " scalar(s), got " + std::to_string(cps.size()));
    return cps;
}

}  // namespace detail

inline void validate(const ProfileSet& set) {
    std::size_t index = 0;
    for (const auto& [id, profile] : set.profiles) {
        const std::string prefix = "profiles[" + std::to_string(index) + "]";
        if (id != profile.language_id)
            throw ValidationError(prefix + ".language_id", "key/value mismatch");
        detail::validate_profile(profile, prefix);
        ++index;
    }
}

inline nlohmann::json to_json(const LanguageProfile& profile) {
    nlohmann::json j;
    j["language_id"] = profile.language_id;
    auto& chars = j["ranked_chars"] = nlohmann::json::array();
    for (CodePoint cp : profile.ranked_chars) chars.push_back(detail::cp_to_utf8(cp));
    auto& bigrams = j["ranked_bigrams"] = nlohmann::json::array();
    for (const Bigram& bg : profile.ranked_bigrams) bigrams.push_back(detail::bigram_to_utf8(bg));
    auto& marks = j["diacritics"] = nlohmann::json::array();
    for (CodePoint cp : profile.diacritics) marks.push_back(detail::cp_to_utf8(cp));
    j["source_meta"] = profile.source_meta;
    return j;
}

// Byte-deterministic: keys sorted, profiles ordered by language id, arrays
// ordered by rank. Written atomically (temp file + rename).
inline void save_profiles(const ProfileSet& set, const std::filesystem::path& path) {
    validate(set);
    nlohmann::json j;
    j["version"] = kProfileFormatVersion;
    auto& arr = j["profiles"] = nlohmann::json::array();
    for (const auto& [id, profile] : set.profiles) arr.push_back(to_json(profile));

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline ProfileSet parse_profiles(const std::string& content) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("profiles", std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw ValidationError("version", "missing or not an integer");
    if (j["version"].get<int>() != kProfileFormatVersion)
        throw ValidationError("version",
                              "unknown version " + std::to_string(j["version"].get<int>()));
    if (!j.contains("profiles") || !j["profiles"].is_array())
        throw ValidationError("profiles", "missing or not an array");

    ProfileSet set;
    std::size_t index = 0;
    for (const auto& entry : j["profiles"]) {
        const std::string prefix = "profiles[" + std::to_string(index) + "]";
        LanguageProfile profile;
        if (!entry.contains("language_id") || !entry["language_id"].is_string())
            throw ValidationError(prefix + ".language_id", "missing or not a string");
        profile.language_id = entry["language_id"].get<std::string>();
        try {
            for (const auto& c : entry.value("ranked_chars", nlohmann::json::array()))
                profile.ranked_chars.push_back(detail::decode_single_field(
                    c.get<std::string>(), prefix + ".ranked_chars", 1)[0]);
            for (const auto& b : entry.value("ranked_bigrams", nlohmann::json::array())) {
                const auto cps = detail::decode_single_field(b.get<std::string>(),
                                                             prefix + ".ranked_bigrams", 2);
                profile.ranked_bigrams.emplace_back(cps[0], cps[1]);
            }
            for (const auto& d : entry.value("diacritics", nlohmann::json::array()))
                profile.diacritics.insert(detail::decode_single_field(
                    d.get<std::string>(), prefix + ".diacritics", 1)[0]);
            profile.source_meta = entry.value("source_meta", std::string{});
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(prefix, std::string("malformed field: ") + e.what());
        }
        detail::validate_profile(profile, prefix);
        if (!set.profiles.emplace(profile.language_id, profile).second)
            throw ValidationError(prefix + ".language_id",
                                  "duplicate language '" + profile.language_id + "'");
        ++index;
    }
    return set;
}

inline ProfileSet load_profiles(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_profiles(buffer.str());
}

}  // namespace langid
