#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace langid;

namespace {

LanguageProfile tiny_profile(std::string id, std::u32string ranked_chars,
                             std::vector<Bigram> ranked_bigrams = {},
                             std::set<CodePoint> diacritics = {}) {
    LanguageProfile profile;
    profile.language_id = std::move(id);
    profile.ranked_chars.assign(ranked_chars.begin(), ranked_chars.end());
    profile.ranked_bigrams = std::move(ranked_bigrams);
    profile.diacritics = std::move(diacritics);
    return profile;
}

TextStats stats_for(const std::string& text, int m = 10) {
    return compute_stats(normalize(text), m);
}

// Stats with an exact diacritic proportion: `marked` of `total` letters are ă.
TextStats proportion_stats(int marked, int total) {
    std::string text;
    for (int i = 0; i < marked; ++i) text += "ă";
    for (int i = 0; i < total - marked; ++i) text += "x";
    return stats_for(text);
}

}  // namespace

TEST(MonogramScore, DirectTableLookup) {
    const LanguageProfile profile = tiny_profile("xx", U"eta");
    const TextStats stats = stats_for("eee tt a");  // top chars e, t, a
    const auto [x, total] = monogram_score(stats, profile, 10);
    ASSERT_EQ(x.size(), 10u);
    EXPECT_EQ(x[0], 25);
    EXPECT_EQ(x[1], 24);
    EXPECT_EQ(x[2], 23);
    for (std::size_t i = 3; i < x.size(); ++i) EXPECT_EQ(x[i], 0);
    EXPECT_EQ(total, 72);
}

TEST(MonogramScore, AbsentCharactersScoreZero) {
    const LanguageProfile profile = tiny_profile("xx", U"xyz");
    const auto [x, total] = monogram_score(stats_for("aa bb cc"), profile, 10);
    EXPECT_EQ(total, 0);
}

TEST(MonogramScore, TruncatesToM) {
    const LanguageProfile profile = tiny_profile("xx", U"abcde");
    const auto [x, total] = monogram_score(stats_for("aaa bb c d e"), profile, 2);
    ASSERT_EQ(x.size(), 2u);
    EXPECT_EQ(total, 25 + 24);
}

TEST(BigramScore, CountsTimesScore) {
    const LanguageProfile profile = tiny_profile("xx", U"ab", {{U'a', U'b'}});
    const auto [f, total] = bigram_score(stats_for("ab ab ab"), profile);
    ASSERT_EQ(f.size(), 10u);
    EXPECT_EQ(f[9], 3);  // score 10 slot
    EXPECT_EQ(total, 30);
}

TEST(BigramScore, NoRecognizedBigrams) {
    const LanguageProfile profile = tiny_profile("xx", U"ab", {{U'a', U'b'}});
    const auto [f, total] = bigram_score(stats_for("ba ba"), profile);
    EXPECT_EQ(total, 0);
    for (auto count : f) EXPECT_EQ(count, 0);
}

TEST(DiacriticBonus, ThresholdsFollowTheBonusRule) {
    const LanguageProfile profile = tiny_profile("ro", U"a", {}, {U'ă'});
    const DetectorConfig config;

    auto bonus_for = [&](int marked, int total) {
        return diacritic_bonus(proportion_stats(marked, total), profile, config);
    };
    EXPECT_EQ(bonus_for(12, 100).bonus, 200);  // p = 0.12
    EXPECT_EQ(bonus_for(7, 100).bonus, 100);   // p = 0.07
    EXPECT_EQ(bonus_for(5, 100).bonus, 0);     // p = 0.05, strict inequality
    EXPECT_EQ(bonus_for(10, 100).bonus, 100);  // p = 0.10 still the x1 band
    EXPECT_EQ(bonus_for(0, 100).bonus, 0);
    EXPECT_DOUBLE_EQ(bonus_for(12, 100).p, 0.12);
    EXPECT_EQ(bonus_for(12, 100).k, 2);
}

TEST(DiacriticBonus, EmptyTextHasZeroProportion) {
    const LanguageProfile profile = tiny_profile("ro", U"a", {}, {U'ă'});
    const DiacriticBonus db = diacritic_bonus(stats_for(""), profile);
    EXPECT_DOUBLE_EQ(db.p, 0.0);
    EXPECT_EQ(db.bonus, 0);
}

TEST(BonusMultiplier, TableDriven) {
    const DetectorConfig config;
    const std::vector<std::pair<double, int>> table = {
        {0.0, 0}, {0.04, 0}, {0.05, 0}, {0.050001, 1}, {0.07, 1},
        {0.10, 1}, {0.100001, 2}, {0.12, 2}, {1.0, 2}};
    for (const auto& [p, k] : table) EXPECT_EQ(bonus_multiplier(p, config), k) << "p=" << p;
}

TEST(CombinedScore, ComposesTheThreeTerms) {
    // Monogram 72 (top chars e,t,a at ranks 1..3), bigram 30 (3 hits of the
    // top bigram), p = 0.12 -> bonus 200, total 302.
    LanguageProfile profile = tiny_profile("xx", U"etaă", {{U'e', U't'}}, {U'ă'});
    // Single-letter runs as separate words, so the only 'et' bigrams are the
    // three appended ones. 12 of 106 letters are ă, so p lands above 10%.
    std::string crafted;
    for (int i = 0; i < 40; ++i) crafted += "e";
    crafted += " ";
    for (int i = 0; i < 30; ++i) crafted += "t";
    crafted += " ";
    for (int i = 0; i < 18; ++i) crafted += "a";
    crafted += " ";
    for (int i = 0; i < 12; ++i) crafted += "ă";
    crafted += " et et et";
    const TextStats stats = stats_for(crafted);

    const ScoreBreakdown breakdown = combined_score(stats, profile, DetectorConfig::method2());
    EXPECT_EQ(breakdown.monogram_total, 25 + 24 + 23 + 22);  // e,t,a,ă all ranked
    EXPECT_EQ(breakdown.bigram_total, 30);
    EXPECT_EQ(breakdown.k, 2);
    EXPECT_EQ(breakdown.bonus, 200);
    EXPECT_EQ(breakdown.total, breakdown.monogram_total + 30 + 200);
}

TEST(CombinedScore, FlagsOffLeaveMonogramOnly) {
    const LanguageProfile profile = tiny_profile("xx", U"eta", {{U'e', U't'}}, {U'e'});
    DetectorConfig config;
    config.enable_bigrams = false;
    config.enable_diacritic_bonus = false;
    const ScoreBreakdown breakdown = combined_score(stats_for("et et et"), profile, config);
    EXPECT_EQ(breakdown.bigram_total, 0);
    EXPECT_EQ(breakdown.bonus, 0);
    EXPECT_EQ(breakdown.k, 0);
    EXPECT_EQ(breakdown.total, breakdown.monogram_total);
    EXPECT_GT(breakdown.p, 0.0);  // proportion still reported
}

TEST(NormValue, ZeroVectorHasZeroNorm) {
    const std::vector<double> zero(10, 0.0);
    EXPECT_DOUBLE_EQ(norm_value(zero, zero), 0.0);
}

TEST(NormValue, WeighsBigramSlotsByIndex) {
    const std::vector<double> x = {1.0, -2.0};
    const std::vector<double> f = {3.0, -4.0};
    // |1| + |-2| + |3*1| + |-4*2| = 14
    EXPECT_DOUBLE_EQ(norm_value(x, f), 14.0);
}

TEST(NormValue, LengthMismatchIsAnError) {
    const std::vector<double> x = {1.0};
    const std::vector<double> f = {1.0, 2.0};
    EXPECT_THROW(norm_value(x, f), Error);
}

TEST(NormValue, AxiomsOnRandomVectors) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> value(-50.0, 50.0);
    std::uniform_real_distribution<double> alpha_dist(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<double> x(n), f(n), y(n), g(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = value(rng);
            f[j] = value(rng);
            y[j] = value(rng);
            g[j] = value(rng);
        }
        const double norm_xf = norm_value(x, f);
        EXPECT_GE(norm_xf, 0.0);

        const double alpha = alpha_dist(rng);
        std::vector<double> ax(n), af(n), xy(n), fg(n);
        for (std::size_t j = 0; j < n; ++j) {
            ax[j] = alpha * x[j];
            af[j] = alpha * f[j];
            xy[j] = x[j] + y[j];
            fg[j] = f[j] + g[j];
        }
        EXPECT_NEAR(norm_value(ax, af), std::abs(alpha) * norm_xf,
                    1e-9 * std::max(1.0, std::abs(alpha) * norm_xf));
        EXPECT_LE(norm_value(xy, fg),
                  norm_xf + norm_value(y, g) + 1e-9 * std::max(1.0, norm_xf + norm_value(y, g)));
    }
}

TEST(NormValue, MatchesIntegerScoreComposition) {
    // The integer monogram/bigram totals are exactly the norm of (X, F).
    const ProfileSet& profiles = testutil::bundled_profiles();
    const std::string text = testutil::slurp(testutil::data_path("eval/ro/s03.txt"));
    const TextStats stats = compute_stats(normalize(text), 10);
    for (const auto& [id, profile] : profiles.profiles) {
        const ScoreBreakdown breakdown = combined_score(stats, profile, DetectorConfig::method2());
        std::vector<double> x(breakdown.x.begin(), breakdown.x.end());
        std::vector<double> f(breakdown.f.begin(), breakdown.f.end());
        x.resize(10, 0.0);
        EXPECT_DOUBLE_EQ(norm_value(x, f),
                         static_cast<double>(breakdown.monogram_total + breakdown.bigram_total));
    }
}

TEST(MonogramScore, RomanianSampleOutranksOtherProfiles) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    const TextStats stats = compute_stats(
        normalize(testutil::slurp(testutil::data_path("eval/ro/s09.txt"))), 10);
    const auto ro = monogram_score(stats, profiles.profiles.at("ro"), 10).second;
    EXPECT_GT(ro, monogram_score(stats, profiles.profiles.at("de"), 10).second);
    EXPECT_GT(ro, monogram_score(stats, profiles.profiles.at("en"), 10).second);
}

TEST(Detect, BundledSamplesWinTheirLanguage) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    EXPECT_EQ(detect(testutil::slurp(testutil::data_path("eval/ro/s08.txt")), profiles).winner, "ro");
    EXPECT_EQ(detect(testutil::slurp(testutil::data_path("eval/de/s08.txt")), profiles).winner, "de");
    EXPECT_EQ(detect(testutil::slurp(testutil::data_path("eval/tr/s01.txt")), profiles).winner, "tr");
    EXPECT_EQ(detect(testutil::slurp(testutil::data_path("eval/hu/s01.txt")), profiles).winner, "hu");
}

TEST(Detect, EmptyOrLetterFreeTextIsUndeterminable) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    EXPECT_THROW(detect("", profiles), UndeterminableError);
    EXPECT_THROW(detect("12345 !?!", profiles), UndeterminableError);
}

TEST(Detect, RequiresTwoProfiles) {
    ProfileSet single;
    single.profiles["en"] = testutil::bundled_profiles().profiles.at("en");
    EXPECT_THROW(detect("hello there", single), Error);
}

TEST(Detect, ScoresSortedAndMarginConsistent) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    const DetectionResult result =
        detect(testutil::slurp(testutil::data_path("eval/ro/s01.txt")), profiles);
    ASSERT_EQ(result.scores.size(), 6u);
    for (std::size_t i = 1; i < result.scores.size(); ++i)
        EXPECT_GE(result.scores[i - 1].total, result.scores[i].total);
    EXPECT_EQ(result.winner, result.scores[0].language_id);
    EXPECT_EQ(result.margin, result.scores[0].total - result.scores[1].total);
    EXPECT_FALSE(result.tie);
}

TEST(Detect, TieReportsLexicallySmallerLanguage) {
    LanguageProfile a = tiny_profile("aa", U"etn");
    LanguageProfile b = a;
    b.language_id = "bb";
    ProfileSet set;
    set.profiles["bb"] = b;
    set.profiles["aa"] = a;
    const DetectionResult result = detect("ten net tent", set);
    EXPECT_TRUE(result.tie);
    EXPECT_EQ(result.winner, "aa");
    EXPECT_EQ(result.margin, 0);
    EXPECT_TRUE(result.low_confidence);
}

TEST(Detect, WinnerInvariantUnderProfileRegistrationOrder) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    std::vector<std::string> ids;
    for (const auto& [id, profile] : profiles.profiles) ids.push_back(id);
    const std::string text = testutil::slurp(testutil::data_path("eval/hu/s03.txt"));
    const std::string baseline = detect(text, profiles).winner;

    std::mt19937_64 rng(23);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(ids.begin(), ids.end(), rng);
        ProfileSet shuffled;
        for (const std::string& id : ids) shuffled.profiles[id] = profiles.profiles.at(id);
        EXPECT_EQ(detect(text, shuffled).winner, baseline);
    }
}

TEST(Detect, Method2TotalsDominateMethod1) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    for (const std::string rel : {"eval/ro/s02.txt", "eval/de/s03.txt", "eval/en/s04.txt",
                                  "eval/nl/s05.txt", "eval/tr/s06.txt", "eval/hu/s07.txt"}) {
        const std::string text = testutil::slurp(testutil::data_path(rel));
        const TextStats stats =
            compute_stats(normalize(text), 10, profiles.diacritic_inventories());
        for (const auto& [id, profile] : profiles.profiles) {
            const auto m1 = combined_score(stats, profile, DetectorConfig::method1());
            const auto m2 = combined_score(stats, profile, DetectorConfig::method2());
            EXPECT_GE(m2.total, m1.total) << rel << " " << id;
        }
    }
}

TEST(Detect, Method1WinnerInvariantUnderTextDuplication) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    const DetectorConfig config = DetectorConfig::method1();
    for (const std::string rel :
         {"eval/ro/s01.txt", "eval/de/s01.txt", "eval/tr/s03.txt", "eval/hu/s05.txt"}) {
        const std::string text = testutil::slurp(testutil::data_path(rel));
        const DetectionResult once = detect(text, profiles, config);
        const DetectionResult twice = detect(text + text, profiles, config);
        EXPECT_EQ(once.winner, twice.winner) << rel;
        // X is rank-based, so the winning breakdown is unchanged.
        EXPECT_EQ(once.scores[0].monogram_total, twice.scores[0].monogram_total);
    }
}

// Letter frequency alone leaves English vs Dutch a close call; the bigram
// term settles it.
TEST(Detect, BigramsSeparateEnglishFromDutch) {
    const ProfileSet& all = testutil::bundled_profiles();
    ProfileSet pair;
    pair.profiles["en"] = all.profiles.at("en");
    pair.profiles["nl"] = all.profiles.at("nl");
    const std::string text =
        testutil::slurp(testutil::data_path("corpus/en/little_red_riding_hood.txt"));

    const DetectionResult m1 = detect(text, pair, DetectorConfig::method1());
    EXPECT_TRUE(m1.low_confidence);

    const DetectionResult m2 = detect(text, pair, DetectorConfig::method2());
    EXPECT_EQ(m2.winner, "en");
    EXPECT_FALSE(m2.low_confidence);
    EXPECT_GT(m2.margin, 100);
}

TEST(Detect, ConfigValidation) {
    const ProfileSet& profiles = testutil::bundled_profiles();
    DetectorConfig config;
    config.m = 0;
    EXPECT_THROW(detect("hello", profiles, config), Error);
    config.m = 26;
    EXPECT_THROW(detect("hello", profiles, config), Error);
    config = DetectorConfig{};
    config.threshold_low = 0.2;
    config.threshold_high = 0.1;
    EXPECT_THROW(detect("hello", profiles, config), Error);
}

TEST(OracleEquivalence, RandomInstancesMatchExactly) {
    oracle::InstanceGenerator gen(99);
    for (int i = 0; i < 60; ++i) {
        const oracle::Instance instance = gen.next_instance();
        const LanguageProfile profile = gen.next_profile();
        const DetectorConfig config = gen.next_config();

        NormalizedText norm;
        norm.chars = instance.chars;
        norm.word_boundaries = instance.boundaries;
        const TextStats stats = compute_stats(norm, config.m);
        const ScoreBreakdown breakdown = combined_score(stats, profile, config);
        const oracle::Total expected = oracle::combined_total(instance, profile, config);

        ASSERT_EQ(breakdown.monogram_total, expected.monogram) << "instance " << i;
        ASSERT_EQ(breakdown.bigram_total, expected.bigram) << "instance " << i;
        ASSERT_EQ(breakdown.bonus, expected.bonus) << "instance " << i;
        ASSERT_EQ(breakdown.total, expected.total) << "instance " << i;
    }
}
