// langid: statistical language identification over character frequency,
// bigram and diacritic profiles.
//
// Subcommands: detect, build-profile, eval, sweep-m, noise.
// Exit codes: 0 success, 1 environment/config error, 2 undeterminable input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "langid/langid.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitUndeterminable = 2;

std::string default_profiles_path() {
    if (const char* env = std::getenv("LANGID_PROFILES")) return env;
    return "data/profiles/profiles.json";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw langid::IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string resolve_input_text(const std::string& text, const std::string& file) {
    if (!file.empty()) return read_file(file);
    return text;
}

json breakdown_to_json(const langid::ScoreBreakdown& breakdown) {
    json j;
    j["language_id"] = breakdown.language_id;
    j["x"] = breakdown.x;
    j["f"] = breakdown.f;
    j["monogram_total"] = breakdown.monogram_total;
    j["bigram_total"] = breakdown.bigram_total;
    j["p"] = breakdown.p;
    j["k"] = breakdown.k;
    j["bonus"] = breakdown.bonus;
    j["total"] = breakdown.total;
    return j;
}

json detection_to_json(const langid::DetectionResult& result) {
    json j;
    j["winner"] = result.winner;
    j["margin"] = result.margin;
    j["tie"] = result.tie;
    j["low_confidence"] = result.low_confidence;
    j["text_length_chars"] = result.text_length_chars;
    j["scores"] = json::array();
    for (const auto& breakdown : result.scores) j["scores"].push_back(breakdown_to_json(breakdown));
    return j;
}

void print_detection_human(const langid::DetectionResult& result, std::ostream& out) {
    out << "winner: " << result.winner << "  (margin " << result.margin;
    if (result.tie) out << ", tie";
    if (result.low_confidence) out << ", low confidence";
    out << ")\n";
    out << "language  monogram  bigram  bonus    p      total\n";
    for (const auto& s : result.scores) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-9s %8lld %7lld %6lld  %5.2f%% %8lld\n",
                      s.language_id.c_str(), static_cast<long long>(s.monogram_total),
                      static_cast<long long>(s.bigram_total), static_cast<long long>(s.bonus),
                      100.0 * s.p, static_cast<long long>(s.total));
        out << line;
    }
}

std::set<langid::CodePoint> load_diacritics_file(const fs::path& path) {
    const std::string content = read_file(path);
    std::set<langid::CodePoint> out;
    for (langid::CodePoint cp : langid::utf8_decode(content)) {
        if (langid::is_letter(cp)) out.insert(langid::to_lower(cp));
    }
    return out;
}

json eval_report_to_json(const langid::EvalReport& report) {
    json j;
    j["cells"] = json::array();
    for (const auto& [key, cell] : report.cells) {
        const auto& [dataset, method, bucket] = key;
        json row;
        row["dataset"] = dataset;
        row["method"] = method;
        row["bucket"] = bucket;
        row["n"] = cell.n;
        row["correct"] = cell.correct;
        row["accuracy"] = cell.accuracy;
        j["cells"].push_back(row);
    }
    j["confusion"] = json::array();
    for (const auto& [key, count] : report.confusion) {
        const auto& [method, truth, predicted] = key;
        json row;
        row["method"] = method;
        row["true"] = truth;
        row["predicted"] = predicted;
        row["count"] = count;
        j["confusion"].push_back(row);
    }
    j["undeterminable"] = json::object();
    for (const auto& [method, count] : report.undeterminable)
        j["undeterminable"][std::to_string(method)] = count;
    j["runtime_ms_per_kb"] = report.runtime_ms_per_kb;
    return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw langid::IoError("cannot write " + path.string());
    out << content;
}

struct CommonOptions {
    std::string profiles_path = default_profiles_path();
    std::string output = "human";
    int m = 10;
    int method = 2;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--profiles", common.profiles_path, "profile set JSON file")
        ->envname("LANGID_PROFILES");
    cmd->add_option("--output", common.output, "output format")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    cmd->add_option("-m,--m", common.m, "top-character count")->check(CLI::Range(1, 25));
    cmd->add_option("--method", common.method, "scoring method: 1 (no bigrams) or 2 (full)")
        ->check(CLI::IsMember({1, 2}));
}

langid::DetectorConfig make_config(const CommonOptions& common) {
    langid::DetectorConfig config = langid::config_for_method(common.method);
    config.m = common.m;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical language identifier"};
    app.require_subcommand(1);

    // --- detect ---
    CommonOptions detect_common;
    std::string detect_text;
    std::string detect_file;
    auto* cmd_detect = app.add_subcommand("detect", "identify the language of a text");
    add_common(cmd_detect, detect_common);
    cmd_detect->add_option("--text", detect_text, "input text");
    cmd_detect->add_option("--file", detect_file, "input file (UTF-8)");

    // --- build-profile ---
    CommonOptions build_common;
    std::string build_corpus;
    std::string build_language;
    std::string build_diacritics_file;
    auto* cmd_build = app.add_subcommand("build-profile", "build a language profile from a corpus");
    add_common(cmd_build, build_common);
    cmd_build->add_option("--corpus", build_corpus, "directory of UTF-8 corpus files")->required();
    cmd_build->add_option("--language", build_language, "language id (e.g. ro)")->required();
    cmd_build->add_option("--diacritics", build_diacritics_file,
                          "file listing the language's diacritic letters");

    // --- eval ---
    CommonOptions eval_common;
    std::string eval_manifest;
    std::string eval_root;
    std::string eval_dataset_id;
    std::string eval_methods = "1,2";
    std::string eval_report_csv;
    std::string eval_confusion_csv;
    std::vector<std::size_t> eval_buckets = {150};
    auto* cmd_eval = app.add_subcommand("eval", "evaluate accuracy over a labeled dataset");
    add_common(cmd_eval, eval_common);
    cmd_eval->add_option("--manifest", eval_manifest, "dataset manifest (path\\tlanguage\\tmode)")
        ->required();
    cmd_eval->add_option("--root", eval_root, "dataset root (default: manifest directory)");
    cmd_eval->add_option("--dataset-id", eval_dataset_id, "dataset id (default: manifest stem)");
    cmd_eval->add_option("--methods", eval_methods, "comma-separated methods to run");
    cmd_eval->add_option("--report-csv", eval_report_csv, "write accuracy cells CSV here");
    cmd_eval->add_option("--confusion-csv", eval_confusion_csv,
                         "write per-method confusion CSVs here (suffix _mN.csv)");
    cmd_eval->add_option("--buckets", eval_buckets, "length bucket boundaries");

    // --- sweep-m ---
    CommonOptions sweep_common;
    std::string sweep_manifest;
    std::string sweep_root;
    std::string sweep_csv;
    int sweep_from = 2;
    int sweep_to = 20;
    auto* cmd_sweep = app.add_subcommand("sweep-m", "accuracy sweep over the top-m cutoff");
    add_common(cmd_sweep, sweep_common);
    cmd_sweep->add_option("--manifest", sweep_manifest, "dataset manifest")->required();
    cmd_sweep->add_option("--root", sweep_root, "dataset root (default: manifest directory)");
    cmd_sweep->add_option("--from", sweep_from, "lowest m");
    cmd_sweep->add_option("--to", sweep_to, "highest m");
    cmd_sweep->add_option("--csv", sweep_csv, "write m,accuracy CSV here");

    // --- noise ---
    CommonOptions noise_common;
    std::string noise_op = "vowel-deletion";
    std::string noise_text;
    std::string noise_file;
    std::string noise_language;
    std::string noise_csv;
    double noise_rate = 0.3;
    int noise_trials = 1000;
    std::uint64_t noise_seed = 0;
    unsigned noise_threads = 1;
    auto* cmd_noise = app.add_subcommand("noise", "measure score degradation under noise");
    add_common(cmd_noise, noise_common);
    cmd_noise->add_option("--op", noise_op, "noise operation")
        ->check(CLI::IsMember({"vowel-deletion", "vowel-substitution", "symbol-substitution"}));
    cmd_noise->add_option("--rate", noise_rate, "fraction of eligible positions")
        ->check(CLI::Range(0.0, 1.0));
    cmd_noise->add_option("--trials", noise_trials, "number of seeded trials")
        ->check(CLI::PositiveNumber);
    cmd_noise->add_option("--seed", noise_seed, "base RNG seed")->required();
    cmd_noise->add_option("--text", noise_text, "input text");
    cmd_noise->add_option("--file", noise_file, "input file (UTF-8)");
    cmd_noise->add_option("--language", noise_language, "language whose profile anchors the score")
        ->required();
    cmd_noise->add_option("--csv", noise_csv, "write summary CSV here");
    cmd_noise->add_option("--threads", noise_threads, "worker threads for trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_detect->parsed()) {
            const langid::ProfileSet profiles = langid::load_profiles(detect_common.profiles_path);
            const std::string text = resolve_input_text(detect_text, detect_file);
            langid::DetectionResult result;
            try {
                result = langid::detect(text, profiles, make_config(detect_common));
            } catch (const langid::UndeterminableError& e) {
                std::cerr << "undeterminable: " << e.what() << "\n";
                return kExitUndeterminable;
            }
            if (detect_common.output == "json") {
                std::cout << detection_to_json(result).dump(2) << "\n";
            } else if (detect_common.output == "csv") {
                std::cout << "language,monogram,bigram,bonus,p,total\n";
                for (const auto& s : result.scores) {
                    char line[160];
                    std::snprintf(line, sizeof(line), "%s,%lld,%lld,%lld,%.6f,%lld\n",
                                  s.language_id.c_str(), static_cast<long long>(s.monogram_total),
                                  static_cast<long long>(s.bigram_total),
                                  static_cast<long long>(s.bonus), s.p,
                                  static_cast<long long>(s.total));
                    std::cout << line;
                }
            } else {
                print_detection_human(result, std::cout);
            }
            return kExitOk;
        }

        if (cmd_build->parsed()) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(build_corpus))
                if (entry.is_regular_file()) files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            std::vector<std::string> texts;
            for (const auto& file : files) texts.push_back(read_file(file));

            std::set<langid::CodePoint> diacritics =
                build_diacritics_file.empty() ? langid::default_diacritics(build_language)
                                              : load_diacritics_file(build_diacritics_file);
            const langid::LanguageProfile profile =
                langid::build_profile(texts, build_language, std::move(diacritics),
                                      fs::path(build_corpus).filename().string());

            langid::ProfileSet set;
            if (fs::exists(build_common.profiles_path))
                set = langid::load_profiles(build_common.profiles_path);
            set.profiles[profile.language_id] = profile;
            fs::create_directories(fs::path(build_common.profiles_path).parent_path());
            langid::save_profiles(set, build_common.profiles_path);

            if (build_common.output == "json") {
                json j = langid::to_json(profile);
                j["profiles_path"] = build_common.profiles_path;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "built profile '" << profile.language_id << "' ("
                          << profile.source_meta << ") -> " << build_common.profiles_path << "\n";
            }
            return kExitOk;
        }

        if (cmd_eval->parsed()) {
            const langid::ProfileSet profiles = langid::load_profiles(eval_common.profiles_path);
            const fs::path manifest(eval_manifest);
            const fs::path root = eval_root.empty() ? manifest.parent_path() : fs::path(eval_root);
            const langid::IngestResult ingest =
                langid::ingest_dataset(root, manifest, eval_dataset_id);
            for (const auto& error : ingest.errors)
                std::cerr << "ingest: " << error.path << ": " << error.message << "\n";

            std::vector<int> methods;
            std::stringstream ss(eval_methods);
            std::string token;
            while (std::getline(ss, token, ',')) methods.push_back(std::stoi(token));

            langid::DetectorConfig base = langid::DetectorConfig{};
            base.m = eval_common.m;
            const langid::EvalReport report =
                langid::evaluate(ingest.samples, profiles, methods, eval_buckets, base);

            if (!eval_report_csv.empty()) {
                std::ostringstream csv;
                langid::write_report_csv(report, csv);
                write_text_file(eval_report_csv, csv.str());
            }
            if (!eval_confusion_csv.empty()) {
                for (int method : methods) {
                    std::ostringstream csv;
                    langid::write_confusion_csv(report, method, csv);
                    fs::path path(eval_confusion_csv);
                    const fs::path file = path.parent_path() /
                                          (path.stem().string() + "_m" + std::to_string(method) +
                                           path.extension().string());
                    write_text_file(file, csv.str());
                }
            }

            if (eval_common.output == "json") {
                std::cout << eval_report_to_json(report).dump(2) << "\n";
            } else if (eval_common.output == "csv") {
                langid::write_report_csv(report, std::cout);
            } else {
                if (methods.size() >= 2)
                    std::cout << langid::method_comparison_report(report);
                else
                    langid::write_report_csv(report, std::cout);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.4f", report.runtime_ms_per_kb);
                std::cout << "runtime: " << buf << " ms/KB\n";
            }
            return kExitOk;
        }

        if (cmd_sweep->parsed()) {
            const langid::ProfileSet profiles = langid::load_profiles(sweep_common.profiles_path);
            const fs::path manifest(sweep_manifest);
            const fs::path root = sweep_root.empty() ? manifest.parent_path() : fs::path(sweep_root);
            const langid::IngestResult ingest = langid::ingest_dataset(root, manifest);
            for (const auto& error : ingest.errors)
                std::cerr << "ingest: " << error.path << ": " << error.message << "\n";

            const langid::MSweepResult sweep =
                langid::sweep_m(ingest.samples, profiles, sweep_from, sweep_to);
            for (const auto& warning : sweep.warnings) std::cerr << "warning: " << warning << "\n";

            std::ostringstream csv;
            langid::write_sweep_csv(sweep, csv);
            if (!sweep_csv.empty()) write_text_file(sweep_csv, csv.str());

            if (sweep_common.output == "json") {
                json j;
                j["points"] = json::array();
                for (const auto& point : sweep.points)
                    j["points"].push_back({{"m", point.m}, {"accuracy", point.accuracy}});
                j["warnings"] = sweep.warnings;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << csv.str();
            }
            return kExitOk;
        }

        if (cmd_noise->parsed()) {
            const langid::ProfileSet profiles = langid::load_profiles(noise_common.profiles_path);
            const std::string text = resolve_input_text(noise_text, noise_file);
            auto it = profiles.profiles.find(noise_language);
            if (it == profiles.profiles.end())
                throw langid::Error("unknown language '" + noise_language + "'");

            langid::NoiseOp op;
            op.kind = langid::noise_kind_from_name(noise_op);
            op.rate = noise_rate;
            op.seed = noise_seed;
            op.vowel_set = langid::vowel_set_for(it->second);

            const langid::NoiseSummary summary = langid::measure_degradation(
                text, profiles, noise_language, op, noise_trials, make_config(noise_common),
                noise_threads);

            const std::string csv =
                langid::noise_summary_csv_header() + "\n" + langid::noise_summary_csv_row(summary) + "\n";
            if (!noise_csv.empty()) write_text_file(noise_csv, csv);

            if (noise_common.output == "json") {
                json j;
                j["op"] = std::string(langid::noise_kind_name(summary.kind));
                j["rate"] = summary.rate;
                j["trials"] = summary.trials;
                j["mean_delta"] = summary.mean_delta;
                j["std"] = summary.std_delta;
                j["fraction_negative"] = summary.fraction_negative;
                j["flip_rate"] = summary.flip_rate;
                j["norm_before"] = summary.norm_before;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << csv;
            }
            return kExitOk;
        }
    } catch (const langid::UndeterminableError& e) {
        std::cerr << "undeterminable: " << e.what() << "\n";
        return kExitUndeterminable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
