#pragma once

// Dataset ingestion and the evaluation harness: per-dataset accuracy split
// by scoring method and text-length bucket, confusion counts, the m-sweep,
// and the Method 1 vs Method 2 comparison table.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "langid/scoring.hpp"

namespace langid {

struct LabeledSample {
    std::string text;
    std::string true_language;
    std::string dataset_id;
    std::size_t length_chars = 0;
};

struct IngestError {
    std::string path;
    std::string message;
};

struct IngestResult {
    std::vector<LabeledSample> samples;
    std::vector<IngestError> errors;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && (s[begin] == ' ' || s[begin] == '\t' || s[begin] == '\r' || s[begin] == '\n'))
        ++begin;
    while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r' || s[end - 1] == '\n'))
        --end;
    return std::string(s.substr(begin, end - begin));
}

inline std::size_t scalar_count(const std::string& text) {
    return utf8_decode(text).size();
}

inline std::string format_fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

}  // namespace detail

// Manifest line format: <relative-path>\t<language-id>\t<mode: file|lines>.
// Blank lines and lines starting with '#' are skipped. Per-file problems are
// collected; the rest of the run continues.
inline IngestResult ingest_dataset(const std::filesystem::path& root,
                                   const std::filesystem::path& manifest,
                                   std::string dataset_id = {}) {
    if (dataset_id.empty()) dataset_id = manifest.stem().string();

    std::ifstream in(manifest);
    if (!in) throw IoError("cannot open manifest " + manifest.string());

    IngestResult result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = trimmed.find('\t', start);
            fields.push_back(trimmed.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 3) {
            result.errors.push_back({manifest.string() + ":" + std::to_string(line_no),
                                     "expected <path>\\t<language>\\t<mode>"});
            continue;
        }
        const std::string& rel_path = fields[0];
        const std::string& language = fields[1];
        const std::string& mode = fields[2];
        if (mode != "file" && mode != "lines") {
            result.errors.push_back({rel_path, "unknown mode '" + mode + "'"});
            continue;
        }

        const std::filesystem::path full = root / rel_path;
        std::ifstream file(full, std::ios::binary);
        if (!file) {
            result.errors.push_back({full.string(), "missing file"});
            continue;
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        const std::string content = buffer.str();

        auto add_sample = [&](std::string text) {
            text = detail::trim(text);
            if (text.empty()) return;
            LabeledSample sample;
            try {
                sample.length_chars = detail::scalar_count(text);
            } catch (const DecodeError& e) {
                result.errors.push_back({full.string(), e.what()});
                return;
            }
            sample.text = std::move(text);
            sample.true_language = language;
            sample.dataset_id = dataset_id;
            result.samples.push_back(std::move(sample));
        };

        if (mode == "file") {
            add_sample(content);
        } else {
            std::istringstream lines(content);
            std::string sample_line;
            while (std::getline(lines, sample_line)) add_sample(sample_line);
        }
    }
    return result;
}

struct EvalCell {
    std::int64_t n = 0;
    std::int64_t correct = 0;
    double accuracy = 0.0;
};

// Cell key: (dataset, method, bucket label). Confusion key: (method, true,
// predicted); undeterminable predictions appear as "?" and are also tallied
// per method.
struct EvalReport {
    std::map<std::tuple<std::string, int, std::string>, EvalCell> cells;
    std::map<std::tuple<int, std::string, std::string>, std::int64_t> confusion;
    std::map<int, std::int64_t> undeterminable;
    double runtime_ms_per_kb = 0.0;
    std::vector<int> methods;
    std::vector<std::size_t> bucket_bounds;
};

inline std::string bucket_label(std::size_t length, const std::vector<std::size_t>& bounds) {
    std::size_t lo = 0;
    for (std::size_t bound : bounds) {
        if (length < bound)
            return "[" + std::to_string(lo) + "-" + std::to_string(bound) + ")";
        lo = bound;
    }
    return "[" + std::to_string(lo) + "-inf)";
}

inline DetectorConfig config_for_method(int method, const DetectorConfig& base = {}) {
    DetectorConfig config = base;
    if (method == 1)
        config.enable_bigrams = false;
    else if (method == 2)
        config.enable_bigrams = true;
    else
        throw Error("unknown method " + std::to_string(method));
    return config;
}

// Runs detect per sample per method, single-threaded so the ms-per-KB figure
// stays meaningful. Ties and undeterminable inputs count as incorrect.
inline EvalReport evaluate(const std::vector<LabeledSample>& samples, const ProfileSet& profiles,
                           std::vector<int> methods = {1, 2},
                           std::vector<std::size_t> bucket_bounds = {150},
                           const DetectorConfig& base = {}) {
    if (samples.empty()) throw Error("evaluate: no samples");
    std::sort(bucket_bounds.begin(), bucket_bounds.end());
    bucket_bounds.erase(std::unique(bucket_bounds.begin(), bucket_bounds.end()),
                        bucket_bounds.end());
    EvalReport report;
    report.methods = methods;
    report.bucket_bounds = bucket_bounds;

    std::size_t total_bytes = 0;
    std::chrono::nanoseconds detect_time{0};

    for (int method : methods) {
        const DetectorConfig config = config_for_method(method, base);
        for (const LabeledSample& sample : samples) {
            const std::string bucket = bucket_label(sample.length_chars, bucket_bounds);
            auto& cell = report.cells[{sample.dataset_id, method, bucket}];
            ++cell.n;

            std::string predicted = "?";
            bool correct = false;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const DetectionResult detection = detect(sample.text, profiles, config);
                predicted = detection.winner;
                correct = !detection.tie && detection.winner == sample.true_language;
            } catch (const UndeterminableError&) {
                ++report.undeterminable[method];
            }
            detect_time += std::chrono::steady_clock::now() - t0;
            total_bytes += sample.text.size();

            if (correct) ++cell.correct;
            ++report.confusion[{method, sample.true_language, predicted}];
        }
    }

    for (auto& [key, cell] : report.cells)
        cell.accuracy = cell.n == 0 ? 0.0 : static_cast<double>(cell.correct) / static_cast<double>(cell.n);

    if (total_bytes > 0) {
        const double ms = std::chrono::duration<double, std::milli>(detect_time).count();
        report.runtime_ms_per_kb = ms / (static_cast<double>(total_bytes) / 1024.0);
    }
    return report;
}

struct MSweepPoint {
    int m = 0;
    double accuracy = 0.0;
};

struct MSweepResult {
    std::vector<MSweepPoint> points;
    std::vector<std::string> warnings;
};

// Method 1 accuracy for each m in [from, to]; the range is clipped to the
// valid [1, 25] with a warning.
inline MSweepResult sweep_m(const std::vector<LabeledSample>& samples, const ProfileSet& profiles,
                            int from = 2, int to = 20) {
    if (samples.empty()) throw Error("sweep_m: no samples");
    MSweepResult result;
    if (from < 1 || to > kMaxRankedChars) {
        result.warnings.push_back("m range [" + std::to_string(from) + ", " + std::to_string(to) +
                                  "] clipped to [1, " + std::to_string(kMaxRankedChars) + "]");
        from = std::max(from, 1);
        to = std::min(to, kMaxRankedChars);
    }
    if (from > to) throw Error("sweep_m: empty m range");

    for (int m = from; m <= to; ++m) {
        DetectorConfig config = DetectorConfig::method1();
        config.m = m;
        std::int64_t correct = 0;
        for (const LabeledSample& sample : samples) {
            try {
                const DetectionResult detection = detect(sample.text, profiles, config);
                if (!detection.tie && detection.winner == sample.true_language) ++correct;
            } catch (const UndeterminableError&) {
            }
        }
        result.points.push_back(
            {m, static_cast<double>(correct) / static_cast<double>(samples.size())});
    }
    return result;
}

// CSV: dataset,method,bucket,n,correct,accuracy
inline void write_report_csv(const EvalReport& report, std::ostream& out) {
    out << "dataset,method,bucket,n,correct,accuracy\n";
    for (const auto& [key, cell] : report.cells) {
        const auto& [dataset, method, bucket] = key;
        out << dataset << ',' << method << ',' << bucket << ',' << cell.n << ',' << cell.correct
            << ',' << detail::format_fixed(cell.accuracy, 6) << '\n';
    }
}

// CSV: true,predicted,count
inline void write_confusion_csv(const EvalReport& report, int method, std::ostream& out) {
    out << "true,predicted,count\n";
    for (const auto& [key, count] : report.confusion) {
        const auto& [m, truth, predicted] = key;
        if (m != method) continue;
        out << truth << ',' << predicted << ',' << count << '\n';
    }
}

// CSV: m,accuracy
inline void write_sweep_csv(const MSweepResult& sweep, std::ostream& out) {
    out << "m,accuracy\n";
    for (const MSweepPoint& point : sweep.points)
        out << point.m << ',' << detail::format_fixed(point.accuracy, 6) << '\n';
}

// Two-method comparison per (dataset, bucket) plus overall per-dataset rows.
inline std::string method_comparison_report(const EvalReport& report) {
    bool has1 = false;
    bool has2 = false;
    for (int method : report.methods) {
        has1 |= method == 1;
        has2 |= method == 2;
    }
    if (!has1 || !has2) throw Error("comparison requires both methods");

    struct Row {
        std::int64_t n1 = 0, correct1 = 0, n2 = 0, correct2 = 0;
    };
    std::map<std::pair<std::string, std::string>, Row> rows;  // (dataset, bucket)
    std::map<std::string, Row> totals;                        // dataset
    for (const auto& [key, cell] : report.cells) {
        const auto& [dataset, method, bucket] = key;
        Row& row = rows[{dataset, bucket}];
        Row& total = totals[dataset];
        if (method == 1) {
            row.n1 += cell.n;
            row.correct1 += cell.correct;
            total.n1 += cell.n;
            total.correct1 += cell.correct;
        } else if (method == 2) {
            row.n2 += cell.n;
            row.correct2 += cell.correct;
            total.n2 += cell.n;
            total.correct2 += cell.correct;
        }
    }

    auto pct = [](std::int64_t correct, std::int64_t n) {
        return n == 0 ? std::string("-")
                      : detail::format_fixed(100.0 * static_cast<double>(correct) / static_cast<double>(n), 1) + "%";
    };

    std::ostringstream out;
    out << "dataset          bucket        n     method1   method2\n";
    for (const auto& [key, row] : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-16s %-12s %5lld %9s %9s\n", key.first.c_str(),
                      key.second.c_str(), static_cast<long long>(row.n1),
                      pct(row.correct1, row.n1).c_str(), pct(row.correct2, row.n2).c_str());
        out << line;
    }
    for (const auto& [dataset, row] : totals) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-16s %-12s %5lld %9s %9s\n", dataset.c_str(), "all",
                      static_cast<long long>(row.n1), pct(row.correct1, row.n1).c_str(),
                      pct(row.correct2, row.n2).c_str());
        out << line;
    }
    return out.str();
}

}  // namespace langid
