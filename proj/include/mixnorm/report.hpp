#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mixnorm {

using Curve = std::vector<std::pair<double, double>>;

struct ExperimentReport {
  std::string experiment_id;
  std::map<std::string, std::string> params;
  std::map<std::string, Curve> curves;
  std::map<std::string, double> scalars;
  std::map<std::string, std::string> verdicts;  // PASS / FAIL checks and classifier outputs
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::int64_t runtime_ms = 0;

  /// No verdict reads FAIL.
  bool passed() const;
  /// Field-wise equality; NaN scalars compare equal to NaN.
  bool same_as(const ExperimentReport& other, bool ignore_runtime = true) const;
};

enum class Format { CSV, JSON };

/// "csv" or "json", case-insensitive; UsageError otherwise.
Format parse_format(const std::string& s);

std::string to_json_string(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

/// Header experiment_id,series,x,y and one row per curve point.
std::string to_csv(const ExperimentReport& report);
/// key = value lines for seed, params, tolerances, scalars and verdicts.
std::string summary_block(const ExperimentReport& report);

/// JSON: one document at path. CSV: rows at path, summary at path + ".summary".
/// Files are written to a temporary sibling and renamed into place.
void emit(const ExperimentReport& report, Format format, const std::filesystem::path& path);

void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Shortest decimal that round-trips; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Flat key = value settings. Layers merge so that later layers win:
/// defaults < file < command line.
class Config {
public:
  Config() = default;

  /// '#' starts a comment; blank lines are skipped; UsageError on malformed lines.
  static Config from_file(const std::filesystem::path& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  void set(const std::string& key, const std::string& value);
  /// Entries of `over` replace ours.
  void merge(const Config& over);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_seed(std::uint64_t fallback = 0) const;

  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

}  // namespace mixnorm
