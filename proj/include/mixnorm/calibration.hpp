#pragma once

#include "mixnorm/report.hpp"
#include "mixnorm/series.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mixnorm {

/// Constants measured by the brute-force oracle for one construction.
struct CalibrationEntry {
  std::string id;
  std::map<std::string, std::string> params;
  std::map<std::string, double> constants;
  std::map<std::string, double> oracle_resolution;
};

struct CalibrationFixtures {
  int version = 1;
  std::vector<CalibrationEntry> entries;

  /// NotFoundError for unknown ids.
  const CalibrationEntry& at(const std::string& id) const;
};

std::string fixtures_to_json(const CalibrationFixtures& fx);
CalibrationFixtures fixtures_from_json(const std::string& text);
CalibrationFixtures load_fixtures(const std::filesystem::path& path);
/// A path without a .json extension is taken as a directory holding calibration.json.
std::filesystem::path fixtures_file(const std::filesystem::path& out);

/// All +-1 sequences of the given length with first entry +1 (the norm is
/// invariant under a global sign).
std::vector<std::vector<cplx>> sign_patterns(int length);

/// Proof constants of the upper-bound chain for the Fejer-block embedding
/// with block ratio K: A = 2^alpha sum (K/2)^{-k alpha}, B = e^{C_alpha} sum e^{-K^j/2}.
struct ChainConstants {
  double A = 0.0;
  double B = 0.0;
};
ChainConstants lacunary_chain_constants(int K, double alpha);

/// Two-sided constants of the Fejer-block embedding over all sign patterns of
/// length 1..L: c, C, per-length C/c, drift, the localization constant eta
/// with delta = pi/18, and the proof constants A, B.
CalibrationEntry calibrate_lacunary(int K, int L, double p, double alpha);

/// Same for sum a_n delta_n^nu (1 + delta_n - z)^beta, plus the majorant
/// constant and the per-term mean constant.
CalibrationEntry calibrate_xnu(int K, int L, double beta, double p, double alpha);

/// ||f o phi_t - f|| / ||f|| under dilation for f = (1 - z)^{-(alpha + 1/p)}.
CalibrationEntry calibrate_obstruction(double p, double alpha);

/// Range of ||f_{z0}|| over z0 in {0, 0.5, 0.9, 0.99}.
CalibrationEntry calibrate_growth(double p, double alpha);

/// Keys: lacunary.K, lacunary.L, xnu.K, xnu.L, xnu.beta, p, alpha.
CalibrationFixtures run_calibration(const Config& config = {});

}  // namespace mixnorm
