#include "mixnorm/calibration.hpp"

#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"
#include "mixnorm/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

// Brute-force oracle. Every quantity here is computed from the defining
// formulas (Fejer blocks, closed-form powers) by dense sampling or adaptive
// quadrature in the angle, without the series machinery used by the norms.

namespace mixnorm {

namespace {

using nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;
constexpr int kKappa = 8;

double grid_radius(int j) { return j == 0 ? 0.0 : 1.0 - std::exp2(-double(j) / kKappa); }

double weight(double r, double alpha) { return std::pow(1.0 - r, alpha); }

/// (1/pi int_0^pi g(theta)^p)^{1/p} for a function symmetric in theta, with
/// panels refined geometrically towards theta = 0 where the peak of width w sits.
double angle_mean(const std::function<double(double)>& absval, double w, double p) {
  quad::AdaptiveOptions ao;
  ao.rel_tol = 1e-11;
  ao.max_intervals = 2000;
  auto integrand = [&](double t) { return std::pow(absval(t), p); };
  std::vector<double> br{0.0};
  for (double b = std::max(w, 1e-14); b < kPi; b *= 2.0) br.push_back(b);
  br.push_back(kPi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) total += quad::adaptive_gk15(integrand, br[i], br[i + 1], ao).value;
  return std::pow(total / kPi, 1.0 / p);
}

/// Offset of the vertex of the parabola through (-h, a), (0, b), (h, c), clamped to [-h, h].
double vertex_offset(double a, double b, double c, double h) {
  const double den = a - 2.0 * b + c;
  if (!(den < 0.0)) return 0.0;
  return std::clamp(h * (a - c) / (2.0 * den), -h, h);
}

/// Refines the sup of one candidate from its grid maximum by one parabolic
/// step in log(1 - r).
double refine(const std::function<double(double)>& weighted, int j, const std::function<double(int)>& at_grid,
              double best) {
  if (j <= 1) return best;
  const double h = std::log(2.0) / kKappa;
  const double off = vertex_offset(at_grid(j - 1), at_grid(j), at_grid(j + 1), h);
  if (off == 0.0) return best;
  const double u = std::log(1.0 - grid_radius(j)) - off;
  return std::max(best, weighted(1.0 - std::exp(u)));
}

ordered_json to_json(const CalibrationEntry& e) {
  ordered_json j;
  j["id"] = e.id;
  j["params"] = e.params;
  j["constants"] = e.constants;
  j["oracle_resolution"] = e.oracle_resolution;
  return j;
}

std::string fmt(double v) { return format_double(v); }

double c_alpha(double alpha) {
  // Smallest C >= 0 with alpha log x <= C + x/2 for x >= 1.
  if (2.0 * alpha <= 1.0) return 0.0;
  return std::max(0.0, alpha * std::log(2.0 * alpha) - alpha);
}

void summarize(CalibrationEntry& e, const std::vector<std::vector<double>>& norms) {
  const int L = static_cast<int>(norms.size());
  double c = std::numeric_limits<double>::infinity();
  double C = 0.0;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (int l = 1; l <= L; ++l) {
    const auto& v = norms[static_cast<std::size_t>(l - 1)];
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    c = std::min(c, lo);
    C = std::max(C, hi);
    e.constants["c_len" + std::to_string(l)] = lo;
    e.constants["C_len" + std::to_string(l)] = hi;
    e.constants["ratio_len" + std::to_string(l)] = hi / lo;
    if (l >= 2) {
      rmin = std::min(rmin, hi / lo);
      rmax = std::max(rmax, hi / lo);
    }
  }
  e.constants["c"] = c;
  e.constants["C"] = C;
  e.constants["drift"] = L >= 2 ? rmax / rmin - 1.0 : 0.0;
}

}  // namespace

// ------------------------------------------------------------- fixtures I/O

const CalibrationEntry& CalibrationFixtures::at(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return e;
  throw NotFoundError("calibration fixtures: no entry '" + id + "'");
}

std::string fixtures_to_json(const CalibrationFixtures& fx) {
  ordered_json j;
  j["version"] = fx.version;
  j["entries"] = ordered_json::array();
  for (const auto& e : fx.entries) j["entries"].push_back(to_json(e));
  return j.dump(2) + "\n";
}

CalibrationFixtures fixtures_from_json(const std::string& text) {
  CalibrationFixtures fx;
  try {
    const auto j = ordered_json::parse(text);
    fx.version = j.at("version").get<int>();
    for (const auto& je : j.at("entries")) {
      CalibrationEntry e;
      e.id = je.at("id").get<std::string>();
      e.params = je.at("params").get<std::map<std::string, std::string>>();
      e.constants = je.at("constants").get<std::map<std::string, double>>();
      e.oracle_resolution = je.at("oracle_resolution").get<std::map<std::string, double>>();
      fx.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("calibration fixtures: ") + ex.what());
  }
  if (fx.version != 1) throw UsageError("calibration fixtures: unsupported version " + std::to_string(fx.version));
  return fx;
}

std::filesystem::path fixtures_file(const std::filesystem::path& out) {
  if (out.extension() == ".json") return out;
  return out / "calibration.json";
}

CalibrationFixtures load_fixtures(const std::filesystem::path& path) {
  const auto file = fixtures_file(path);
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read calibration fixtures " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fixtures_from_json(ss.str());
}

std::vector<std::vector<cplx>> sign_patterns(int length) {
  if (length < 1 || length > 30) throw DomainError("sign_patterns: length outside [1, 30]");
  std::vector<std::vector<cplx>> out;
  const unsigned count = 1u << (length - 1);
  for (unsigned m = 0; m < count; ++m) {
    std::vector<cplx> a(static_cast<std::size_t>(length), 1.0);
    for (int b = 1; b < length; ++b)
      if ((m >> (b - 1)) & 1u) a[static_cast<std::size_t>(b)] = -1.0;
    out.push_back(std::move(a));
  }
  return out;
}

// ----------------------------------------------------------------- lacunary

ChainConstants lacunary_chain_constants(int K, double alpha) {
  // (1 - r_n)/(1 - r_{n+1}) = K for the standard radii.
  const double b = static_cast<double>(K);
  ChainConstants cc;
  cc.A = std::pow(2.0, alpha) / (1.0 - std::pow(b / 2.0, -alpha));
  double sum = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double term = std::exp(-std::pow(b, j) / 2.0);
    sum += term;
    if (term < 1e-300) break;
  }
  cc.B = std::exp(c_alpha(alpha)) * sum;
  return cc;
}

CalibrationEntry calibrate_lacunary(int K, int L, double p, double alpha) {
  if (K < 3 || L < 1 || L > 7) throw DomainError("calibrate_lacunary: need K >= 3 and 1 <= L <= 7");
  if (!(p >= 1.0) || p == std::numeric_limits<double>::infinity()) throw DomainError("calibrate_lacunary: p in [1, inf)");
  const double nu = alpha + 1.0 / p - 1.0;
  std::vector<std::size_t> N(static_cast<std::size_t>(L));
  std::vector<std::vector<double>> block(static_cast<std::size_t>(L));
  {
    std::size_t n = 1;
    for (int l = 0; l < L; ++l) {
      n *= static_cast<std::size_t>(K);
      N[static_cast<std::size_t>(l)] = n;
      const double dn = static_cast<double>(n);
      auto& b = block[static_cast<std::size_t>(l)];
      b.assign(3 * n, 0.0);
      for (std::size_t k = n + 1; k < 3 * n; ++k)
        b[k] = std::pow(dn, nu) * (1.0 - std::abs(static_cast<double>(k) - 2.0 * dn) / dn);
    }
  }
  const std::size_t m_max = 2 * fft::next_pow2(3 * N.back());

  auto block_samples = [&](double r, std::size_t M) {
    std::vector<std::vector<cplx>> s(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
      const auto& b = block[static_cast<std::size_t>(l)];
      std::vector<cplx> c(b.size());
      double rk = 1.0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        c[k] = b[k] * rk;
        rk *= r;
      }
      s[static_cast<std::size_t>(l)] = fft::evaluate_on_roots(c, M);
    }
    return s;
  };
  auto sample_count = [&](double r) {
    if (r >= 1.0) return m_max;
    const double want = std::max(4096.0, 80.0 / (1.0 - r));
    return std::min(m_max, fft::next_pow2(static_cast<std::size_t>(std::ceil(want))));
  };
  auto pattern_mean = [&](const std::vector<std::vector<cplx>>& s, const std::vector<cplx>& a) {
    const std::size_t M = s[0].size();
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      cplx v = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) v += a[n] * s[n][j];
      acc += p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p);
    }
    return std::pow(acc / static_cast<double>(M), 1.0 / p);
  };

  std::vector<std::vector<std::vector<cplx>>> patterns;
  for (int l = 1; l <= L; ++l) patterns.push_back(sign_patterns(l));

  // Boundary means bound the weighted profile from above: M_p is increasing in r.
  const auto s1 = block_samples(1.0, m_max);
  std::vector<std::vector<double>> top(static_cast<std::size_t>(L));
  std::vector<std::vector<double>> best(static_cast<std::size_t>(L));
  std::vector<std::vector<int>> arg(static_cast<std::size_t>(L));
  std::vector<std::vector<std::vector<double>>> profile(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    const auto& P = patterns[static_cast<std::size_t>(l)];
    for (const auto& a : P) top[static_cast<std::size_t>(l)].push_back(pattern_mean(s1, a));
    best[static_cast<std::size_t>(l)].assign(P.size(), -1.0);
    arg[static_cast<std::size_t>(l)].assign(P.size(), 0);
    profile[static_cast<std::size_t>(l)].assign(P.size(), {});
  }
  int j = 0;
  for (;; ++j) {
    const double r = grid_radius(j);
    const double w = weight(r, alpha);
    bool any = false;
    for (int l = 0; l < L && !any; ++l)
      for (std::size_t i = 0; i < patterns[static_cast<std::size_t>(l)].size(); ++i)
        if (w * top[static_cast<std::size_t>(l)][i] > best[static_cast<std::size_t>(l)][i]) any = true;
    if (!any || j > 60 * kKappa) break;
    const auto s = block_samples(r, sample_count(r));
    for (int l = 0; l < L; ++l) {
      const auto& P = patterns[static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < P.size(); ++i) {
        const double v = w * pattern_mean(s, P[i]);
        profile[static_cast<std::size_t>(l)][i].push_back(v);
        if (v > best[static_cast<std::size_t>(l)][i]) {
          best[static_cast<std::size_t>(l)][i] = v;
          arg[static_cast<std::size_t>(l)][i] = j;
        }
      }
    }
  }
  const int grid_points = j;
  // Polish every pattern by one parabolic step around its grid maximum.
  for (int l = 0; l < L; ++l) {
    auto& b = best[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& prof = profile[static_cast<std::size_t>(l)][i];
      const int ja = arg[static_cast<std::size_t>(l)][i];
      if (ja + 1 >= static_cast<int>(prof.size())) continue;
      const auto& a = patterns[static_cast<std::size_t>(l)][i];
      auto weighted = [&](double r) { return weight(r, alpha) * pattern_mean(block_samples(r, sample_count(r)), a); };
      b[i] = refine(weighted, ja, [&](int k) { return prof[static_cast<std::size_t>(k)]; }, b[i]);
    }
  }
  CalibrationEntry e;
  e.id = "lacunary";
  e.params = {{"K", std::to_string(K)}, {"L", std::to_string(L)}, {"p", fmt(p)}, {"alpha", fmt(alpha)},
              {"nu", fmt(nu)}, {"t", "0"}};
  summarize(e, best);

  // Localization on |t| <= delta (1 - r_l) around the block peaks.
  const double delta = kPi / 18.0;
  constexpr int kLoc = 64;
  std::vector<std::vector<std::vector<cplx>>> vals(static_cast<std::size_t>(L));  // [l][n][j]
  for (int l = 0; l < L; ++l) {
    const double rl = 1.0 - 1.0 / static_cast<double>(N[static_cast<std::size_t>(l)]);
    const double x = 1.0 - rl;
    vals[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(L));
    for (int n = 0; n < L; ++n) {
      const auto& b = block[static_cast<std::size_t>(n)];
      auto& out = vals[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)];
      for (int jj = 0; jj < kLoc; ++jj) {
        const double t = delta * x * (2.0 * jj / (kLoc - 1.0) - 1.0);
        const cplx z = std::polar(rl, t);
        cplx acc = 0.0;
        for (std::size_t k = b.size(); k-- > 0;) acc = acc * z + b[k];
        out.push_back(acc);
      }
    }
  }
  double eta = std::numeric_limits<double>::infinity();
  for (int len = 1; len <= L; ++len) {
    for (const auto& a : patterns[static_cast<std::size_t>(len - 1)]) {
      double eta_a = 0.0;
      for (int l = 0; l < len; ++l) {
        const double rl = 1.0 - 1.0 / static_cast<double>(N[static_cast<std::size_t>(l)]);
        double mn = std::numeric_limits<double>::infinity();
        for (int jj = 0; jj < kLoc; ++jj) {
          cplx v = 0.0;
          for (int n = 0; n < len; ++n)
            v += a[static_cast<std::size_t>(n)] *
                 vals[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)][static_cast<std::size_t>(jj)];
          mn = std::min(mn, std::abs(v));
        }
        eta_a = std::max(eta_a, mn * std::pow(1.0 - rl, 1.0 / p + alpha));
      }
      eta = std::min(eta, eta_a);
    }
  }
  const auto [A, B] = lacunary_chain_constants(K, alpha);
  e.constants["eta"] = eta;
  e.constants["delta"] = delta;
  e.constants["c_theory"] = eta * std::pow(delta / kPi, 1.0 / p);
  e.constants["A"] = A;
  e.constants["B"] = B;
  e.oracle_resolution = {{"kappa", kKappa},
                         {"fft_size_max", static_cast<double>(m_max)},
                         {"grid_points", grid_points},
                         {"localization_points", kLoc}};
  return e;
}

// ---------------------------------------------------------------------- xnu

CalibrationEntry calibrate_xnu(int K, int L, double beta, double p, double alpha) {
  if (K < 2 || L < 1 || L > 8) throw DomainError("calibrate_xnu: need K >= 2 and 1 <= L <= 8");
  if (!(beta * p < -1.0)) throw DomainError("calibrate_xnu: need beta p < -1");
  if (!(p >= 1.0) || p == std::numeric_limits<double>::infinity()) throw DomainError("calibrate_xnu: p in [1, inf)");
  const double nu = -(alpha + beta + 1.0 / p);
  std::vector<double> d(static_cast<std::size_t>(L));
  for (int n = 0; n < L; ++n) d[static_cast<std::size_t>(n)] = std::pow(static_cast<double>(K), -(n + 1));
  const double dmin = d.back();
  auto term = [&](int n, cplx z) {
    const double dn = d[static_cast<std::size_t>(n)];
    return std::pow(dn, nu) * std::pow(1.0 + dn - z, beta);
  };
  auto mean = [&](double r, const std::function<double(cplx)>& absval) {
    return angle_mean([&](double t) { return absval(std::polar(r, t)); }, 1.0 + dmin - r, p);
  };
  auto pattern_abs = [&](const std::vector<cplx>& a) {
    return [&term, a](cplx z) {
      cplx v = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) v += a[n] * term(static_cast<int>(n), z);
      return std::abs(v);
    };
  };

  std::vector<std::vector<std::vector<cplx>>> patterns;
  for (int l = 1; l <= L; ++l) patterns.push_back(sign_patterns(l));
  std::vector<std::vector<double>> best(static_cast<std::size_t>(L));
  int grid_points = 0;
  for (int l = 0; l < L; ++l) {
    for (const auto& a : patterns[static_cast<std::size_t>(l)]) {
      const auto f = pattern_abs(a);
      const double top = mean(1.0, f);
      std::vector<double> prof;
      double b = -1.0;
      int ja = 0;
      int jj = 0;
      for (; jj <= 60 * kKappa; ++jj) {
        const double r = grid_radius(jj);
        if (weight(r, alpha) * top <= b) break;
        const double v = weight(r, alpha) * mean(r, f);
        prof.push_back(v);
        if (v > b) {
          b = v;
          ja = jj;
        }
      }
      grid_points = std::max(grid_points, jj);
      if (ja + 1 < static_cast<int>(prof.size()))
        b = refine([&](double r) { return weight(r, alpha) * mean(r, f); }, ja,
                   [&](int k) { return prof[static_cast<std::size_t>(k)]; }, b);
      best[static_cast<std::size_t>(l)].push_back(b);
    }
  }
  CalibrationEntry e;
  e.id = "xnu";
  e.params = {{"K", std::to_string(K)}, {"L", std::to_string(L)}, {"beta", fmt(beta)},
              {"p", fmt(p)},            {"alpha", fmt(alpha)},    {"nu", fmt(nu)}};
  summarize(e, best);

  // Majorant sum |f_n| and the per-term mean constant.
  auto maj = [&](cplx z) {
    double s = 0.0;
    for (int n = 0; n < L; ++n) s += std::abs(term(n, z));
    return s;
  };
  const double maj_top = mean(1.0, maj);
  double maj_best = 0.0;
  double mean_c = 0.0;
  for (int jj = 0; jj <= 60 * kKappa; ++jj) {
    const double r = grid_radius(jj);
    const bool maj_done = weight(r, alpha) * maj_top <= maj_best;
    if (!maj_done) maj_best = std::max(maj_best, weight(r, alpha) * mean(r, maj));
    for (int n = 0; n < L; ++n) {
      const double dn = d[static_cast<std::size_t>(n)];
      const double m = mean(r, [&](cplx z) { return std::abs(term(n, z)); });
      mean_c = std::max(mean_c, m / (std::pow(dn, nu) * std::pow(1.0 + dn - r, beta + 1.0 / p)));
    }
    if (maj_done && 1.0 - r < 1e-3 * dmin) break;
  }
  for (int n = 0; n < L; ++n) {
    const double dn = d[static_cast<std::size_t>(n)];
    const double m = mean(1.0, [&](cplx z) { return std::abs(term(n, z)); });
    mean_c = std::max(mean_c, m / (std::pow(dn, nu) * std::pow(dn, beta + 1.0 / p)));
  }
  e.constants["majorant_C"] = maj_best;
  e.constants["mean_C"] = mean_c;
  e.oracle_resolution = {{"kappa", kKappa}, {"angle_rel_tol", 1e-11}, {"grid_points", grid_points}};
  return e;
}

// -------------------------------------------------------------- obstruction

CalibrationEntry calibrate_obstruction(double p, double alpha) {
  const double s = alpha + 1.0 / p;
  auto f = [s](cplx z) { return std::pow(1.0 - z, -s); };
  auto sup_profile = [&](const std::function<double(cplx)>& absval, double x_stop) {
    double b = 0.0;
    for (int j = 0; j <= 60 * kKappa; ++j) {
      const double r = grid_radius(j);
      if (1.0 - r < x_stop) break;
      const double m = angle_mean([&](double t) { return absval(std::polar(r, t)); }, 1.0 - r, p);
      b = std::max(b, weight(r, alpha) * m);
    }
    return b;
  };
  const std::vector<double> ts{1e-4, 1e-3, 1e-2, 1e-1};
  const double x_stop = 1e-3 * ts.front();
  const double nf = sup_profile([&](cplx z) { return std::abs(f(z)); }, x_stop);
  CalibrationEntry e;
  e.id = "obstruction";
  e.params = {{"p", fmt(p)}, {"alpha", fmt(alpha)}, {"theta", "0"}, {"semigroup", "dilation"}};
  double mn = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    const double et = std::exp(-t);
    const double v = sup_profile([&](cplx z) { return std::abs(f(et * z) - f(z)); }, x_stop);
    e.constants["ratio_t" + fmt(t)] = v / nf;
    mn = std::min(mn, v / nf);
  }
  e.constants["norm_f"] = nf;
  e.constants["min_ratio"] = mn;
  e.constants["threshold"] = 0.1;
  e.oracle_resolution = {{"kappa", kKappa}, {"angle_rel_tol", 1e-11}, {"x_stop", x_stop}};
  return e;
}

CalibrationEntry calibrate_growth(double p, double alpha) {
  const double s = alpha + 1.0 / p;
  CalibrationEntry e;
  e.id = "growth";
  e.params = {{"p", fmt(p)}, {"alpha", fmt(alpha)}, {"z0", "0,0.5,0.9,0.99"}};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double z0 : {0.0, 0.5, 0.9, 0.99}) {
    const double amp = std::pow(1.0 - z0 * z0, s);
    double b = 0.0;
    for (int j = 0; j <= 60 * kKappa; ++j) {
      const double r = grid_radius(j);
      if (1.0 - r < 1e-9) break;
      const double m = angle_mean(
          [&](double t) { return amp * std::pow(std::abs(1.0 - z0 * std::polar(r, t)), -2.0 * s); }, 1.0 - z0 * r, p);
      b = std::max(b, weight(r, alpha) * m);
    }
    e.constants["norm_z0_" + fmt(z0)] = b;
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  e.constants["min_norm"] = lo;
  e.constants["max_norm"] = hi;
  e.oracle_resolution = {{"kappa", kKappa}, {"angle_rel_tol", 1e-11}};
  return e;
}

CalibrationFixtures run_calibration(const Config& cfg) {
  const double p = cfg.get_double("p", 2.0);
  const double alpha = cfg.get_double("alpha", 1.0);
  CalibrationFixtures fx;
  fx.entries.push_back(calibrate_lacunary(static_cast<int>(cfg.get_int("lacunary.K", 10)),
                                          static_cast<int>(cfg.get_int("lacunary.L", 5)), p, alpha));
  fx.entries.push_back(calibrate_xnu(static_cast<int>(cfg.get_int("xnu.K", 4)), static_cast<int>(cfg.get_int("xnu.L", 6)),
                                     cfg.get_double("xnu.beta", -4.0), p, alpha));
  fx.entries.push_back(calibrate_obstruction(p, alpha));
  fx.entries.push_back(calibrate_growth(p, alpha));
  return fx;
}

}  // namespace mixnorm
