#include "mixnorm/norms.hpp"

#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"
#include "mixnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mixnorm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxSeriesSamples = std::size_t{1} << 24;
constexpr std::size_t kMaxEvaluatorSamples = std::size_t{1} << 22;
constexpr double kMeanRelTol = 1e-10;

std::vector<cplx> polynomial_part_samples(const AnalyticFunction& f, double r, std::size_t M) {
  const auto& c = f.coefficients();
  std::vector<cplx> scaled(c.size());
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    scaled[k] = c[k] * rk;
    rk *= r;
  }
  return fft::evaluate_on_roots(scaled, M);
}

cplx horner(const AnalyticFunction& f, cplx z) {
  const auto& c = f.coefficients();
  cplx s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

double mean_of_power(const std::vector<cplx>& v, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  // Neumaier summation keeps the mean stable for large M.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& x : v) {
    const double a = std::abs(x);
    const double t = p == 2.0 ? a * a : (p == 1.0 ? a : std::pow(a, p));
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  const double mean = (sum + comp) / static_cast<double>(v.size());
  return std::pow(mean, 1.0 / p);
}

// Polishes the sampled maximum of |F(theta)| around the largest local maxima.
double refine_angular_max(const std::vector<cplx>& v, const std::function<double(double)>& modulus) {
  const std::size_t M = v.size();
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t j = 0; j < M; ++j) {
    const double a = std::abs(v[j]);
    const double l = std::abs(v[(j + M - 1) % M]);
    const double r = std::abs(v[(j + 1) % M]);
    if (a >= l && a >= r) peaks.emplace_back(a, j);
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = peaks.empty() ? 0.0 : peaks.front().first;
  const double h = kTwoPi / static_cast<double>(M);
  for (std::size_t i = 0; i < std::min<std::size_t>(3, peaks.size()); ++i) {
    const double th = h * static_cast<double>(peaks[i].second);
    auto ext = quad::golden_section_max(modulus, th - h, th + h, 1e-15, 120);
    best = std::max(best, ext.value);
  }
  return best;
}

bool single_term(const AnalyticFunction& f, cplx& c, std::size_t& n) {
  std::size_t count = 0;
  const auto& co = f.coefficients();
  for (std::size_t k = 0; k < co.size(); ++k) {
    if (co[k] != cplx{}) {
      if (++count > 1) return false;
      c = co[k];
      n = k;
    }
  }
  if (count == 0) {
    c = 0.0;
    n = 0;
  }
  return true;
}

double series_mean(const AnalyticFunction& f, double r, double p) {
  if (r == 0.0) return std::abs(f.coefficient(0));
  cplx c;
  std::size_t n = 0;
  if (single_term(f, c, n)) return std::abs(c) * std::pow(r, static_cast<double>(n));
  if (p == 2.0) return std::sqrt(parseval_mean_square(f, r));
  const std::size_t deff = effective_degree(f, r);
  std::size_t M = fft::next_pow2(std::max<std::size_t>(4096, 4 * deff + 4));
  if (p == kInf) {
    auto v = polynomial_part_samples(f, r, M);
    return refine_angular_max(v, [&](double th) { return std::abs(horner(f, std::polar(r, th))); });
  }
  double prev = mean_of_power(polynomial_part_samples(f, r, M), p);
  while (true) {
    M *= 2;
    if (M > kMaxSeriesSamples) throw NonConvergenceError("integral_mean: sampling cap reached");
    const double cur = mean_of_power(polynomial_part_samples(f, r, M), p);
    if (std::abs(cur - prev) <= kMeanRelTol * std::abs(cur)) return cur;
    prev = cur;
  }
}

double evaluator_mean(const DiskFunction& f, double r, double p) {
  const auto& opts = f.options();
  if (r == 0.0) return std::abs(f(0.0));
  auto modulus = [&](double th) { return std::abs(f(std::polar(r, th))); };
  if (opts.adaptive_angles && p != kInf) {
    auto integrand = [&](double th) { return std::pow(modulus(th), p); };
    double coarse = 0.0;
    for (int j = 0; j < 256; ++j) coarse += integrand(kTwoPi * j / 256.0);
    coarse *= kTwoPi / 256.0;
    quad::AdaptiveOptions ao;
    ao.rel_tol = kMeanRelTol;
    ao.abs_tol = 1e-12 * coarse;
    ao.max_intervals = 20000;
    auto res = quad::adaptive_gk15(integrand, 0.0, kTwoPi, ao);
    return std::pow(res.value / kTwoPi, 1.0 / p);
  }
  std::size_t M = fft::next_pow2(std::max<std::size_t>(opts.resolution, 64));
  std::vector<cplx> v = f.samples(r, M);
  double prev = mean_of_power(v, p);
  while (true) {
    M *= 2;
    if (M > kMaxEvaluatorSamples) throw NonConvergenceError("integral_mean: evaluator sampling cap reached");
    v = f.samples(r, M);
    const double cur = mean_of_power(v, p);
    const bool done = std::abs(cur - prev) <= kMeanRelTol * std::abs(cur);
    prev = cur;
    if (done) break;
  }
  if (p == kInf) return std::max(prev, refine_angular_max(v, modulus));
  return prev;
}

double unchecked_mean(const DiskFunction& f, double r, double p) {
  return f.is_series() ? series_mean(f.series(), r, p) : evaluator_mean(f, r, p);
}

std::size_t nearest_index(const std::vector<double>& x, double target) {
  std::size_t best = 0;
  double bd = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(std::log(x[i]) - std::log(target));
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

SpaceParams::SpaceParams(double p_, double q_, double alpha_, bool little_oh_)
    : p(p_), q(q_), alpha(alpha_), little_oh(little_oh_) {
  if (!(p > 0.0)) throw DomainError("SpaceParams: p must lie in (0, inf]");
  if (!(q > 0.0)) throw DomainError("SpaceParams: q must lie in (0, inf]");
  if (!(alpha > 0.0) || alpha == kInf) throw DomainError("SpaceParams: alpha must lie in (0, inf)");
  if (little_oh && q != kInf) throw DomainError("SpaceParams: little-oh requires q = inf");
}

std::vector<double> radial_grid(const GridSpec& spec) {
  std::vector<double> r(static_cast<std::size_t>(spec.J) + 1);
  for (int j = 0; j <= spec.J; ++j) r[static_cast<std::size_t>(j)] = 1.0 - std::exp2(-double(j) / spec.kappa);
  return r;
}

double integral_mean(const DiskFunction& f, double r, double p) {
  if (!(p > 0.0)) throw DomainError("integral_mean: p must be positive");
  if (!(r >= 0.0) || r > 1.0) throw DomainError("integral_mean: r outside [0, 1]");
  if (r > f.max_radius() + 1e-15) throw DomainError("integral_mean: r beyond the evaluator's disk");
  if (f.is_series() && r == 1.0 && !f.series().is_polynomial())
    throw DomainError("integral_mean: r = 1 on a truncated series");
  return unchecked_mean(f, r, p);
}

double sampled_integral_mean(const AnalyticFunction& f, double r, double p, std::size_t M) {
  if (!(r >= 0.0) || r > 1.0) throw DomainError("sampled_integral_mean: r outside [0, 1]");
  auto v = polynomial_part_samples(f, r, M);
  return mean_of_power(v, p);
}

RadialProfile radial_profile(const DiskFunction& f, double p, const GridSpec& grid) {
  RadialProfile prof;
  prof.p = p;
  for (double r : radial_grid(grid)) {
    if (r > f.max_radius()) break;
    const double m = unchecked_mean(f, r, p);
    if (f.tail_at(r) > grid.tail_rel_tol * m) {
      prof.tail_limited = true;
      break;
    }
    if (!prof.values.empty() && m < prof.values.back() * (1.0 - 1e-9)) prof.monotone = false;
    prof.grid.push_back(r);
    prof.values.push_back(m);
  }
  return prof;
}

NormResult weighted_sup(const DiskFunction& f, double p, const std::function<double(double)>& weight,
                        const GridSpec& grid, double slack) {
  std::vector<double> rs;
  std::vector<double> ms;
  NormResult res;
  const bool bounded_top =
      f.max_radius() >= 1.0 && (!f.is_series() || f.series().is_polynomial());
  double m_top = -1.0;
  double best = -1.0;
  bool early_stop = false;
  for (double r : radial_grid(grid)) {
    if (r > f.max_radius()) break;
    const double m = unchecked_mean(f, r, p);
    if (f.tail_at(r) > grid.tail_rel_tol * m) {
      res.tail_limited = true;
      break;
    }
    rs.push_back(r);
    ms.push_back(m);
    best = std::max(best, weight(r) * m);
    if (bounded_top && rs.size() >= 8) {
      if (m_top < 0.0) m_top = unchecked_mean(f, 1.0, p);
      if (weight(r) * m_top <= best) {
        early_stop = true;
        break;
      }
    }
  }
  if (rs.empty()) throw NonConvergenceError("weighted_sup: no admissible radius");
  auto value_at = [&](double r) { return weight(r) * unchecked_mean(f, r, p); };

  std::size_t jb = 0;
  for (std::size_t j = 0; j < rs.size(); ++j)
    if (weight(rs[j]) * ms[j] > weight(rs[jb]) * ms[jb]) jb = j;
  double lower = weight(rs[jb]) * ms[jb];
  double arg = rs[jb];
  if (rs.size() >= 2) {
    const double a = rs[jb > 0 ? jb - 1 : 0];
    const double b = rs[std::min(jb + 1, rs.size() - 1)];
    auto ext = quad::golden_section_max(value_at, a, b, 1e-9 * (b - a) + 1e-15, 80);
    if (ext.value > lower) {
      lower = ext.value;
      arg = ext.x;
    }
  }

  // Pair bound w(r_j) M_p(r_{j+1}) brackets the sup on each interval.
  struct Interval {
    double a, b, ma, mb;
  };
  std::vector<Interval> iv;
  for (std::size_t j = 0; j + 1 < rs.size(); ++j) iv.push_back({rs[j], rs[j + 1], ms[j], ms[j + 1]});
  auto interval_bound = [&](const Interval& I) { return weight(I.a) * I.mb; };
  double beyond = 0.0;
  if (early_stop) beyond = weight(rs.back()) * m_top;
  for (int it = 0; it < 4000; ++it) {
    std::size_t worst = 0;
    double ub = beyond;
    for (std::size_t k = 0; k < iv.size(); ++k) {
      const double u = interval_bound(iv[k]);
      if (u > ub) {
        ub = u;
        worst = k;
      }
    }
    res.upper = std::max(ub, lower);
    if (iv.empty() || res.upper <= lower * (1.0 + slack) || ub == beyond) break;
    const Interval I = iv[worst];
    const double mid = 1.0 - std::sqrt((1.0 - I.a) * (1.0 - I.b));
    const double mm = unchecked_mean(f, mid, p);
    if (weight(mid) * mm > lower) {
      lower = weight(mid) * mm;
      arg = mid;
    }
    iv[worst] = {I.a, mid, I.ma, mm};
    iv.push_back({mid, I.b, mm, I.mb});
  }
  res.upper = std::max(res.upper, lower);
  res.value = lower;
  res.argmax_r = arg;
  res.rel_slack = lower > 0.0 ? res.upper / lower - 1.0 : 0.0;
  return res;
}

NormResult mixed_norm_detail(const DiskFunction& f, const SpaceParams& sp, const GridSpec& grid) {
  if (sp.q == kInf) {
    const double a = sp.alpha;
    return weighted_sup(f, sp.p, [a](double r) { return std::pow(1.0 - r, a); }, grid);
  }
  const double aq = sp.alpha * sp.q;
  if (f.max_radius() < 1.0) throw DomainError("mixed_norm: q < inf needs values up to the unit circle");
  NormResult res;
  bool tail_hit = false;
  auto integrand = [&](double u) {
    const double r = 1.0 - std::pow(u, 1.0 / aq);
    const double m = unchecked_mean(f, r, sp.p);
    if (f.tail_at(r) > grid.tail_rel_tol * m) tail_hit = true;
    return std::pow(m, sp.q);
  };
  quad::AdaptiveOptions ao;
  ao.rel_tol = 1e-9;
  ao.max_intervals = 4000;
  auto integral = quad::adaptive_gk15(integrand, 0.0, 1.0, ao);
  res.value = std::pow(integral.value, 1.0 / sp.q);
  res.upper = res.value;
  res.tail_limited = tail_hit;
  return res;
}

double mixed_norm(const DiskFunction& f, const SpaceParams& sp, const GridSpec& grid) {
  return mixed_norm_detail(f, sp, grid).value;
}

Decay classify_decay(const std::vector<double>& x, const std::vector<double>& y, const DecayThresholds& th) {
  if (x.size() != y.size() || x.size() < 2) return Decay::INCONCLUSIVE;
  const double xmin = *std::min_element(x.begin(), x.end());
  const double xmax = *std::max_element(x.begin(), x.end());
  if (!(xmin > 0.0)) return Decay::INCONCLUSIVE;
  const double span = std::pow(10.0, th.decades);
  if (xmin * span > xmax * (1.0 + 1e-9)) return Decay::INCONCLUSIVE;
  std::vector<double> Y;
  for (int k = 0; k <= th.decades; ++k) Y.push_back(y[nearest_index(x, xmin * std::pow(10.0, k))]);
  bool decays = true;
  for (int k = 0; k < th.decades; ++k)
    if (!(Y[static_cast<std::size_t>(k)] * th.shrink <= Y[static_cast<std::size_t>(k) + 1])) decays = false;
  if (decays) return Decay::DECAYS;
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 10.0 * xmin * (1.0 + 1e-9)) {
      lo = std::min(lo, y[i]);
      hi = std::max(hi, y[i]);
    }
  }
  if (hi > 0.0 && lo > th.persist_ratio * hi) return Decay::PERSISTS;
  return Decay::INCONCLUSIVE;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double decades) {
  const double xmin = *std::min_element(x.begin(), x.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > xmin * std::pow(10.0, decades) * (1.0 + 1e-9) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 3) return std::nan("");
  const double den = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / den;
}

Growth growth_trend(const std::vector<double>& x, const std::vector<double>& y, const DecayThresholds& th) {
  if (x.size() != y.size() || x.size() < 3) return Growth::INCONCLUSIVE;
  const double s = loglog_slope(x, y, 2.0);
  if (std::isnan(s)) return Growth::INCONCLUSIVE;
  if (s < th.slope_infinite) return Growth::INFINITE;
  if (s >= th.slope_finite) return Growth::FINITE;
  return Growth::INCONCLUSIVE;
}

DecayReport little_oh_profile(const DiskFunction& f, double p, double alpha, const GridSpec& grid,
                              const DecayThresholds& th) {
  auto prof = radial_profile(f, p, grid);
  DecayReport rep;
  for (std::size_t j = 0; j < prof.grid.size(); ++j) {
    const double x = 1.0 - prof.grid[j];
    rep.x.push_back(x);
    rep.values.push_back(std::pow(x, alpha) * prof.values[j]);
  }
  // r = 0 has x = 1; drop nothing, the classifier only looks at the tail.
  rep.verdict = classify_decay(rep.x, rep.values, th);
  return rep;
}

double bloch_seminorm(const AnalyticFunction& g, const GridSpec& grid) {
  const auto gp = differentiate(g);
  return weighted_sup(gp, kInf, [](double r) { return 1.0 - r * r; }, grid).value;
}

BlochReport little_bloch_verdict(const AnalyticFunction& g, const GridSpec& grid, const DecayThresholds& th) {
  const auto gp = differentiate(g);
  auto prof = radial_profile(gp, kInf, grid);
  BlochReport rep;
  std::vector<double> x;
  for (std::size_t j = 0; j < prof.grid.size(); ++j) {
    const double r = prof.grid[j];
    rep.grid.push_back(r);
    rep.values.push_back((1.0 - r * r) * prof.values[j]);
    x.push_back(1.0 - r);
  }
  if (rep.values.empty()) return rep;
  rep.seminorm = *std::max_element(rep.values.begin(), rep.values.end());
  rep.reference = rep.values.front();
  if (rep.reference == 0.0) {
    for (std::size_t j = 0; j < rep.grid.size() && rep.grid[j] <= 0.5; ++j)
      rep.reference = std::max(rep.reference, rep.values[j]);
  }
  if (rep.reference == 0.0) {
    rep.verdict = rep.seminorm == 0.0 ? BlochClass::LITTLE_BLOCH : BlochClass::INCONCLUSIVE;
    return rep;
  }
  if (rep.seminorm > th.unbounded_factor * rep.reference) {
    rep.verdict = BlochClass::NOT_BLOCH;
    return rep;
  }
  switch (classify_decay(x, rep.values, th)) {
    case Decay::DECAYS: rep.verdict = BlochClass::LITTLE_BLOCH; break;
    case Decay::PERSISTS: rep.verdict = BlochClass::BLOCH_ONLY; break;
    default: rep.verdict = BlochClass::INCONCLUSIVE; break;
  }
  return rep;
}

double point_eval_norm(cplx z, const SpaceParams& sp) {
  const double az = std::abs(z);
  if (az >= 1.0) throw DomainError("point_eval_norm: |z| >= 1");
  return std::pow(1.0 - az, -sp.growth_exponent());
}

std::string to_string(Decay d) {
  switch (d) {
    case Decay::DECAYS: return "DECAYS";
    case Decay::PERSISTS: return "PERSISTS";
    default: return "INCONCLUSIVE";
  }
}

std::string to_string(Growth g) {
  switch (g) {
    case Growth::FINITE: return "FINITE";
    case Growth::INFINITE: return "INFINITE";
    default: return "INCONCLUSIVE";
  }
}

std::string to_string(BlochClass b) {
  switch (b) {
    case BlochClass::LITTLE_BLOCH: return "LITTLE_BLOCH";
    case BlochClass::BLOCH_ONLY: return "BLOCH_ONLY";
    case BlochClass::NOT_BLOCH: return "NOT_BLOCH";
    default: return "INCONCLUSIVE";
  }
}

}  // namespace mixnorm
