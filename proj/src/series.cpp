#include "mixnorm/series.hpp"

#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace mixnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kDirectProductLimit = 1u << 16;  // n*m below this: schoolbook

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Envelope for the coefficients above the stored degree, estimated from the
// last tenth of the stored ones. Used where no closed-form asymptotics exist.
TailBound estimated_tail(const std::vector<cplx>& c, double max_ratio) {
  const std::size_t n = c.size() - 1;
  if (n < 2) return TailBound::from_envelope({n, std::abs(c[n]), 0.0, std::min(1.0, max_ratio)}, false);
  const std::size_t w = std::max<std::size_t>(1, n / 10);
  double last = 0.0;
  double prev = 0.0;
  for (std::size_t k = n + 1 - w; k <= n; ++k) last = std::max(last, std::abs(c[k]));
  for (std::size_t k = n + 1 - 2 * w; k <= n - w; ++k) prev = std::max(prev, std::abs(c[k]));
  if (last == 0.0) return {};
  double q = prev > 0.0 ? std::pow(last / prev, 1.0 / static_cast<double>(w)) : max_ratio;
  q = std::clamp(q, 1e-3, max_ratio);
  return TailBound::from_envelope({n, last, 0.0, q}, false);
}

TailBound combine_sum(const TailBound& a, const TailBound& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const bool cert = a.certified() && b.certified();
  if (a.envelope() && b.envelope() && a.envelope()->degree == b.envelope()->degree) {
    const auto& x = *a.envelope();
    const auto& y = *b.envelope();
    return TailBound::from_envelope(
        {x.degree, x.anchor + y.anchor, std::max(x.exponent, y.exponent), std::max(x.ratio, y.ratio)}, cert);
  }
  return TailBound::from_function([a, b](double r) { return a.at(r) + b.at(r); }, cert);
}

}  // namespace

// ---------------------------------------------------------------- TailBound

double envelope_tail(const Envelope& env, double r) {
  if (env.anchor == 0.0 || r == 0.0) return 0.0;
  const double rho_r = env.ratio * r;
  if (rho_r >= 1.0) return kInf;
  const double D = static_cast<double>(std::max<std::size_t>(env.degree, 1));
  const double e = std::max(env.exponent, 0.0);
  const double lead = env.anchor * std::pow(r, static_cast<double>(env.degree));
  if (lead == 0.0) return 0.0;
  const double y = rho_r * std::exp(e / D);
  double closed = kInf;
  if (y < 1.0) closed = lead * y / (1.0 - y);
  if (y < 0.999) return closed;
  // Direct summation until the term ratio drops below one and the geometric
  // remainder is negligible.
  double term = lead;
  double sum = 0.0;
  double k = D;
  for (std::size_t it = 0; it < 20'000'000; ++it) {
    const double q = std::pow((k + 1.0) / k, e) * rho_r;
    term *= q;
    k += 1.0;
    sum += term;
    const double q_next = std::pow((k + 1.0) / k, e) * rho_r;
    if (q_next < 1.0) {
      const double rem = term * q_next / (1.0 - q_next);
      if (rem <= 1e-3 * sum) return std::min(closed, sum + rem);
    }
  }
  return closed;
}

TailBound TailBound::from_envelope(const Envelope& env, bool certified) {
  TailBound t;
  if (env.anchor == 0.0) return t;
  t.envelope_ = env;
  t.envelope_->exponent = std::max(env.exponent, 0.0);
  t.certified_ = certified;
  return t;
}

TailBound TailBound::from_function(std::function<double(double)> fn, bool certified) {
  TailBound t;
  t.fn_ = std::move(fn);
  t.certified_ = certified;
  return t;
}

double TailBound::at(double r) const {
  if (envelope_) return envelope_tail(*envelope_, r);
  if (fn_) return fn_(r);
  return 0.0;
}

// ---------------------------------------------------------- AnalyticFunction

AnalyticFunction::AnalyticFunction()
    : coeffs_(std::make_shared<const std::vector<cplx>>(1, cplx{})),
      block_max_(std::make_shared<const std::vector<double>>(1, 0.0)) {}

AnalyticFunction::AnalyticFunction(std::vector<cplx> coefficients, TailBound tail)
    : tail_(std::move(tail)) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  std::vector<double> bm((coefficients.size() + kBlock - 1) / kBlock, 0.0);
  for (std::size_t k = 0; k < coefficients.size(); ++k) bm[k / kBlock] = std::max(bm[k / kBlock], std::norm(coefficients[k]));
  coeffs_ = std::make_shared<const std::vector<cplx>>(std::move(coefficients));
  block_max_ = std::make_shared<const std::vector<double>>(std::move(bm));
}

double AnalyticFunction::abs_sum(double r) const {
  const auto& c = *coeffs_;
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * r + std::abs(c[k]);
  return s;
}

cplx eval(const AnalyticFunction& f, cplx z) {
  const double az = std::abs(z);
  if (az > 1.0 + 1e-15) throw DomainError("eval: |z| > 1");
  if (az >= 1.0 - 1e-15 && !f.is_polynomial()) throw DomainError("eval: |z| = 1 on a truncated series");
  const auto& c = f.coefficients();
  cplx s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

CircleSamples circle_samples(const AnalyticFunction& f, double r, std::size_t M) {
  if (!(r > 0.0) || r > 1.0) throw DomainError("circle_samples: radius outside (0, 1]");
  if (r == 1.0 && !f.is_polynomial()) throw DomainError("circle_samples: r = 1 on a truncated series");
  if (!is_pow2(M)) throw DomainError("circle_samples: M must be a power of two");
  const auto& c = f.coefficients();
  std::vector<cplx> scaled(c.size());
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    scaled[k] = c[k] * rk;
    rk *= r;
  }
  return {r, fft::evaluate_on_roots(scaled, M)};
}

AnalyticFunction cauchy_product(const AnalyticFunction& f, const AnalyticFunction& g) {
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  const std::size_t n = a.size() + b.size() - 1;
  std::vector<cplx> out(n);
  if (a.size() * b.size() <= kDirectProductLimit || std::min(a.size(), b.size()) <= 16) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == cplx{}) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
  } else {
    const std::size_t M = fft::next_pow2(n);
    auto fa = fft::evaluate_on_roots(a, M);
    auto fb = fft::evaluate_on_roots(b, M);
    for (std::size_t k = 0; k < M; ++k) fa[k] *= fb[k];
    auto prod = fft::interpolate_from_roots(fa);
    std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n), out.begin());
  }
  TailBound tail;
  if (!f.is_polynomial() || !g.is_polynomial()) {
    tail = TailBound::from_function(
        [f, g](double r) {
          const double tf = f.tail_at(r);
          const double tg = g.tail_at(r);
          double s = tg > 0.0 ? tg * f.abs_sum(r) : 0.0;
          if (tf > 0.0) s += tf * (g.abs_sum(r) + tg);
          return s;
        },
        f.tail().certified() && g.tail().certified());
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction differentiate(const AnalyticFunction& f) {
  const auto& c = f.coefficients();
  std::vector<cplx> out(std::max<std::size_t>(c.size() - 1, 1));
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * static_cast<double>(k);
  TailBound tail;
  if (!f.is_polynomial()) {
    const auto& env = f.tail().envelope();
    if (env && env->degree >= 2) {
      tail = TailBound::from_envelope(
          {env->degree - 1, env->anchor * static_cast<double>(env->degree), env->exponent + 1.0, env->ratio},
          f.tail().certified());
    } else {
      // Cauchy estimate on the circle of radius (1+r)/2.
      tail = TailBound::from_function(
          [f](double r) {
            const double R = 0.5 * (1.0 + r);
            return f.tail_at(R) * R / ((R - r) * (R - r));
          },
          f.tail().certified());
    }
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction volterra_primitive(const AnalyticFunction& f) {
  const auto& c = f.coefficients();
  std::vector<cplx> out(c.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
  TailBound tail;
  if (!f.is_polynomial()) {
    const auto& env = f.tail().envelope();
    if (env && env->degree >= 1) {
      const double D = static_cast<double>(env->degree);
      tail = TailBound::from_envelope(
          {env->degree + 1, env->anchor / (D + 2.0) * std::pow((D + 1.0) / D, env->exponent), env->exponent,
           env->ratio},
          f.tail().certified());
    } else {
      tail = TailBound::from_function([f](double r) { return r * f.tail_at(r); }, f.tail().certified());
    }
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction dilate(const AnalyticFunction& f, double r) {
  if (r < 0.0 || r > 1.0) throw DomainError("dilate: r outside [0, 1]");
  if (r == 0.0) return constant(f.coefficient(0));
  return scale_argument(f, r);
}

AnalyticFunction scale_argument(const AnalyticFunction& f, cplx c) {
  const double ac = std::abs(c);
  if (ac > 1.0 + 1e-15) throw DomainError("scale_argument: |c| > 1");
  const auto& a = f.coefficients();
  std::vector<cplx> out(a.size());
  cplx ck = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = a[k] * ck;
    ck *= c;
  }
  TailBound tail;
  if (!f.is_polynomial()) {
    if (const auto& env = f.tail().envelope()) {
      tail = TailBound::from_envelope({env->degree, env->anchor * std::pow(ac, static_cast<double>(env->degree)),
                                       env->exponent, env->ratio * ac},
                                      f.tail().certified());
    } else {
      tail = TailBound::from_function([f, ac](double r) { return f.tail_at(ac * r); }, f.tail().certified());
    }
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction add(const AnalyticFunction& f, const AnalyticFunction& g) {
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  std::vector<cplx> out(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return AnalyticFunction(std::move(out), combine_sum(f.tail(), g.tail()));
}

AnalyticFunction subtract(const AnalyticFunction& f, const AnalyticFunction& g) { return add(f, scale(g, -1.0)); }

AnalyticFunction scale(const AnalyticFunction& f, cplx c) {
  std::vector<cplx> out = f.coefficients();
  for (auto& v : out) v *= c;
  const double ac = std::abs(c);
  TailBound tail;
  if (!f.is_polynomial() && ac != 0.0) {
    if (const auto& env = f.tail().envelope()) {
      Envelope e = *env;
      e.anchor *= ac;
      tail = TailBound::from_envelope(e, f.tail().certified());
    } else {
      tail = TailBound::from_function([f, ac](double r) { return ac * f.tail_at(r); }, f.tail().certified());
    }
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction shift(const AnalyticFunction& f, std::size_t m) {
  std::vector<cplx> out(f.coefficients().size() + m);
  std::copy(f.coefficients().begin(), f.coefficients().end(), out.begin() + static_cast<std::ptrdiff_t>(m));
  TailBound tail;
  if (!f.is_polynomial()) {
    const auto& env = f.tail().envelope();
    if (env && env->degree >= 1) {
      const double D = static_cast<double>(env->degree);
      tail = TailBound::from_envelope(
          {env->degree + m, env->anchor * std::pow((D + static_cast<double>(m)) / D, env->exponent), env->exponent,
           env->ratio},
          f.tail().certified());
    } else {
      tail = TailBound::from_function(
          [f, m](double r) { return std::pow(r, static_cast<double>(m)) * f.tail_at(r); }, f.tail().certified());
    }
  }
  return AnalyticFunction(std::move(out), std::move(tail));
}

AnalyticFunction truncate(const AnalyticFunction& f, std::size_t n) {
  if (n >= f.degree()) return f;
  const auto& c = f.coefficients();
  std::vector<cplx> kept(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n + 1));
  std::vector<double> dropped;
  dropped.reserve(c.size() - n - 1);
  for (std::size_t k = n + 1; k < c.size(); ++k) dropped.push_back(std::abs(c[k]));
  auto data = std::make_shared<const std::vector<double>>(std::move(dropped));
  TailBound old = f.tail();
  auto fn = [data, old, n](double r) {
    double s = 0.0;
    for (std::size_t k = data->size(); k-- > 0;) s = s * r + (*data)[k];
    return s * std::pow(r, static_cast<double>(n + 1)) + old.at(r);
  };
  return AnalyticFunction(std::move(kept), TailBound::from_function(fn, old.certified()));
}

AnalyticFunction reexpand_from_samples(const CircleSamples& samples, std::size_t N, double tol) {
  const std::size_t M = samples.size();
  const double rho = samples.radius;
  if (!is_pow2(M)) throw DomainError("reexpand_from_samples: M must be a power of two");
  if (N > M / 2) throw DomainError("reexpand_from_samples: N exceeds M/2");
  if (!(rho > 0.0) || rho > 1.0) throw DomainError("reexpand_from_samples: radius outside (0, 1]");
  double vmax = 0.0;
  for (const auto& v : samples.values) vmax = std::max(vmax, std::abs(v));
  const double noise = DBL_EPSILON * vmax;
  const double amplification = std::pow(rho, -static_cast<double>(N));
  if (amplification * noise > tol)
    throw ConditioningError("reexpand_from_samples: rho^-N amplifies round-off beyond tolerance");
  auto b = fft::interpolate_from_roots(samples.values);
  std::vector<cplx> c(N + 1);
  double inv = 1.0;
  for (std::size_t k = 0; k <= N; ++k) {
    c[k] = b[k] * inv;
    inv /= rho;
  }
  TailBound tail = estimated_tail(c, 1.0 / rho);
  return AnalyticFunction(std::move(c), std::move(tail));
}

// ------------------------------------------------------------------ builders

AnalyticFunction monomial(std::size_t n, cplx c) {
  std::vector<cplx> v(n + 1);
  v[n] = c;
  return AnalyticFunction(std::move(v));
}

AnalyticFunction constant(cplx c) { return AnalyticFunction(std::vector<cplx>{c}); }

AnalyticFunction polynomial(std::vector<cplx> coefficients) { return AnalyticFunction(std::move(coefficients)); }

AnalyticFunction binomial_series(cplx w, double s, std::size_t degree) {
  if (std::abs(w) > 1.0 + 1e-15) throw DomainError("binomial_series: |w| > 1");
  std::vector<cplx> c(degree + 1);
  c[0] = 1.0;
  for (std::size_t k = 0; k < degree; ++k)
    c[k + 1] = c[k] * ((static_cast<double>(k) + s) / static_cast<double>(k + 1)) * w;
  const bool terminates = s <= 0.0 && std::floor(s) == s && static_cast<double>(degree) >= -s;
  if (terminates || w == cplx{}) return AnalyticFunction(std::move(c));
  const double last = std::abs(c[degree]);
  if (degree == 0 || static_cast<double>(degree) < std::abs(s)) {
    // Envelope hypotheses need degree > |s|; fall back to a crude bound.
    throw DomainError("binomial_series: degree must exceed |s|");
  }
  Envelope env{degree, last, std::max(s - 1.0, 0.0), std::abs(w)};
  return AnalyticFunction(std::move(c), TailBound::from_envelope(env));
}

AnalyticFunction log_series(cplx w, std::size_t degree) {
  if (std::abs(w) > 1.0 + 1e-15) throw DomainError("log_series: |w| > 1");
  std::vector<cplx> c(degree + 1);
  cplx wk = 1.0;
  for (std::size_t k = 1; k <= degree; ++k) {
    wk *= w;
    c[k] = wk / static_cast<double>(k);
  }
  if (w == cplx{} || degree == 0) return AnalyticFunction(std::move(c));
  const double last = std::abs(c[degree]);
  return AnalyticFunction(std::move(c), TailBound::from_envelope({degree, last, 0.0, std::abs(w)}));
}

AnalyticFunction reciprocal(const AnalyticFunction& f, std::size_t degree) {
  const cplx f0 = f.coefficient(0);
  if (f0 == cplx{}) throw ExpansionError("reciprocal: vanishing constant term");
  std::vector<cplx> g{1.0 / f0};
  const auto& fc = f.coefficients();
  std::size_t n = 1;
  while (n < degree + 1) {
    const std::size_t n2 = std::min(2 * n, degree + 1);
    std::vector<cplx> fpart(fc.begin(), fc.begin() + static_cast<std::ptrdiff_t>(std::min(n2, fc.size())));
    auto e = cauchy_product(AnalyticFunction(fpart), AnalyticFunction(g)).coefficients();
    e.resize(n2);
    for (auto& v : e) v = -v;
    e[0] += 2.0;
    auto next = cauchy_product(AnalyticFunction(g), AnalyticFunction(e)).coefficients();
    next.resize(n2);
    g = std::move(next);
    n = n2;
  }
  TailBound tail;
  const bool poly_inverse = f.is_polynomial() && f.degree() == 0;
  if (!poly_inverse) tail = estimated_tail(g, 1.0);
  return AnalyticFunction(std::move(g), std::move(tail));
}

std::size_t effective_degree(const AnalyticFunction& f, double r, double eps) {
  const auto& c = f.coefficients();
  const double total = f.abs_sum(r);
  if (total == 0.0) return 0;
  std::vector<double> terms(c.size());
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    terms[k] = std::abs(c[k]) * rk;
    rk *= r;
  }
  double suffix = 0.0;
  for (std::size_t k = c.size() - 1; k > 0; --k) {
    if (suffix + terms[k] > eps * total) return k;
    suffix += terms[k];
  }
  return 0;
}

double parseval_mean_square(const AnalyticFunction& f, double r) {
  const auto& c = f.coefficients();
  const double r2 = r * r;
  std::size_t top = c.size();
  if (r < 1.0 && r > 0.0) {
    // Skip trailing blocks whose combined bound is below 1e-18 of a lower
    // bound for the whole sum.
    constexpr double B = static_cast<double>(AnalyticFunction::kBlock);
    const auto& bm = f.block_max_norm();
    const double lr = 2.0 * B * std::log(r);
    double lower = 0.0;
    for (std::size_t b = 0; b < bm.size(); ++b)
      if (bm[b] > 0.0) lower = std::max(lower, bm[b] * std::exp(lr * static_cast<double>(b + 1)));
    double suffix = 0.0;
    std::size_t cut = bm.size();
    while (cut > 0) {
      const double t = bm[cut - 1] * B * std::exp(lr * static_cast<double>(cut - 1));
      if (suffix + t > 1e-18 * lower) break;
      suffix += t;
      --cut;
    }
    top = std::min(top, cut * AnalyticFunction::kBlock);
  }
  double s = 0.0;
  for (std::size_t k = top; k-- > 0;) s = s * r2 + std::norm(c[k]);
  return s;
}

// -------------------------------------------------------------- DiskFunction

DiskFunction::DiskFunction(AnalyticFunction f) : series_(std::move(f)) {}

DiskFunction::DiskFunction(Evaluator ev, EvaluatorOptions opts) : eval_(std::move(ev)), opts_(opts) {}

cplx DiskFunction::operator()(cplx z) const {
  if (series_) return eval(*series_, z);
  if (std::abs(z) > opts_.max_radius + 1e-15) throw DomainError("evaluator: point outside its disk");
  return eval_(z);
}

double DiskFunction::max_radius() const { return series_ ? 1.0 : opts_.max_radius; }

std::vector<cplx> DiskFunction::samples(double r, std::size_t M) const {
  if (series_) return circle_samples(*series_, r, M).values;
  if (r > opts_.max_radius + 1e-15) throw DomainError("evaluator: radius outside its disk");
  std::vector<cplx> out(M);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(M);
  for (std::size_t j = 0; j < M; ++j) out[j] = eval_(std::polar(r, step * static_cast<double>(j)));
  return out;
}

}  // namespace mixnorm
