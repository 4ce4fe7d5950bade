#include "mixnorm/quadrature.hpp"

#include "mixnorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace mixnorm::quad {

namespace {

Rule compute_gauss_legendre(std::size_t n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const auto dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : dn * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Kronrod 15-point nodes (positive half) and weights; Gauss 7-point weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Rule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

Integral adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                       const AdaptiveOptions& opts) {
  std::priority_queue<Piece> heap;
  Piece first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  std::size_t evals = 15;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (heap.size() >= opts.max_intervals)
      throw NonConvergenceError("adaptive quadrature: interval cap reached");
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = gk15(f, worst.a, mid);
    Piece right = gk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (mid <= worst.a || mid >= worst.b) break;
  }
  // re-sum to avoid drift from incremental updates
  double sum = 0.0;
  double esum = 0.0;
  const std::size_t count = heap.size();
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  return {sum, esum, evals, count};
}

Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double x_tol, std::size_t max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

}  // namespace mixnorm::quad
