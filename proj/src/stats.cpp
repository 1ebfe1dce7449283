#include "exmix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exmix::stats {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  double m = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    double d = x - m;
    m += d / static_cast<double>(k);
    m2 += d * (x - m);
  }
  s.mean = m;
  if (s.n > 1) {
    s.var = m2 / static_cast<double>(s.n - 1);
    s.se_mean = std::sqrt(s.var / static_cast<double>(s.n));
    s.se_var = s.var * std::sqrt(2.0 / static_cast<double>(s.n - 1));
  }
  return s;
}

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
  Interval iv;
  if (n == 0) {
    iv.lo = 0.0;
    iv.hi = 1.0;
    iv.center = 0.5;
    return iv;
  }
  double nn = static_cast<double>(n);
  double phat = static_cast<double>(successes) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (phat + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  iv.center = center;
  iv.lo = std::max(0.0, center - half);
  iv.hi = std::min(1.0, center + half);
  return iv;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Series and continued-fraction evaluation of the incomplete gamma function.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  // Pool sparse bins from the right so every expected count is >= 5.
  std::vector<double> obs, exp;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= 5.0) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0) {
    if (!exp.empty()) {
      obs.back() += o_acc;
      exp.back() += e_acc;
    } else {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
    }
  }
  ChiSquare r;
  if (exp.size() < 2) return r;
  for (std::size_t i = 0; i < exp.size(); ++i) {
    double d = obs[i] - exp[i];
    r.statistic += d * d / exp[i];
  }
  r.dof = static_cast<double>(exp.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i];
    nb += b[i];
  }
  ChiSquare r;
  if (na == 0.0 || nb == 0.0) return r;
  // Pool categories so each pooled total is >= 10.
  std::vector<double> pa, pb;
  double aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i];
    bb += b[i];
    if (aa + bb >= 10.0) {
      pa.push_back(aa);
      pb.push_back(bb);
      aa = bb = 0.0;
    }
  }
  if (aa + bb > 0.0 && !pa.empty()) {
    pa.back() += aa;
    pb.back() += bb;
  }
  if (pa.size() < 2) return r;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double tot = pa[i] + pb[i];
    double ea = tot * na / (na + nb);
    double eb = tot * nb / (na + nb);
    if (ea > 0.0) r.statistic += (pa[i] - ea) * (pa[i] - ea) / ea;
    if (eb > 0.0) r.statistic += (pb[i] - eb) * (pb[i] - eb) / eb;
  }
  r.dof = static_cast<double>(pa.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double two_proportion_p(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
  if (n1 == 0 || n2 == 0) return 1.0;
  double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  double pool = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  double se = std::sqrt(pool * (1.0 - pool) *
                        (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return 1.0;
  double z = std::fabs(p1 - p2) / se;
  return 2.0 * normal_sf(z);
}

double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
              static_cast<double>(a.size() + b.size());
  double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lam * lam);
    sum += term;
    if (std::fabs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double mann_whitney_less_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t na = a.size(), nb = b.size();
  if (na == 0 || nb == 0) return 1.0;
  struct Tagged {
    double v;
    int who;
  };
  std::vector<Tagged> all;
  all.reserve(na + nb);
  for (double v : a) all.push_back({v, 0});
  for (double v : b) all.push_back({v, 1});
  std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.v < y.v; });
  // Midranks with tie correction.
  std::vector<double> rank(all.size());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j + 1 < all.size() && all[j + 1].v == all[i].v) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[k] = r;
    double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  double ra = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k)
    if (all[k].who == 0) ra += rank[k];
  double u_stat = ra - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
  double n = static_cast<double>(na + nb);
  double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
               (n + 1.0 - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;
  // Small-a ranks support "a < b"; continuity-corrected normal approximation.
  double z = (u_stat - mu + 0.5) / std::sqrt(var);
  return 1.0 - normal_sf(z);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  LinearFit f;
  if (den == 0.0) return f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace exmix::stats
