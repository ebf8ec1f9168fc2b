#pragma once

// Brute-force reference formulas used by the tests. Written against plain
// std::vector with pow/log and explicit loops, sharing no code with the
// library, so an agreement is evidence and not a tautology.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using V = std::vector<double>;

inline bool near_one(double q) { return q == 1.0; }

inline double lnq(double x, double q) {
  return near_one(q) ? std::log(x) : (std::pow(x, 1.0 - q) - 1.0) / (1.0 - q);
}

inline double expq(double x, double q) {
  return near_one(q) ? std::exp(x) : std::pow(1.0 + (1.0 - q) * x, 1.0 / (1.0 - q));
}

inline double sum_pow(const V& p, double q) {
  double s = 0.0;
  for (double x : p) s += std::pow(x, q);
  return s;
}

inline double shannon(const V& p) {
  double h = 0.0;
  for (double x : p) h -= x * std::log(x);
  return h;
}

// (sum p^q - 1) / (1 - q)
inline double tsallis(const V& p, double q) {
  return near_one(q) ? shannon(p) : (sum_pow(p, q) - 1.0) / (1.0 - q);
}

inline double renyi(const V& p, double q) {
  return near_one(q) ? shannon(p) : std::log(sum_pow(p, q)) / (1.0 - q);
}

inline double kl(const V& p, const V& r) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(p[i] / r[i]);
  return d;
}

inline double mixed_pow(const V& p, const V& r, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::pow(p[i], q) * std::pow(r[i], 1.0 - q);
  return s;
}

// (sum p^q r^(1-q) - 1) / (q - 1)
inline double tsallis_rel(const V& p, const V& r, double q) {
  return near_one(q) ? kl(p, r) : (mixed_pow(p, r, q) - 1.0) / (q - 1.0);
}

inline double renyi_rel(const V& p, const V& r, double q) {
  return near_one(q) ? kl(p, r) : std::log(mixed_pow(p, r, q)) / (q - 1.0);
}

inline double f_div(const std::function<double(double)>& f, const V& p, const V& r) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += r[i] * f(p[i] / r[i]);
  return d;
}

inline double arithmetic_mean(const V& x, const V& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m += p[i] * x[i];
  return m;
}

inline double geometric_mean(const V& x, const V& p) {
  double m = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) m *= std::pow(x[i], p[i]);
  return m;
}

// Weighted power mean of order s != 0.
inline double power_mean(const V& x, const V& p, double s) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m += p[i] * std::pow(x[i], s);
  return std::pow(m, 1.0 / s);
}

inline double pairwise(const V& x, const V& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += p[i] * p[j] * (x[j] - x[i]) * (x[j] - x[i]);
  }
  return s;
}

inline double variance(const V& x, const V& p) {
  const double m = arithmetic_mean(x, p);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += p[i] * (x[i] - m) * (x[i] - m);
  return s;
}

// Row-major 2-axis table: H_q(Y | X) = sum_x p(x)^q H_q(p(.|x)).
inline double conditional_rows(const V& cells, std::size_t rows, std::size_t cols, double q) {
  double h = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double px = 0.0;
    for (std::size_t j = 0; j < cols; ++j) px += cells[i * cols + j];
    V cond(cols);
    for (std::size_t j = 0; j < cols; ++j) cond[j] = cells[i * cols + j] / px;
    h += (near_one(q) ? px : std::pow(px, q)) * tsallis(cond, q);
  }
  return h;
}

// Marginal of a row-major table onto the axes with keep[a] = true.
inline V marginal(const V& cells, const std::vector<std::size_t>& dims,
                  const std::vector<bool>& keep) {
  std::size_t out_size = 1;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (keep[a]) out_size *= dims[a];
  }
  V out(out_size, 0.0);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (double c : cells) {
    std::size_t o = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) {
      if (keep[a]) o = o * dims[a] + idx[a];
    }
    out[o] += c;
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

// sum_i (1 - p_i) log(1 / (1 - w_i)) with w = p or r.
inline double complement_cross(const V& p, const V& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (1.0 - p[i]) * -std::log(1.0 - w[i]);
  return s;
}

// Flat Dirichlet via gamma(1) variates; independent of the library sampler.
inline V dirichlet(std::size_t n, std::mt19937_64& rng, double floor = 1e-6) {
  std::gamma_distribution<double> g(1.0, 1.0);
  V w(n);
  double s = 0.0;
  for (auto& x : w) {
    x = g(rng) + floor;
    s += x;
  }
  for (auto& x : w) x /= s;
  return w;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
