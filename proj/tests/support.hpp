#pragma once

// Independent oracles for the test suites. Nothing here calls into the
// library's evaluation or enumeration code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "nwit/eigenfunction.hpp"

namespace oracle {

using Pair = std::pair<std::int64_t, std::int64_t>;

/// m^2/p^2 + n^2/q^2 == num/den, brute force in 64-bit integers.
inline std::vector<Pair> index_set_rational(std::int64_t p, std::int64_t q, std::int64_t num, std::int64_t den) {
  std::vector<Pair> out;
  const auto bound = static_cast<std::int64_t>(std::ceil(std::sqrt(double(num) / double(den)) * double(std::max(p, q)))) + 2;
  for (std::int64_t m = 0; m <= bound; ++m)
    for (std::int64_t n = 0; n <= bound; ++n)
      if ((m * m * q * q + n * n * p * p) * den == num * p * p * q * q) out.emplace_back(m, n);
  return out;
}

/// m^2/rho + n^2 == num/den with rho = rn/rd.
inline std::vector<Pair> index_set_quadratic(std::int64_t rn, std::int64_t rd, std::int64_t num, std::int64_t den) {
  std::vector<Pair> out;
  const double mu = double(num) / double(den);
  const auto bm = static_cast<std::int64_t>(std::ceil(std::sqrt(mu * double(rn) / double(rd)))) + 2;
  const auto bn = static_cast<std::int64_t>(std::ceil(std::sqrt(mu))) + 2;
  for (std::int64_t m = 0; m <= bm; ++m)
    for (std::int64_t n = 0; n <= bn; ++n)
      if ((m * m * rd + n * n * rn) * den == num * rn) out.emplace_back(m, n);
  return out;
}

/// Angular frequency of a native mode index along one direction.
inline double frequency(const nwit::Eigenfunction& u, std::int64_t k, double len, bool periodic) {
  if (u.rect().is_lifted()) return double(k);
  return (periodic ? 2.0 : 1.0) * std::numbers::pi * double(k) / len;
}

/// Plain std::cos / std::sin evaluation of every basis term.
inline double eval(const nwit::Eigenfunction& u, double x, double y) {
  const double c = u.rect().width();
  const double d = u.rect().height();
  const bool px = nwit::periodic_x(u.basis());
  const bool py = nwit::periodic_y(u.basis());
  double sum = 0.0;
  for (std::size_t f = 0; f < 4; ++f) {
    for (const auto& [md, a] : u.family(f)) {
      const double wx = frequency(u, md.m, c, px) * x;
      const double wy = frequency(u, md.n, d, py) * y;
      const double gx = (f == 2 || f == 3) ? std::sin(wx) : std::cos(wx);
      const double gy = (f == 1 || f == 3) ? std::sin(wy) : std::cos(wy);
      sum += a * gx * gy;
    }
  }
  return sum;
}

/// Minimum of f over n+1 uniform samples of [a,b].
inline std::pair<double, double> dense_min(const std::function<double(double)>& f, double a, double b, int n) {
  double best = std::numeric_limits<double>::infinity();
  double arg = a;
  for (int i = 0; i <= n; ++i) {
    const double t = a + (b - a) * double(i) / double(n);
    const double v = f(t);
    if (v < best) {
      best = v;
      arg = t;
    }
  }
  return {best, arg};
}

/// Sampled boundary minimum over uniform grids (endpoints included) of all edges.
inline double boundary_grid_min(const std::function<double(double, double)>& f, double c, double d, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double x = c * double(i) / double(n);
    const double y = d * double(i) / double(n);
    best = std::min({best, f(x, 0.0), f(x, d), f(0.0, y), f(c, y)});
  }
  return best;
}

inline double max_abs(const nwit::CoeffMap& m) {
  double out = 0.0;
  for (const auto& [_, a] : m) out = std::max(out, std::fabs(a));
  return out;
}

}  // namespace oracle
