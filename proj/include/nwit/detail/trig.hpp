#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace nwit::detail {

// cos(pi*r) and sin(pi*r) with exact reduction of r modulo 2, so that
// integer and half-integer arguments give exact +-1 and 0.

inline double cospi(double r) {
  r = std::fmod(std::fabs(r), 2.0);
  if (r > 1.0) r = 2.0 - r;
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  if (r <= 0.25) return sign * std::cos(std::numbers::pi * r);
  return sign * std::sin(std::numbers::pi * (0.5 - r));
}

inline double sinpi(double r) {
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  r = std::fmod(r, 2.0);
  if (r > 1.0) {
    r -= 1.0;
    sign = -sign;
  }
  if (r > 0.5) r = 1.0 - r;
  if (r <= 0.25) return sign * std::sin(std::numbers::pi * r);
  return sign * std::cos(std::numbers::pi * (0.5 - r));
}

/// cos(pi*i/n) and sin(pi*i/n) for i in [0, 2n): the phases met when a
/// trig polynomial with integer half-turn indices is sampled at t = j*len/n.
class HalfTurnTable {
 public:
  explicit HalfTurnTable(std::int64_t n) : n_(n), cos_(2 * n), sin_(2 * n) {
    for (std::int64_t i = 0; i < 2 * n; ++i) {
      const double r = static_cast<double>(i) / static_cast<double>(n);
      cos_[i] = cospi(r);
      sin_[i] = sinpi(r);
    }
  }

  std::int64_t n() const { return n_; }

  /// cos(pi * h * j / n)
  double cos(std::int64_t h, std::int64_t j) const { return cos_[index(h, j)]; }
  double sin(std::int64_t h, std::int64_t j) const { return sin_[index(h, j)]; }

 private:
  std::size_t index(std::int64_t h, std::int64_t j) const {
    std::int64_t k = (h * j) % (2 * n_);
    if (k < 0) k += 2 * n_;
    return static_cast<std::size_t>(k);
  }

  std::int64_t n_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Golden-section search for a minimum of f on [a,b]. Returns the abscissa.
template <class F>
double golden_section_min(F&& f, double a, double b, int iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations && (b - a) > 1e-15 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
    if (fc < fd) {
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
  return fc < fd ? c : d;
}

}  // namespace nwit::detail
