#pragma once

// Neumann spectrum of a rectangle: eigenvalues, index sets and multiplicities.
//
// Eigenvalues are stored as mu = lambda / pi^2 (on the lifted 2pi-square, as
// lambda itself), exactly as a Rational for the rational, quadratic and
// lifted cases. Degeneracy is decided by exact comparison of integer keys.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nwit/error.hpp"
#include "nwit/exact.hpp"

namespace nwit {

struct ModeIndex {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

/// mu = lambda / pi^2; exact Rational on exact rectangles, double on generic ones.
class SpectralParam {
 public:
  SpectralParam() : value_(Rational{}) {}
  SpectralParam(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  SpectralParam(double d) : value_(d) {}               // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const {
    if (!is_exact()) throw NotExactlyEnumerable("spectral parameter is not exact");
    return std::get<Rational>(value_);
  }
  double value() const {
    if (auto* r = std::get_if<Rational>(&value_)) return r->to_double();
    return std::get<double>(value_);
  }
  bool is_zero() const { return is_exact() ? exact().is_zero() : std::get<double>(value_) == 0.0; }

  std::string str() const { return is_exact() ? exact().str() : std::to_string(value()); }

  friend bool operator==(const SpectralParam& a, const SpectralParam& b) { return a.value_ == b.value_; }

 private:
  std::variant<Rational, double> value_;
};

/// Relative tolerance for matching a floating spectral parameter (generic case).
inline constexpr double kGenericMuTolerance = 1e-12;

inline SpectralParam eigenvalue(const Rectangle& rect, ModeIndex mode) {
  if (mode.m < 0 || mode.n < 0) throw InputError("mode indices must be non-negative");
  if (rect.is_generic()) {
    const double m = static_cast<double>(mode.m);
    const double n = static_cast<double>(mode.n);
    return SpectralParam(m * m * rect.weight_x_real() + n * n * rect.weight_y_real());
  }
  const BigInt m2 = BigInt(mode.m) * mode.m;
  const BigInt n2 = BigInt(mode.n) * mode.n;
  return SpectralParam(Rational(m2) * rect.weight_x() + Rational(n2) * rect.weight_y());
}

/// True when `mode` has spectral parameter `mu` (exactly, or to relative
/// tolerance on a generic rectangle).
inline bool has_eigenvalue(const Rectangle& rect, ModeIndex mode, const SpectralParam& mu) {
  SpectralParam ev = eigenvalue(rect, mode);
  if (ev.is_exact() && mu.is_exact()) return ev.exact() == mu.exact();
  if (ev.is_exact() != mu.is_exact()) return false;
  const double a = ev.value();
  const double b = mu.value();
  return std::fabs(a - b) <= kGenericMuTolerance * std::max(1.0, std::fabs(b));
}

using ModeSet = std::vector<ModeIndex>;

/// All (m,n) with eigenvalue mu, sorted. Empty when mu is not attained.
inline ModeSet index_set(const Rectangle& rect, const SpectralParam& mu) {
  if (rect.is_generic() || !mu.is_exact())
    throw NotExactlyEnumerable(
        "index sets are enumerable only for rational and quadratic rectangles; generic "
        "eigenvalues are simple");
  const Rational& target = mu.exact();
  ModeSet out;
  if (target.sign() < 0) return out;
  const Rational wx = rect.weight_x();
  const Rational wy = rect.weight_y();
  for (std::int64_t m = 0;; ++m) {
    Rational rest = target - Rational(BigInt(m) * m) * wx;
    if (rest.sign() < 0) break;
    Rational n2 = rest / wy;
    if (n2.is_integer() && is_perfect_square(n2.num())) {
      out.push_back({m, isqrt(n2.num()).convert_to<std::int64_t>()});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Eigenspace {
  SpectralParam mu;
  ModeSet modes;

  std::size_t multiplicity() const { return modes.size(); }
};

namespace detail {

// Integer keys K(m,n) = m^2*kx + n^2*ky with mu = K / denom.
struct IntegerKeys {
  BigInt kx;
  BigInt ky;
  BigInt denom;
};

inline IntegerKeys integer_keys(const Rectangle& rect) {
  const Rational wx = rect.weight_x();
  const Rational wy = rect.weight_y();
  BigInt denom = lcm(wx.den(), wy.den());
  return {wx.num() * (denom / wx.den()), wy.num() * (denom / wy.den()), denom};
}

inline void check_axis_exclusion(const Rectangle& rect, const Eigenspace& es) {
  if (!rect.is_quadratic()) return;
  bool x_axis = false;
  bool y_axis = false;
  for (const auto& md : es.modes) {
    if (md.m > 0 && md.n == 0) x_axis = true;
    if (md.m == 0 && md.n > 0) y_axis = true;
  }
  if (x_axis && y_axis)
    throw InconsistentSpectrum("mu=" + es.mu.str() + " has both axis modes on " + rect.describe());
}

}  // namespace detail

/// Every distinct mu <= mu_max with its index set, ascending in mu.
inline std::vector<Eigenspace> enumerate(const Rectangle& rect, const Rational& mu_max) {
  if (rect.is_generic())
    throw NotExactlyEnumerable("cannot enumerate the spectrum of a generic rectangle exactly");
  if (mu_max.sign() <= 0) throw InputError("enumerate needs mu_max > 0");

  const auto keys = detail::integer_keys(rect);
  const BigInt key_max = (mu_max * Rational(keys.denom)).floor();

  std::map<BigInt, ModeSet> groups;
  for (std::int64_t m = 0;; ++m) {
    const BigInt base = BigInt(m) * m * keys.kx;
    if (base > key_max) break;
    for (std::int64_t n = 0;; ++n) {
      BigInt key = base + BigInt(n) * n * keys.ky;
      if (key > key_max) break;
      groups[std::move(key)].push_back({m, n});
    }
  }

  std::vector<Eigenspace> out;
  out.reserve(groups.size());
  for (auto& [key, modes] : groups) {
    std::sort(modes.begin(), modes.end());
    Eigenspace es{SpectralParam(Rational(key, keys.denom)), std::move(modes)};
    detail::check_axis_exclusion(rect, es);
    out.push_back(std::move(es));
  }
  return out;
}

}  // namespace nwit
