#pragma once

// Exact arithmetic primitives, rectangle descriptions and the three-way
// rationality classification of a rectangle.
//
// Everything in this header is an immutable value type; operations are pure.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "nwit/error.hpp"

namespace nwit {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InputError("isqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  return r * r == n;
}

inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

// ---------------------------------------------------------------------------
// Rational

/// Exact rational in lowest terms with a positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n) : num_(n) {}          // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  /// True when this is the square of some rational.
  bool is_square() const { return is_perfect_square(num_) && is_perfect_square(den_); }

  double to_double() const {
    // Both parts may exceed double range individually; shift them together.
    using boost::multiprecision::msb;
    if (num_ == 0) return 0.0;
    BigInt a = abs(num_);
    const long shift_n = static_cast<long>(msb(a));
    const long shift_d = static_cast<long>(msb(den_));
    if (shift_n < 1000 && shift_d < 1000) return nwit::to_double(num_) / nwit::to_double(den_);
    const long drop = std::max(shift_n, shift_d) - 900;
    BigInt n2 = a >> drop;
    BigInt d2 = den_ >> drop;
    double v = nwit::to_double(n2) / nwit::to_double(d2);
    return num_ < 0 ? -v : v;
  }

  std::string str() const { return num_.str() + "/" + den_.str(); }

  /// Parses "n/d" or a bare integer "n".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
      BigInt n(std::string(text.substr(0, slash)));
      BigInt d(std::string(text.substr(slash + 1)));
      if (d == 0) throw InputError("rational with zero denominator: " + std::string(text));
      return Rational(std::move(n), std::move(d));
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const InputError*>(&e)) throw;
      throw InputError("malformed rational: '" + std::string(text) + "'");
    }
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InputError("division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Largest integer not exceeding this value.
  BigInt floor() const {
    BigInt q = num_ / den_;  // truncates toward zero
    if (num_ < 0 && q * den_ != num_) q -= 1;
    return q;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void reduce() {
    if (den_ == 0) throw InputError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_{0};
  BigInt den_{1};
};

// ---------------------------------------------------------------------------
// Rectangles

enum class CaseTag { C1, C2, C3 };

inline std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::C1: return "C1";
    case CaseTag::C2: return "C2";
    case CaseTag::C3: return "C3";
  }
  return "?";
}

/// Side ratio c/d = p/q with gcd(p,q) = 1; the domain is [0,p] x [0,q].
struct RationalCase {
  BigInt p;
  BigInt q;
};

/// Square ratio rho = c^2/d^2 (rational, not a square) with d = 1, c = sqrt(rho).
struct QuadraticCase {
  Rational rho;
};

/// c^2/d^2 asserted irrational by the caller. Nothing here checks it, so any
/// simplicity-based conclusion is conditional on that assertion.
struct GenericCase {
  double c;
  double d;
};

/// The square [0,2pi]^2 with integer-frequency basis cos(mx)cos(ny). The
/// spectral parameter on this domain is the eigenvalue m^2+n^2 itself.
struct LiftedSquare {};

class Rectangle {
 public:
  using Variant = std::variant<RationalCase, QuadraticCase, GenericCase, LiftedSquare>;

  static Rectangle rational(BigInt p, BigInt q) {
    if (p <= 0 || q <= 0) throw InputError("rational rectangle needs p > 0 and q > 0");
    if (gcd(p, q) != 1)
      throw InputError("rational rectangle needs gcd(p,q) = 1, got p=" + p.str() + " q=" + q.str());
    return Rectangle(RationalCase{std::move(p), std::move(q)});
  }

  static Rectangle quadratic(Rational rho) {
    if (rho.sign() <= 0) throw InputError("quadratic rectangle needs rho > 0");
    if (rho.is_square())
      throw InputError("quadratic rectangle needs a non-square rho, got " + rho.str() +
                       " (use a rational rectangle)");
    return Rectangle(QuadraticCase{std::move(rho)});
  }

  static Rectangle generic(double c, double d) {
    if (!(c > 0.0) || !(d > 0.0) || !std::isfinite(c) || !std::isfinite(d))
      throw InputError("generic rectangle needs finite c > 0 and d > 0");
    return Rectangle(GenericCase{c, d});
  }

  static Rectangle square2pi() { return Rectangle(LiftedSquare{}); }

  const Variant& data() const { return data_; }

  bool is_rational() const { return std::holds_alternative<RationalCase>(data_); }
  bool is_quadratic() const { return std::holds_alternative<QuadraticCase>(data_); }
  bool is_generic() const { return std::holds_alternative<GenericCase>(data_); }
  bool is_lifted() const { return std::holds_alternative<LiftedSquare>(data_); }
  bool is_exact() const { return !is_generic(); }
  bool is_square() const {
    if (is_lifted()) return true;
    if (auto* r = std::get_if<RationalCase>(&data_)) return r->p == r->q;
    return false;
  }

  const RationalCase& rational_case() const { return std::get<RationalCase>(data_); }
  const QuadraticCase& quadratic_case() const { return std::get<QuadraticCase>(data_); }
  const GenericCase& generic_case() const { return std::get<GenericCase>(data_); }

  double width() const {
    return std::visit(
        [](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, RationalCase>) return to_double(r.p);
          else if constexpr (std::is_same_v<T, QuadraticCase>) return std::sqrt(r.rho.to_double());
          else if constexpr (std::is_same_v<T, GenericCase>) return r.c;
          else return 2.0 * std::numbers::pi;
        },
        data_);
  }

  double height() const {
    return std::visit(
        [](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, RationalCase>) return to_double(r.q);
          else if constexpr (std::is_same_v<T, QuadraticCase>) return 1.0;
          else if constexpr (std::is_same_v<T, GenericCase>) return r.d;
          else return 2.0 * std::numbers::pi;
        },
        data_);
  }

  /// Native mode index k on this domain corresponds to cos(pi * h * x / len)
  /// with h = k * index_scale().
  int index_scale() const { return is_lifted() ? 2 : 1; }

  /// mu(m,n) = m^2 * weight_x + n^2 * weight_y in native indices. Exact cases only.
  Rational weight_x() const {
    if (auto* r = std::get_if<RationalCase>(&data_)) return Rational(BigInt(1), r->p * r->p);
    if (auto* r = std::get_if<QuadraticCase>(&data_)) return Rational(r->rho.den(), r->rho.num());
    if (is_lifted()) return Rational(1);
    throw NotExactlyEnumerable("generic rectangle has no exact mode weights");
  }
  Rational weight_y() const {
    if (auto* r = std::get_if<RationalCase>(&data_)) return Rational(BigInt(1), r->q * r->q);
    if (is_quadratic() || is_lifted()) return Rational(1);
    throw NotExactlyEnumerable("generic rectangle has no exact mode weights");
  }
  double weight_x_real() const {
    if (auto* g = std::get_if<GenericCase>(&data_)) return 1.0 / (g->c * g->c);
    return weight_x().to_double();
  }
  double weight_y_real() const {
    if (auto* g = std::get_if<GenericCase>(&data_)) return 1.0 / (g->d * g->d);
    return weight_y().to_double();
  }

  /// Eigenvalue of -Laplace for spectral parameter mu.
  double lambda(double mu) const {
    return is_lifted() ? mu : std::numbers::pi * std::numbers::pi * mu;
  }

  friend bool operator==(const Rectangle& a, const Rectangle& b) {
    if (a.data_.index() != b.data_.index()) return false;
    return std::visit(
        [&](const auto& r) -> bool {
          using T = std::decay_t<decltype(r)>;
          const auto& o = std::get<T>(b.data_);
          if constexpr (std::is_same_v<T, RationalCase>) return r.p == o.p && r.q == o.q;
          else if constexpr (std::is_same_v<T, QuadraticCase>) return r.rho == o.rho;
          else if constexpr (std::is_same_v<T, GenericCase>) return r.c == o.c && r.d == o.d;
          else return true;
        },
        a.data_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& r) -> std::string {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, RationalCase>) return "R(" + r.p.str() + "," + r.q.str() + ")";
          else if constexpr (std::is_same_v<T, QuadraticCase>) return "Quadratic(rho=" + r.rho.str() + ")";
          else if constexpr (std::is_same_v<T, GenericCase>)
            return "Generic(c=" + std::to_string(r.c) + ",d=" + std::to_string(r.d) + ")";
          else return "Square(2pi)";
        },
        data_);
  }

 private:
  explicit Rectangle(Variant v) : data_(std::move(v)) {}
  Variant data_;
};

inline CaseTag classify(const Rectangle& rect) {
  if (rect.is_generic()) return CaseTag::C1;
  if (rect.is_quadratic()) return CaseTag::C2;
  return CaseTag::C3;
}

struct RatioNormalization {
  BigInt p;
  BigInt q;
  Rational scale;  // scale * p == c and scale * q == d
};

/// Writes c/d = p/q in lowest terms and returns the common scale.
inline RatioNormalization normalize_ratio(const Rational& c, const Rational& d) {
  if (c.sign() <= 0 || d.sign() <= 0) throw InputError("normalize_ratio needs c > 0 and d > 0");
  Rational ratio = c / d;
  RatioNormalization out{ratio.num(), ratio.den(), Rational{}};
  out.scale = c / Rational(out.p);
  return out;
}

/// Fold x onto [0,p] under the even, 2p-periodic extension.
inline double fold(double x, double p) {
  double r = std::fmod(x, 2.0 * p);
  if (r < 0.0) r += 2.0 * p;
  if (r > p) r = 2.0 * p - r;
  return r;
}

inline Rational fold(const Rational& x, const Rational& p) {
  if (p.sign() <= 0) throw InputError("fold needs p > 0");
  Rational period = p * Rational(2);
  Rational r = x - Rational((x / period).floor()) * period;
  if (r > p) r = period - r;
  return r;
}

// ---------------------------------------------------------------------------
// Boundary points

enum class Edge { Bottom, Top, Left, Right };

inline constexpr Edge kEdges[] = {Edge::Bottom, Edge::Top, Edge::Left, Edge::Right};

inline std::string_view to_string(Edge e) {
  switch (e) {
    case Edge::Bottom: return "bottom";
    case Edge::Top: return "top";
    case Edge::Left: return "left";
    case Edge::Right: return "right";
  }
  return "?";
}

inline Edge parse_edge(std::string_view s) {
  if (s == "bottom") return Edge::Bottom;
  if (s == "top") return Edge::Top;
  if (s == "left") return Edge::Left;
  if (s == "right") return Edge::Right;
  throw InputError("unknown edge '" + std::string(s) + "' (expected bottom|top|left|right)");
}

inline bool is_horizontal(Edge e) { return e == Edge::Bottom || e == Edge::Top; }

inline double edge_length(const Rectangle& rect, Edge e) {
  return is_horizontal(e) ? rect.width() : rect.height();
}

/// A point of the boundary: Bottom/Top use t = x, Left/Right use t = y.
struct BoundaryPoint {
  Edge edge;
  double t;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

/// Slack for points computed in floating point against the edge length.
inline constexpr double kBoundarySlack = 1e-9;

inline std::pair<double, double> to_xy(const Rectangle& rect, const BoundaryPoint& pt) {
  const double len = edge_length(rect, pt.edge);
  if (!(pt.t >= -kBoundarySlack * len && pt.t <= len * (1.0 + kBoundarySlack)))
    throw InputError("boundary point t=" + std::to_string(pt.t) + " outside edge " +
                     std::string(to_string(pt.edge)));
  switch (pt.edge) {
    case Edge::Bottom: return {pt.t, 0.0};
    case Edge::Top: return {pt.t, rect.height()};
    case Edge::Left: return {0.0, pt.t};
    case Edge::Right: return {rect.width(), pt.t};
  }
  return {0.0, 0.0};
}

}  // namespace nwit
