#pragma once

// Eigenfunctions as sparse coefficient vectors over the separated basis, and
// the coefficient-space transformations used by the witness construction:
// boundary traces, four-fold symmetrization, diagonal symmetrization,
// lifting to the 2pi-square, and sine removal for periodic directions.
//
// Basis conventions on a rectangle of width c and height d:
//   Neumann direction:  cos(pi*m*x/c)
//   periodic direction: cos(2*pi*m*x/c), sin(2*pi*m*x/c)
// On the lifted square [0,2pi]^2 both read cos(m*x) and sin(m*x).
// Internally every factor is cos(pi*h*x/len) or sin(pi*h*x/len) with an
// integer half-turn index h.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nwit/detail/trig.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/spectrum.hpp"

namespace nwit {

enum class Basis { NeumannCosine, TorusFull, CylinderMixed };

inline std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::NeumannCosine: return "neumann";
    case Basis::TorusFull: return "torus";
    case Basis::CylinderMixed: return "cylinder";
  }
  return "?";
}

inline Basis parse_basis(std::string_view s) {
  if (s == "neumann") return Basis::NeumannCosine;
  if (s == "torus") return Basis::TorusFull;
  if (s == "cylinder") return Basis::CylinderMixed;
  throw InputError("unknown basis '" + std::string(s) + "' (expected neumann|torus|cylinder)");
}

inline bool periodic_x(Basis b) { return b != Basis::NeumannCosine; }
inline bool periodic_y(Basis b) { return b == Basis::TorusFull; }

using CoeffMap = std::map<ModeIndex, double>;

/// Which trigonometric factor multiplies in each direction.
enum class Factor { Cos, Sin };

struct TermFamily {
  Factor fx;
  Factor fy;
};

/// Coefficient maps, in order: cos*cos, cos*sin, sin*cos, sin*sin.
inline constexpr TermFamily kFamilies[4] = {
    {Factor::Cos, Factor::Cos}, {Factor::Cos, Factor::Sin}, {Factor::Sin, Factor::Cos}, {Factor::Sin, Factor::Sin}};

class Eigenfunction {
 public:
  static Eigenfunction neumann(Rectangle rect, SpectralParam mu, CoeffMap coeffs) {
    return Eigenfunction(std::move(rect), std::move(mu), Basis::NeumannCosine,
                         {std::move(coeffs), {}, {}, {}});
  }

  /// cc: cos*cos, cs: cos(x)sin(y), sc: sin(x)cos(y), ss: sin*sin.
  static Eigenfunction torus(Rectangle rect, SpectralParam mu, CoeffMap cc, CoeffMap cs, CoeffMap sc,
                             CoeffMap ss) {
    return Eigenfunction(std::move(rect), std::move(mu), Basis::TorusFull,
                         {std::move(cc), std::move(cs), std::move(sc), std::move(ss)});
  }

  /// Periodic in x, Neumann in y: cc is cos(x)cos(y), sc is sin(x)cos(y).
  static Eigenfunction cylinder(Rectangle rect, SpectralParam mu, CoeffMap cc, CoeffMap sc) {
    return Eigenfunction(std::move(rect), std::move(mu), Basis::CylinderMixed,
                         {std::move(cc), {}, std::move(sc), {}});
  }

  /// Neumann eigenfunction whose mu is read off the first supported mode.
  static Eigenfunction from_modes(Rectangle rect, CoeffMap coeffs) {
    if (coeffs.empty()) throw InputError("from_modes needs at least one mode");
    SpectralParam mu = eigenvalue(rect, coeffs.begin()->first);
    return neumann(std::move(rect), std::move(mu), std::move(coeffs));
  }

  const Rectangle& rect() const { return rect_; }
  const SpectralParam& mu() const { return mu_; }
  Basis basis() const { return basis_; }

  const CoeffMap& coeffs() const { return maps_[0]; }
  const CoeffMap& coeffs_cs() const { return maps_[1]; }
  const CoeffMap& coeffs_sc() const { return maps_[2]; }
  const CoeffMap& coeffs_ss() const { return maps_[3]; }
  const CoeffMap& family(std::size_t i) const { return maps_[i]; }

  bool is_zero() const {
    for (const auto& m : maps_)
      if (!m.empty()) return false;
    return true;
  }

  /// Support is exactly the (0,0) cosine mode.
  bool is_constant() const {
    return maps_[0].size() == 1 && maps_[0].begin()->first == ModeIndex{0, 0} && maps_[1].empty() &&
           maps_[2].empty() && maps_[3].empty();
  }

  double max_abs_coefficient() const {
    double out = 0.0;
    for (const auto& m : maps_)
      for (const auto& [_, a] : m) out = std::max(out, std::fabs(a));
    return out;
  }

  Eigenfunction scaled(double alpha) const {
    std::array<CoeffMap, 4> maps = maps_;
    for (auto& m : maps)
      for (auto& [_, a] : m) a *= alpha;
    return Eigenfunction(rect_, mu_, basis_, std::move(maps));
  }

  /// Half-turn indices of a native mode: the term is F(pi*hx*x/c) G(pi*hy*y/d).
  std::pair<std::int64_t, std::int64_t> half_turns(ModeIndex md) const {
    return {md.m * direction_scale(periodic_x(basis_)), md.n * direction_scale(periodic_y(basis_))};
  }

 private:
  Eigenfunction(Rectangle rect, SpectralParam mu, Basis basis, std::array<CoeffMap, 4> maps)
      : rect_(std::move(rect)), mu_(std::move(mu)), basis_(basis), maps_(std::move(maps)) {
    validate();
  }

  std::int64_t direction_scale(bool periodic) const {
    if (rect_.is_lifted()) return 2;
    return periodic ? 2 : 1;
  }

  void validate() {
    if (rect_.is_exact() != mu_.is_exact())
      throw InputError("spectral parameter must be exact on exact rectangles and real on generic ones");
    if (mu_.value() < 0) throw InputError("spectral parameter must be non-negative");
    for (std::size_t f = 0; f < 4; ++f) {
      auto& map = maps_[f];
      if (basis_ == Basis::NeumannCosine && f != 0 && !map.empty())
        throw InputError("Neumann basis carries only cosine terms");
      if (basis_ == Basis::CylinderMixed && (f == 1 || f == 3) && !map.empty())
        throw InputError("cylinder basis is Neumann in y: no sine-in-y terms");
      for (auto it = map.begin(); it != map.end();) {
        if (!std::isfinite(it->second)) throw InputError("non-finite coefficient");
        if (it->second == 0.0) {
          it = map.erase(it);
          continue;
        }
        const ModeIndex md = it->first;
        if (md.m < 0 || md.n < 0) throw InputError("mode indices must be non-negative");
        if ((kFamilies[f].fx == Factor::Sin && md.m == 0) || (kFamilies[f].fy == Factor::Sin && md.n == 0))
          throw InputError("sine term with zero frequency");
        // Periodic frequencies 2*pi*m/c are Neumann index 2m, except on the
        // lifted square where cos(mx) already is the native basis.
        ModeIndex eff = md;
        if (!rect_.is_lifted()) {
          if (periodic_x(basis_)) eff.m *= 2;
          if (periodic_y(basis_)) eff.n *= 2;
        }
        if (!has_eigenvalue(rect_, eff, mu_))
          throw InputError("mode (" + std::to_string(md.m) + "," + std::to_string(md.n) +
                           ") does not have spectral parameter mu=" + mu_.str());
        ++it;
      }
    }
  }

  Rectangle rect_;
  SpectralParam mu_;
  Basis basis_;
  std::array<CoeffMap, 4> maps_;
};

namespace detail {

inline double factor(Factor f, std::int64_t h, double x, double len) {
  const double r = static_cast<double>(h) * x / len;
  return f == Factor::Cos ? cospi(r) : sinpi(r);
}

inline double evaluate_unchecked(const Eigenfunction& u, double x, double y) {
  const double c = u.rect().width();
  const double d = u.rect().height();
  double sum = 0.0;
  for (std::size_t f = 0; f < 4; ++f) {
    for (const auto& [md, a] : u.family(f)) {
      auto [hx, hy] = u.half_turns(md);
      sum += a * factor(kFamilies[f].fx, hx, x, c) * factor(kFamilies[f].fy, hy, y, d);
    }
  }
  return sum;
}

}  // namespace detail

inline double evaluate(const Eigenfunction& u, double x, double y) {
  const double c = u.rect().width();
  const double d = u.rect().height();
  if (!(x >= -kBoundarySlack * c && x <= c * (1 + kBoundarySlack) && y >= -kBoundarySlack * d &&
        y <= d * (1 + kBoundarySlack)))
    throw InputError("point (" + std::to_string(x) + "," + std::to_string(y) + ") outside " +
                     u.rect().describe());
  return detail::evaluate_unchecked(u, x, y);
}

inline double evaluate(const Eigenfunction& u, const BoundaryPoint& pt) {
  auto [x, y] = to_xy(u.rect(), pt);
  return detail::evaluate_unchecked(u, x, y);
}

// ---------------------------------------------------------------------------
// Boundary traces

/// Restriction of a cosine-basis eigenfunction to one edge:
/// t -> sum_k b_k cos(k * omega * t).
struct EdgeTrace {
  Edge edge = Edge::Bottom;
  double length = 1.0;
  int index_scale = 1;  // omega = pi * index_scale / length
  std::map<std::int64_t, double> terms;

  double omega() const { return std::numbers::pi * index_scale / length; }

  double constant_term() const {
    auto it = terms.find(0);
    return it == terms.end() ? 0.0 : it->second;
  }

  double operator()(double t) const {
    double sum = 0.0;
    for (const auto& [k, b] : terms) sum += b * detail::cospi(static_cast<double>(k * index_scale) * t / length);
    return sum;
  }
};

inline EdgeTrace trace(const Eigenfunction& u, Edge edge) {
  if (u.basis() != Basis::NeumannCosine)
    throw InputError("trace needs a Neumann cosine basis (apply drop_sines first)");
  EdgeTrace out;
  out.edge = edge;
  out.length = edge_length(u.rect(), edge);
  out.index_scale = u.rect().index_scale();
  // cos at the far edge: (-1)^k, or 1 on the lifted square (cos(2*pi*k)).
  auto far_sign = [&](std::int64_t k) -> double {
    if (u.rect().is_lifted()) return 1.0;
    return (k % 2 == 0) ? 1.0 : -1.0;
  };
  for (const auto& [md, a] : u.coeffs()) {
    switch (edge) {
      case Edge::Bottom: out.terms[md.m] += a; break;
      case Edge::Top: out.terms[md.m] += a * far_sign(md.n); break;
      case Edge::Left: out.terms[md.n] += a; break;
      case Edge::Right: out.terms[md.n] += a * far_sign(md.m); break;
    }
  }
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

/// Any-basis restriction of u to an edge as cos/sin terms in half-turn indices:
/// t -> sum_h C_h cos(pi*h*t/len) + S_h sin(pi*h*t/len).
struct EdgeProfile {
  Edge edge = Edge::Bottom;
  double length = 1.0;
  std::map<std::int64_t, double> cos_terms;
  std::map<std::int64_t, double> sin_terms;

  double operator()(double t) const {
    double sum = 0.0;
    for (const auto& [h, a] : cos_terms) sum += a * detail::cospi(static_cast<double>(h) * t / length);
    for (const auto& [h, a] : sin_terms) sum += a * detail::sinpi(static_cast<double>(h) * t / length);
    return sum;
  }

  std::int64_t max_half_turn() const {
    std::int64_t h = 0;
    if (!cos_terms.empty()) h = std::max(h, cos_terms.rbegin()->first);
    if (!sin_terms.empty()) h = std::max(h, sin_terms.rbegin()->first);
    return h;
  }
};

inline EdgeProfile edge_profile(const Eigenfunction& u, Edge edge) {
  EdgeProfile out;
  out.edge = edge;
  out.length = edge_length(u.rect(), edge);
  const bool far = edge == Edge::Top || edge == Edge::Right;
  for (std::size_t f = 0; f < 4; ++f) {
    for (const auto& [md, a] : u.family(f)) {
      auto [hx, hy] = u.half_turns(md);
      // The factor across the edge is evaluated at 0 or at the full length.
      const Factor across = is_horizontal(edge) ? kFamilies[f].fy : kFamilies[f].fx;
      const Factor along = is_horizontal(edge) ? kFamilies[f].fx : kFamilies[f].fy;
      const std::int64_t h_across = is_horizontal(edge) ? hy : hx;
      const std::int64_t h_along = is_horizontal(edge) ? hx : hy;
      if (across == Factor::Sin) continue;  // sin(0) = sin(pi*h) = 0
      const double w = far ? ((h_across % 2 == 0) ? 1.0 : -1.0) : 1.0;
      auto& target = along == Factor::Cos ? out.cos_terms : out.sin_terms;
      target[h_along] += a * w;
    }
  }
  std::erase_if(out.cos_terms, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(out.sin_terms, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

// ---------------------------------------------------------------------------
// Symmetrizations

/// Average over the reflections x -> p-x and y -> q-y: keeps the even-even modes.
inline Eigenfunction symmetrize(const Eigenfunction& v) {
  if (!v.rect().is_rational() || v.basis() != Basis::NeumannCosine)
    throw InputError("symmetrize needs a Neumann eigenfunction on a rational rectangle");
  CoeffMap kept;
  for (const auto& [md, a] : v.coeffs())
    if (md.m % 2 == 0 && md.n % 2 == 0) kept.emplace(md, a);
  return Eigenfunction::neumann(v.rect(), v.mu(), std::move(kept));
}

/// (u(x,y) + u(y,x)) / 2 on a square.
inline Eigenfunction diagonal_symmetrize(const Eigenfunction& u) {
  if (!u.rect().is_square()) throw InputError("diagonal_symmetrize needs a square domain");
  if (u.basis() != Basis::NeumannCosine) throw InputError("diagonal_symmetrize needs a cosine basis");
  CoeffMap out;
  for (const auto& [md, a] : u.coeffs()) {
    out[md] += a / 2;
    out[{md.n, md.m}] += a / 2;
  }
  return Eigenfunction::neumann(u.rect(), u.mu(), std::move(out));
}

struct LiftResult {
  Eigenfunction square;     // on the lifted 2pi-square
  BigInt lam;               // integer eigenvalue on the square
  BigInt period;            // L = lcm(p,q) = p*q
  std::vector<std::pair<ModeIndex, ModeIndex>> mode_map;
};

/// Continue an even-even eigenfunction on R(p,q) periodically to the square of
/// side L = lcm(p,q) and rescale that square to [0,2pi]^2. Mode (m,n) becomes
/// (m*L/(2p), n*L/(2q)) and mu becomes mu*L^2/4.
inline LiftResult lift_to_square(const Eigenfunction& w) {
  if (!w.rect().is_rational() || w.basis() != Basis::NeumannCosine)
    throw InputError("lift_to_square needs a Neumann eigenfunction on a rational rectangle");
  if (w.is_zero()) throw EmptyLift("cannot lift the zero function");
  const auto& rc = w.rect().rational_case();
  const BigInt L = rc.p * rc.q;
  CoeffMap lifted;
  std::vector<std::pair<ModeIndex, ModeIndex>> mode_map;
  for (const auto& [md, a] : w.coeffs()) {
    if (md.m % 2 != 0 || md.n % 2 != 0)
      throw InputError("lift_to_square needs even-even support; symmetrize first");
    const ModeIndex target{(BigInt(md.m) * (L / rc.p) / 2).convert_to<std::int64_t>(),
                           (BigInt(md.n) * (L / rc.q) / 2).convert_to<std::int64_t>()};
    lifted.emplace(target, a);
    mode_map.emplace_back(md, target);
  }
  Rational lam = w.mu().exact() * Rational(L * L, BigInt(4));
  if (!lam.is_integer()) throw Error("lifted eigenvalue is not an integer: " + lam.str());
  auto square = Eigenfunction::neumann(Rectangle::square2pi(), SpectralParam(lam), std::move(lifted));
  return {std::move(square), lam.num(), L, std::move(mode_map)};
}

/// Torus/cylinder to Neumann: keep the cos*cos map. Pointwise this is the
/// average of u over the reflections x -> -x (and y -> -y on the torus).
inline Eigenfunction drop_sines(const Eigenfunction& u) {
  if (u.basis() == Basis::NeumannCosine) return u;
  CoeffMap out;
  const bool lifted = u.rect().is_lifted();
  for (const auto& [md, a] : u.coeffs()) {
    ModeIndex eff = md;
    if (!lifted) {
      eff.m *= 2;
      if (periodic_y(u.basis())) eff.n *= 2;
    }
    out.emplace(eff, a);
  }
  return Eigenfunction::neumann(u.rect(), u.mu(), std::move(out));
}

}  // namespace nwit
