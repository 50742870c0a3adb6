#pragma once

// Witness certificates: for a non-constant eigenfunction, a finite set of
// boundary points on which it takes a non-positive value.
//
// Dispatch follows the rationality class of the rectangle:
//   C1 (generic)    a single mode; two points where the trace is +a and -a.
//   C2 (quadratic)  an edge whose trace has no constant term; a mean-zero,
//                   non-zero cosine polynomial is negative somewhere.
//   C3 (rational)   four-fold symmetrization, lift to the 2pi-square,
//                   diagonal symmetrization, then the 2-adic class of the
//                   lifted eigenvalue gives a zero (class J) or a +S/-S pair
//                   (class I) at x = 2^-s * pi. Points are unfolded back to
//                   the original rectangle, where their mean value is zero.
// Torus and cylinder eigenfunctions are reduced by drop_sines first and the
// certificate points are expanded over the periodic reflections.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nwit/detail/trig.hpp"
#include "nwit/eigenfunction.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/spectrum.hpp"
#include "nwit/twosquares.hpp"

namespace nwit {

enum class CertificateCase { C1, C2, C3, TorusReduced, CylinderReduced };
enum class CertificateKind { ExactZero, SignPair, NegativePoint, CornerAverage };

/// Identity the point values satisfy: their mean is zero, or it is negative.
enum class Relation { MeanZero, MeanNegative };

inline std::string_view to_string(CertificateCase c) {
  switch (c) {
    case CertificateCase::C1: return "C1";
    case CertificateCase::C2: return "C2";
    case CertificateCase::C3: return "C3";
    case CertificateCase::TorusReduced: return "torus_reduced";
    case CertificateCase::CylinderReduced: return "cylinder_reduced";
  }
  return "?";
}

inline std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::ExactZero: return "exact_zero";
    case CertificateKind::SignPair: return "sign_pair";
    case CertificateKind::NegativePoint: return "negative_point";
    case CertificateKind::CornerAverage: return "corner_average";
  }
  return "?";
}

inline std::string_view to_string(Relation r) { return r == Relation::MeanZero ? "mean_zero" : "mean_negative"; }

struct WitnessCertificate {
  CertificateCase case_tag = CertificateCase::C1;
  CertificateKind kind = CertificateKind::ExactZero;
  Relation relation = Relation::MeanZero;
  std::vector<BoundaryPoint> points;  // with multiplicity
  std::vector<std::string> derivation;

  // C3: the lifted identity evaluated in floating point; exactly zero in theory.
  std::optional<double> identity_residual;
  // C2: edge with a mean-zero trace, and the constant coefficient of that trace.
  std::optional<Edge> selected_edge;
  std::optional<double> selected_trace_constant;
};

struct WitnessOptions {
  double tol = 1e-9;
  std::int64_t min_samples = 4096;
  std::int64_t max_samples = std::int64_t{1} << 20;
};

namespace detail {

inline WitnessCertificate zero_function_certificate(CertificateCase tag) {
  WitnessCertificate cert;
  cert.case_tag = tag;
  cert.kind = CertificateKind::ExactZero;
  cert.relation = Relation::MeanZero;
  cert.points = {{Edge::Bottom, 0.0}};
  cert.derivation = {"empty support: u is identically zero"};
  return cert;
}

inline CertificateCase certificate_case(CaseTag t) {
  switch (t) {
    case CaseTag::C1: return CertificateCase::C1;
    case CaseTag::C2: return CertificateCase::C2;
    case CaseTag::C3: return CertificateCase::C3;
  }
  return CertificateCase::C1;
}

inline void require_witnessable(const Eigenfunction& u) {
  if (u.is_constant())
    throw ConstantEigenfunction("constant eigenfunction (support {(0,0)}): no witness exists");
}

}  // namespace detail

/// Single-mode eigenfunction: values +a and -a at two points of one edge.
inline WitnessCertificate witness_simple(const Eigenfunction& u) {
  if (u.basis() != Basis::NeumannCosine) throw InputError("witness_simple needs a cosine basis");
  detail::require_witnessable(u);
  if (u.is_zero()) return detail::zero_function_certificate(CertificateCase::C1);
  if (u.coeffs().size() != 1)
    throw InputError("eigenvalues of a generic rectangle are simple; got " +
                     std::to_string(u.coeffs().size()) + " modes");
  const auto [md, a] = *u.coeffs().begin();
  auto [hx, hy] = u.half_turns(md);
  WitnessCertificate cert;
  cert.case_tag = CertificateCase::C1;
  cert.kind = CertificateKind::SignPair;
  cert.relation = Relation::MeanZero;
  std::ostringstream os;
  if (md.m > 0) {
    const double t = u.rect().width() / static_cast<double>(hx);
    cert.points = {{Edge::Bottom, 0.0}, {Edge::Bottom, t}};
    os << "simple mode (" << md.m << "," << md.n << "), a=" << a << ": bottom trace a*cos(pi*" << hx
       << "*x/c) is a at x=0 and -a at x=c/" << hx;
  } else {
    const double t = u.rect().height() / static_cast<double>(hy);
    cert.points = {{Edge::Left, 0.0}, {Edge::Left, t}};
    os << "simple mode (0," << md.n << "), a=" << a << ": left trace a*cos(pi*" << hy
       << "*y/d) is a at y=0 and -a at y=d/" << hy;
  }
  cert.derivation.push_back(os.str());
  return cert;
}

/// Quadratic rectangle: pick an edge whose index set has no constant trace
/// term and locate a strictly negative value of the mean-zero trace.
inline WitnessCertificate witness_quadratic(const Eigenfunction& u, const WitnessOptions& opts = {}) {
  if (!u.rect().is_quadratic() || u.basis() != Basis::NeumannCosine)
    throw InputError("witness_quadratic needs a Neumann eigenfunction on a quadratic rectangle");
  detail::require_witnessable(u);
  if (u.is_zero()) return detail::zero_function_certificate(CertificateCase::C2);

  const ModeSet modes = index_set(u.rect(), u.mu());
  bool x_axis = false;
  bool y_axis = false;
  for (const auto& md : modes) {
    if (md.m > 0 && md.n == 0) x_axis = true;
    if (md.m == 0 && md.n > 0) y_axis = true;
  }
  if (x_axis && y_axis)
    throw InconsistentSpectrum("index set of mu=" + u.mu().str() + " holds both axis modes");

  // Bottom trace collects the (0,n) modes into its constant term, Left the (m,0).
  const Edge edge = y_axis ? Edge::Left : Edge::Bottom;
  const EdgeTrace tr = trace(u, edge);

  WitnessCertificate cert;
  cert.case_tag = CertificateCase::C2;
  cert.selected_edge = edge;
  cert.selected_trace_constant = tr.constant_term();
  cert.derivation.push_back("index set of mu=" + u.mu().str() + " has no " +
                            (edge == Edge::Bottom ? std::string("(0,n)") : std::string("(m,0)")) +
                            " mode: the " + std::string(to_string(edge)) +
                            " trace is orthogonal to constants");
  if (tr.constant_term() != 0.0)
    throw InconsistentSpectrum("selected trace has a non-zero constant term");

  const double len = tr.length;
  if (tr.terms.empty()) {
    cert.kind = CertificateKind::ExactZero;
    cert.relation = Relation::MeanZero;
    cert.points = {{edge, len / 2}};
    cert.derivation.push_back("trace vanishes identically; midpoint value is 0");
    return cert;
  }

  const double norm = u.max_abs_coefficient();
  const double threshold = -opts.tol * norm;
  const std::int64_t max_freq = tr.terms.rbegin()->first * tr.index_scale;
  std::int64_t n = std::max(opts.min_samples, 32 * max_freq);
  while (n <= opts.max_samples) {
    detail::HalfTurnTable table(n);
    std::int64_t best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j <= n; ++j) {
      double v = 0.0;
      for (const auto& [k, b] : tr.terms) v += b * table.cos(k * tr.index_scale, j);
      if (v < best) {
        best = v;
        best_j = j;
      }
    }
    const double step = len / static_cast<double>(n);
    double t_best = static_cast<double>(best_j) * step;
    const double lo = std::max(0.0, t_best - step);
    const double hi = std::min(len, t_best + step);
    const double t_ref = detail::golden_section_min(tr, lo, hi);
    const double v_grid = evaluate(u, BoundaryPoint{edge, t_best});
    const double v_ref = evaluate(u, BoundaryPoint{edge, t_ref});
    if (v_ref < v_grid) t_best = t_ref;
    const double v = std::min(v_ref, v_grid);
    if (v <= threshold) {
      cert.kind = CertificateKind::NegativePoint;
      cert.relation = Relation::MeanNegative;
      cert.points = {{edge, t_best}};
      std::ostringstream os;
      os << "dense sampling (" << n << " intervals) + golden-section refinement: value " << v << " at t=" << t_best;
      cert.derivation.push_back(os.str());
      return cert;
    }
    n *= 2;
  }
  throw NumericalInconclusive("no boundary value <= " + std::to_string(threshold) + " found with up to " +
                              std::to_string(opts.max_samples) + " samples");
}

namespace detail {

// Exact boundary point of R(p,q) given rational coordinates.
inline BoundaryPoint rational_boundary_point(const Rational& x, const Rational& y, const Rational& p,
                                             const Rational& q) {
  if (y.is_zero()) return {Edge::Bottom, x.to_double()};
  if (y == q) return {Edge::Top, x.to_double()};
  if (x.is_zero()) return {Edge::Left, y.to_double()};
  if (x == p) return {Edge::Right, y.to_double()};
  throw Error("unfolded point is not on the boundary");
}

// The eight boundary points of R(p,q) whose mean v-value equals
// uS(x',0) = (w(X,0) + w(0,Y)) / 2 where x' = pi*a on the lifted square.
inline void unfold_square_point(const Rational& a, const BigInt& period, const Rational& p, const Rational& q,
                                std::vector<BoundaryPoint>& out) {
  const Rational raw = Rational(period) * a / Rational(2);  // L * x' / (2 pi)
  const Rational X = fold(raw, p);
  const Rational Y = fold(raw, q);
  const Rational zero;
  for (const Rational& x : {X, p - X})
    for (const Rational& y : {zero, q}) out.push_back(rational_boundary_point(x, y, p, q));
  for (const Rational& x : {zero, p})
    for (const Rational& y : {Y, q - Y}) out.push_back(rational_boundary_point(x, y, p, q));
}

inline WitnessCertificate witness_rational_core(const Eigenfunction& v) {
  const auto& rc = v.rect().rational_case();
  const Rational p(rc.p);
  const Rational q(rc.q);
  WitnessCertificate cert;
  cert.case_tag = CertificateCase::C3;
  cert.relation = Relation::MeanZero;

  const Eigenfunction w = symmetrize(v);
  if (w.is_zero()) {
    cert.kind = CertificateKind::CornerAverage;
    cert.points = {{Edge::Bottom, 0.0}, {Edge::Bottom, p.to_double()}, {Edge::Top, 0.0}, {Edge::Top, p.to_double()}};
    cert.derivation.push_back("four-fold symmetrization annihilates v (no even-even modes)");
    cert.derivation.push_back(
        "the corner mean of v equals w(0,0) = 0, so some corner value is <= 0 (completion of the "
        "argument for an annihilated symmetrization)");
    return cert;
  }

  const LiftResult lift = lift_to_square(w);
  const Eigenfunction us = diagonal_symmetrize(lift.square);
  const auto dec = decompose(lift.lam);
  const auto pred = predicted_class(lift.lam);
  const Rational a_star(BigInt(1), BigInt(1) << pred.s);  // x* = 2^-s * pi
  const double x_star = std::numbers::pi * a_star.to_double();

  std::ostringstream os;
  os << "symmetrized support " << w.coeffs().size() << " even-even modes; lifted with L=" << lift.period
     << " to the 2pi-square, lambda=" << lift.lam;
  cert.derivation.push_back(os.str());
  os.str("");
  os << "lambda = " << (dec.core == Core::Odd ? "4^s(2l+1)" : "2*4^s(2l+1)") << " with s=" << dec.s
     << ", l=" << dec.ell << "; reduced representations are in class " << to_string(pred.cls)
     << "; x* = 2^-" << pred.s << " * pi";
  cert.derivation.push_back(os.str());
  if (pred.s == 1 && pred.cls == ParityClass::J)
    cert.derivation.push_back("s=1: boundary value of the odd-core sub-case, identity still exact");

  if (pred.cls == ParityClass::J) {
    cert.kind = CertificateKind::ExactZero;
    cert.identity_residual = evaluate(us, x_star, 0.0);
    cert.derivation.push_back("class J: each pair a(cos(m x*) + cos(n x*)) vanishes, uS(x*,0) = 0");
    unfold_square_point(a_star, lift.period, p, q, cert.points);
  } else {
    cert.kind = CertificateKind::SignPair;
    cert.identity_residual = evaluate(us, 0.0, 0.0) + evaluate(us, x_star, 0.0);
    cert.derivation.push_back("class I: uS(0,0) = 2S and uS(x*,0) = -2S per pair, sum 0");
    unfold_square_point(Rational{}, lift.period, p, q, cert.points);
    unfold_square_point(a_star, lift.period, p, q, cert.points);
  }
  cert.derivation.push_back("points unfolded through diagonal swap, rescale x = L x'/(2 pi) with folding, "
                            "and the four midline reflections; their mean v-value is 0");
  return cert;
}

}  // namespace detail

/// Rational rectangle (or the lifted square, handled as R(1,1) with doubled indices).
inline WitnessCertificate witness_rational(const Eigenfunction& v) {
  if (v.basis() != Basis::NeumannCosine) throw InputError("witness_rational needs a cosine basis");
  if (!v.rect().is_rational() && !v.rect().is_lifted())
    throw InputError("witness_rational needs a rational rectangle or the 2pi-square");
  detail::require_witnessable(v);
  if (v.is_zero()) return detail::zero_function_certificate(CertificateCase::C3);
  if (v.rect().is_rational()) return detail::witness_rational_core(v);

  // cos(m x) on [0,2pi] is cos(2m pi X) on [0,1] with x = 2 pi X.
  CoeffMap doubled;
  for (const auto& [md, a] : v.coeffs()) doubled.emplace(ModeIndex{2 * md.m, 2 * md.n}, a);
  const auto unit = Rectangle::rational(1, 1);
  auto scaled = Eigenfunction::neumann(unit, SpectralParam(v.mu().exact() * Rational(4)), std::move(doubled));
  WitnessCertificate cert = detail::witness_rational_core(scaled);
  const double side = 2.0 * std::numbers::pi;
  for (auto& pt : cert.points) pt.t *= side;
  cert.derivation.insert(cert.derivation.begin(), "2pi-square handled as R(1,1) with mode indices doubled");
  return cert;
}

namespace detail {

// Orbit of a boundary point under the periodic reflections x -> c-x (and y -> d-y).
inline void append_reflection_orbit(const Rectangle& rect, Basis basis, const BoundaryPoint& pt,
                                    std::vector<BoundaryPoint>& out) {
  const double c = rect.width();
  const double d = rect.height();
  auto [x, y] = to_xy(rect, pt);
  std::vector<std::pair<double, double>> orbit = {{x, y}};
  if (periodic_x(basis)) orbit.push_back({c - x, y});
  if (periodic_y(basis)) {
    const std::size_t n = orbit.size();
    for (std::size_t i = 0; i < n; ++i) orbit.push_back({orbit[i].first, d - orbit[i].second});
  }
  // The reflected point lies on the mirror edge of the original one.
  for (const auto& [px, py] : orbit) {
    BoundaryPoint q = pt;
    if (is_horizontal(pt.edge)) {
      q.t = px;
      if (py != y) q.edge = pt.edge == Edge::Bottom ? Edge::Top : Edge::Bottom;
    } else {
      q.t = py;
      if (px != x) q.edge = pt.edge == Edge::Left ? Edge::Right : Edge::Left;
    }
    out.push_back(q);
  }
}

}  // namespace detail

inline WitnessCertificate witness(const Eigenfunction& u, const WitnessOptions& opts = {}) {
  detail::require_witnessable(u);
  if (u.basis() != Basis::NeumannCosine) {
    const Eigenfunction reduced = drop_sines(u);
    if (reduced.is_constant())
      throw ConstantEigenfunction("reduced eigenfunction is constant: no witness exists");
    WitnessCertificate inner = witness(reduced, opts);
    WitnessCertificate cert = inner;
    cert.case_tag = u.basis() == Basis::TorusFull ? CertificateCase::TorusReduced : CertificateCase::CylinderReduced;
    cert.points.clear();
    for (const auto& pt : inner.points) detail::append_reflection_orbit(u.rect(), u.basis(), pt, cert.points);
    cert.derivation.insert(cert.derivation.begin(),
                           "sine terms removed (reflection average in periodic directions); case " +
                               std::string(to_string(inner.case_tag)) + " applied to the reduction");
    cert.derivation.push_back("points expanded over the periodic reflection orbits");
    return cert;
  }
  if (u.is_zero()) return detail::zero_function_certificate(detail::certificate_case(classify(u.rect())));
  switch (classify(u.rect())) {
    case CaseTag::C1: return witness_simple(u);
    case CaseTag::C2: return witness_quadratic(u, opts);
    case CaseTag::C3: return witness_rational(u);
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Verification

struct CertificateCheck {
  bool min_nonpositive = false;  // min over points <= tol * (1 + |a|_inf)
  bool relation_holds = false;   // the recorded mean relation
  double min_value = 0.0;
  double mean_value = 0.0;
};

inline CertificateCheck check_certificate(const Eigenfunction& u, const WitnessCertificate& cert, double tol) {
  if (cert.points.empty()) throw InputError("certificate has no points");
  CertificateCheck out;
  out.min_value = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& pt : cert.points) {
    const double v = evaluate(u, pt);
    out.min_value = std::min(out.min_value, v);
    sum += v;
  }
  out.mean_value = sum / static_cast<double>(cert.points.size());
  const double bound = tol * (1.0 + u.max_abs_coefficient());
  out.min_nonpositive = out.min_value <= bound;
  out.relation_holds =
      cert.relation == Relation::MeanZero ? std::fabs(out.mean_value) <= bound : out.mean_value < 0.0;
  return out;
}

inline bool verify_certificate(const Eigenfunction& u, const WitnessCertificate& cert, double tol) {
  return check_certificate(u, cert, tol).min_nonpositive;
}

}  // namespace nwit
