#pragma once

// Independent numerical checks: dense boundary minimization, finite
// difference residuals, Neumann derivative checks, seeded eigenspace
// sampling, and the theorem / proposition sweep drivers.

#include <algorithm>
#include <atomic>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nwit/detail/trig.hpp"
#include "nwit/eigenfunction.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/spectrum.hpp"
#include "nwit/twosquares.hpp"
#include "nwit/witness.hpp"

namespace nwit {

struct BoundaryMin {
  double value = 0.0;
  BoundaryPoint argmin{Edge::Bottom, 0.0};
};

/// Uniform boundary sampling with golden-section refinement around the
/// competitive grid minima. Holds the phase table so repeated calls share it.
class BoundarySampler {
 public:
  explicit BoundarySampler(std::int64_t samples_per_edge = 4096)
      : table_(check(samples_per_edge) - 1) {}

  std::int64_t samples_per_edge() const { return table_.n() + 1; }

  BoundaryMin operator()(const Eigenfunction& u) const {
    const std::int64_t n = table_.n();
    BoundaryMin best{std::numeric_limits<double>::infinity(), {Edge::Bottom, 0.0}};
    std::array<EdgeProfile, 4> profiles;
    std::array<std::vector<double>, 4> values;
    // A grid sample within one step of a minimizer overshoots it by at most
    // sum |a| (omega * step)^2 / 2; every local minimum of the grid within
    // that margin of the best sample is refined.
    double slack = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
      profiles[e] = edge_profile(u, kEdges[e]);
      const EdgeProfile& prof = profiles[e];
      double curvature = 0.0;
      for (const auto* terms : {&prof.cos_terms, &prof.sin_terms})
        for (const auto& [h, a] : *terms) {
          const double phase = std::numbers::pi * static_cast<double>(h) / static_cast<double>(n);
          curvature += std::fabs(a) * phase * phase;
        }
      slack = std::max(slack, 0.5 * curvature);
      values[e].resize(static_cast<std::size_t>(n + 1));
      for (std::int64_t j = 0; j <= n; ++j) {
        double v = 0.0;
        for (const auto& [h, a] : prof.cos_terms) v += a * table_.cos(h, j);
        for (const auto& [h, a] : prof.sin_terms) v += a * table_.sin(h, j);
        values[e][static_cast<std::size_t>(j)] = v;
        if (v < best.value) {
          best.value = v;
          best.argmin = {kEdges[e], static_cast<double>(j) * prof.length / static_cast<double>(n)};
        }
      }
    }
    const double cutoff = best.value + 1.5 * slack + 1e-15;
    for (std::size_t e = 0; e < 4; ++e) {
      const EdgeProfile& prof = profiles[e];
      if (prof.max_half_turn() == 0) continue;
      const auto& vs = values[e];
      const double step = prof.length / static_cast<double>(n);
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j] > cutoff) continue;
        if (j > 0 && vs[j - 1] <= vs[j]) continue;  // plateaus refine once
        if (j + 1 < vs.size() && vs[j + 1] < vs[j]) continue;
        const double t0 = static_cast<double>(j) * step;
        const double t = detail::golden_section_min(prof, std::max(0.0, t0 - step), std::min(prof.length, t0 + step), 48);
        const double v = prof(t);
        if (v < best.value) best = {v, {kEdges[e], t}};
      }
    }
    return best;
  }

 private:
  static std::int64_t check(std::int64_t s) {
    if (s < 2) throw InputError("boundary_min needs at least 2 samples per edge");
    return s;
  }

  detail::HalfTurnTable table_;
};

inline BoundaryMin boundary_min(const Eigenfunction& u, std::int64_t samples_per_edge = 4096) {
  return BoundarySampler(samples_per_edge)(u);
}

/// max over interior grid points of |five-point Laplacian(u) + lambda*u|.
inline double pde_residual(const Eigenfunction& u, double h) {
  const double c = u.rect().width();
  const double d = u.rect().height();
  if (!(h > 0.0) || h > std::min(c, d) / 8.0 * (1.0 + 1e-12))
    throw InputError("pde_residual needs 0 < h <= min(c,d)/8");
  const double lambda = u.rect().lambda(u.mu().value());
  const auto nx = static_cast<std::int64_t>(std::floor(c / h + 1e-9));
  const auto ny = static_cast<std::int64_t>(std::floor(d / h + 1e-9));
  const std::size_t stride = static_cast<std::size_t>(ny + 1);
  std::vector<double> grid(static_cast<std::size_t>(nx + 1) * stride, 0.0);

  // Separable terms: accumulate a * F(x_i) * G(y_j) without per-point dispatch.
  std::vector<double> fx(static_cast<std::size_t>(nx + 1));
  std::vector<double> gy(static_cast<std::size_t>(ny + 1));
  for (std::size_t f = 0; f < 4; ++f) {
    for (const auto& [md, a] : u.family(f)) {
      auto [hx, hy] = u.half_turns(md);
      for (std::int64_t i = 0; i <= nx; ++i)
        fx[i] = detail::factor(kFamilies[f].fx, hx, static_cast<double>(i) * h, c);
      for (std::int64_t j = 0; j <= ny; ++j)
        gy[j] = detail::factor(kFamilies[f].fy, hy, static_cast<double>(j) * h, d);
      for (std::int64_t i = 0; i <= nx; ++i)
        for (std::int64_t j = 0; j <= ny; ++j) grid[i * stride + j] += a * fx[i] * gy[j];
    }
  }

  const double inv_h2 = 1.0 / (h * h);
  double worst = 0.0;
  for (std::int64_t i = 1; i < nx; ++i) {
    for (std::int64_t j = 1; j < ny; ++j) {
      const double center = grid[i * stride + j];
      const double lap = (grid[(i + 1) * stride + j] + grid[(i - 1) * stride + j] + grid[i * stride + j + 1] +
                          grid[i * stride + j - 1] - 4.0 * center) *
                         inv_h2;
      worst = std::max(worst, std::fabs(lap + lambda * center));
    }
  }
  return worst;
}

/// max over boundary samples of |du/dnu|, differentiated termwise.
inline double neumann_residual(const Eigenfunction& u, std::int64_t samples_per_edge = 1024) {
  const double c = u.rect().width();
  const double d = u.rect().height();
  auto value = [](Factor f, std::int64_t h, double x, double len) { return detail::factor(f, h, x, len); };
  auto slope = [](Factor f, std::int64_t h, double x, double len) {
    const double k = std::numbers::pi * static_cast<double>(h) / len;
    const double r = static_cast<double>(h) * x / len;
    return f == Factor::Cos ? -k * detail::sinpi(r) : k * detail::cospi(r);
  };
  double worst = 0.0;
  for (Edge e : kEdges) {
    const double len = edge_length(u.rect(), e);
    for (std::int64_t j = 0; j < samples_per_edge; ++j) {
      const double t = len * static_cast<double>(j) / static_cast<double>(samples_per_edge - 1);
      auto [x, y] = to_xy(u.rect(), BoundaryPoint{e, t});
      double dn = 0.0;
      for (std::size_t f = 0; f < 4; ++f) {
        for (const auto& [md, a] : u.family(f)) {
          auto [hx, hy] = u.half_turns(md);
          if (is_horizontal(e))
            dn += a * value(kFamilies[f].fx, hx, x, c) * slope(kFamilies[f].fy, hy, y, d);
          else
            dn += a * slope(kFamilies[f].fx, hx, x, c) * value(kFamilies[f].fy, hy, y, d);
        }
      }
      worst = std::max(worst, std::fabs(dn));
    }
  }
  return worst;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

inline void normalize_max(std::array<CoeffMap, 4>& maps) {
  double norm = 0.0;
  for (const auto& m : maps)
    for (const auto& [_, a] : m) norm = std::max(norm, std::fabs(a));
  if (norm == 0.0) return;
  for (auto& m : maps)
    for (auto& [_, a] : m) a /= norm;
}

}  // namespace detail

/// Standard normal coefficients on the whole index set, scaled to unit max-norm.
inline Eigenfunction random_eigenfunction(const Rectangle& rect, const SpectralParam& mu, std::uint64_t seed) {
  const ModeSet modes = index_set(rect, mu);
  if (modes.empty()) throw InputError("mu=" + mu.str() + " is not an eigenvalue of " + rect.describe());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<CoeffMap, 4> maps;
  for (const auto& md : modes) maps[0][md] = normal(rng);
  detail::normalize_max(maps);
  return Eigenfunction::neumann(rect, mu, std::move(maps[0]));
}

/// Random torus or cylinder eigenfunction: every admissible cos/sin family
/// on every periodic mode of the eigenspace gets a normal coefficient.
inline Eigenfunction random_periodic_eigenfunction(const Rectangle& rect, const SpectralParam& mu, Basis basis,
                                                   std::uint64_t seed) {
  if (basis == Basis::NeumannCosine) return random_eigenfunction(rect, mu, seed);
  const bool lifted = rect.is_lifted();
  std::vector<ModeIndex> native;
  for (const auto& md : index_set(rect, mu)) {
    ModeIndex nm = md;
    if (!lifted) {
      if (md.m % 2 != 0) continue;
      nm.m /= 2;
      if (periodic_y(basis)) {
        if (md.n % 2 != 0) continue;
        nm.n /= 2;
      }
    }
    native.push_back(nm);
  }
  if (native.empty())
    throw InputError("mu=" + mu.str() + " has no " + std::string(to_string(basis)) + " modes on " + rect.describe());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<CoeffMap, 4> maps;
  for (const auto& md : native) {
    for (std::size_t f = 0; f < 4; ++f) {
      if (basis == Basis::CylinderMixed && kFamilies[f].fy == Factor::Sin) continue;
      if (kFamilies[f].fx == Factor::Sin && md.m == 0) continue;
      if (kFamilies[f].fy == Factor::Sin && md.n == 0) continue;
      maps[f][md] = normal(rng);
    }
  }
  detail::normalize_max(maps);
  if (basis == Basis::TorusFull)
    return Eigenfunction::torus(rect, mu, std::move(maps[0]), std::move(maps[1]), std::move(maps[2]),
                                std::move(maps[3]));
  return Eigenfunction::cylinder(rect, mu, std::move(maps[0]), std::move(maps[2]));
}

// ---------------------------------------------------------------------------
// Theorem sweep

struct SweepOptions {
  double tol = 1e-9;
  std::int64_t samples_per_edge = 4096;
  unsigned threads = 1;
  WitnessOptions witness{};
};

struct SweepSample {
  std::size_t eigenspace = 0;
  std::size_t trial = 0;
  double boundary_min = 0.0;  // divided by |a|_inf
  bool verified = false;
};

struct SweepRecord {
  SpectralParam mu;
  std::size_t multiplicity = 0;
  double worst_boundary_min = -std::numeric_limits<double>::infinity();
  bool certificate_verified = true;
  bool relation_verified = true;
  bool oracle_agrees = true;  // boundary min <= min over certificate points + tol
  bool trace_constants_zero = true;
  double max_identity_residual = 0.0;
  std::size_t inconclusive = 0;
  bool pass = true;
};

struct SweepReport {
  Rectangle rect = Rectangle::rational(1, 1);
  Rational mu_max;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::vector<SweepRecord> records;
  std::vector<SweepSample> samples;
  double max_identity_residual = 0.0;
  bool pass = true;
};

inline SweepReport theorem_sweep(const Rectangle& rect, const Rational& mu_max, std::size_t trials,
                                 std::uint64_t seed, const SweepOptions& opts = {}) {
  if (rect.is_generic())
    throw NotExactlyEnumerable("theorem_sweep needs a rational, quadratic or lifted rectangle");
  SweepReport report;
  report.rect = rect;
  report.mu_max = mu_max;
  report.trials = trials;
  report.seed = seed;
  report.tol = opts.tol;

  std::vector<Eigenspace> spaces = enumerate(rect, mu_max);
  std::erase_if(spaces, [](const Eigenspace& es) { return es.mu.is_zero(); });

  report.records.resize(spaces.size());
  report.samples.resize(spaces.size() * trials);
  const BoundarySampler sampler(opts.samples_per_edge);

  auto run_one = [&](std::size_t idx) {
    const Eigenspace& es = spaces[idx];
    SweepRecord rec;
    rec.mu = es.mu;
    rec.multiplicity = es.multiplicity();
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const Eigenfunction u = random_eigenfunction(rect, es.mu, detail::derive_seed(seed, idx, trial));
      const double norm = u.max_abs_coefficient();
      const BoundaryMin bm = sampler(u);
      SweepSample& sample = report.samples[idx * trials + trial];
      sample.eigenspace = idx;
      sample.trial = trial;
      sample.boundary_min = bm.value / norm;
      rec.worst_boundary_min = std::max(rec.worst_boundary_min, sample.boundary_min);
      try {
        const WitnessCertificate cert = witness(u, opts.witness);
        const CertificateCheck chk = check_certificate(u, cert, opts.tol);
        sample.verified = chk.min_nonpositive;
        rec.certificate_verified = rec.certificate_verified && chk.min_nonpositive;
        rec.relation_verified = rec.relation_verified && chk.relation_holds;
        rec.oracle_agrees = rec.oracle_agrees && bm.value <= chk.min_value + opts.tol;
        if (cert.identity_residual)
          rec.max_identity_residual = std::max(rec.max_identity_residual, std::fabs(*cert.identity_residual) / norm);
        if (cert.selected_trace_constant && *cert.selected_trace_constant != 0.0) rec.trace_constants_zero = false;
      } catch (const NumericalInconclusive&) {
        ++rec.inconclusive;
        rec.certificate_verified = false;
      }
    }
    rec.pass = rec.worst_boundary_min <= opts.tol && rec.certificate_verified && rec.relation_verified &&
               rec.oracle_agrees && rec.trace_constants_zero && rec.inconclusive == 0;
    report.records[idx] = std::move(rec);
  };

  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < spaces.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < spaces.size(); i = next++) run_one(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const auto& rec : report.records) {
    report.pass = report.pass && rec.pass;
    report.max_identity_residual = std::max(report.max_identity_residual, rec.max_identity_residual);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Proposition sweep

struct PropositionSweepReport {
  std::int64_t lam_max = 0;
  std::int64_t with_representations = 0;
  std::int64_t total_representations = 0;
  std::int64_t s_equals_one = 0;
  std::vector<PropositionReport<std::int64_t>> failures;
  bool pass = true;
};

/// Runs check_proposition for every lam in [1, lam_max]. `visit` sees each report.
inline PropositionSweepReport proposition_sweep(
    std::int64_t lam_max, const std::function<void(const PropositionReport<std::int64_t>&)>& visit = {}) {
  if (lam_max < 1) throw InputError("proposition_sweep needs lam_max >= 1");
  PropositionSweepReport out;
  out.lam_max = lam_max;
  for (std::int64_t lam = 1; lam <= lam_max; ++lam) {
    auto rep = check_proposition(lam);
    if (!rep.representations.empty()) {
      ++out.with_representations;
      out.total_representations += static_cast<std::int64_t>(rep.representations.size());
      if (rep.s_equals_one) ++out.s_equals_one;
    }
    if (visit) visit(rep);
    if (!rep.pass) {
      out.pass = false;
      out.failures.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace nwit
