#pragma once

// JSON and CSV encodings of rectangles, eigenfunctions, certificates and
// reports. Rationals are written as "num/den" strings. Readers throw
// InputError naming the offending field.

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "nwit/eigenfunction.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/oracle.hpp"
#include "nwit/spectrum.hpp"
#include "nwit/twosquares.hpp"
#include "nwit/witness.hpp"

namespace nwit::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError("'" + path + "' must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field '" + (path.empty() ? "" : path + ".") + key + "'");
  return *it;
}

inline std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

inline BigInt read_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("field '" + path + "' must be an integer");
}

inline double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError("field '" + path + "' must be a number");
  return j.get<double>();
}

inline std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError("field '" + path + "' must be a string");
  return j.get<std::string>();
}

inline Rational read_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<std::int64_t>()));
  if (!j.is_string()) throw InputError("field '" + path + "' must be a \"num/den\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError("field '" + path + "': " + e.what());
  }
}

inline json write_integer(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
    return v.convert_to<std::int64_t>();
  return v.str();
}

}  // namespace detail

// --- Rectangle -------------------------------------------------------------

inline json to_json(const Rectangle& rect) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RationalCase>)
          return {{"case", "rational"}, {"p", detail::write_integer(r.p)}, {"q", detail::write_integer(r.q)}};
        else if constexpr (std::is_same_v<T, QuadraticCase>)
          return {{"case", "quadratic"}, {"rho", r.rho.str()}};
        else if constexpr (std::is_same_v<T, GenericCase>)
          return {{"case", "generic"}, {"c", r.c}, {"d", r.d}};
        else
          return {{"case", "square2pi"}};
      },
      rect.data());
}

inline Rectangle rectangle_from_json(const json& j, const std::string& path = "rect") {
  const std::string kind = detail::read_string(detail::field(j, "case", path), detail::join(path, "case"));
  if (kind == "rational")
    return Rectangle::rational(detail::read_integer(detail::field(j, "p", path), detail::join(path, "p")),
                               detail::read_integer(detail::field(j, "q", path), detail::join(path, "q")));
  if (kind == "quadratic")
    return Rectangle::quadratic(detail::read_rational(detail::field(j, "rho", path), detail::join(path, "rho")));
  if (kind == "generic")
    return Rectangle::generic(detail::read_number(detail::field(j, "c", path), detail::join(path, "c")),
                              detail::read_number(detail::field(j, "d", path), detail::join(path, "d")));
  if (kind == "square2pi") return Rectangle::square2pi();
  throw InputError("field '" + detail::join(path, "case") + "' must be rational|quadratic|generic|square2pi");
}

// --- Spectral data -----------------------------------------------------------

inline json to_json(const SpectralParam& mu) {
  if (mu.is_exact()) return mu.exact().str();
  return mu.value();
}

inline SpectralParam spectral_param_from_json(const json& j, const std::string& path) {
  if (j.is_number_float()) throw InputError("field '" + path + "' must be an exact \"num/den\" string");
  return SpectralParam(detail::read_rational(j, path));
}

inline json to_json(const Eigenspace& es) {
  json modes = json::array();
  for (const auto& md : es.modes) modes.push_back({md.m, md.n});
  return {{"mu", to_json(es.mu)}, {"modes", std::move(modes)}};
}

// --- Eigenfunction -------------------------------------------------------------

namespace detail {

inline json coeffs_to_json(const CoeffMap& map) {
  json arr = json::array();
  for (const auto& [md, a] : map) arr.push_back({{"m", md.m}, {"n", md.n}, {"a", a}});
  return arr;
}

inline CoeffMap coeffs_from_json(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw InputError("field '" + path + "' must be an array");
  CoeffMap out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = arr[i];
    const json& m = field(e, "m", p);
    const json& n = field(e, "n", p);
    if (!m.is_number_integer()) throw InputError("field '" + p + ".m' must be an integer");
    if (!n.is_number_integer()) throw InputError("field '" + p + ".n' must be an integer");
    const ModeIndex md{m.get<std::int64_t>(), n.get<std::int64_t>()};
    if (out.count(md)) throw InputError("field '" + p + "' repeats a mode");
    out[md] = read_number(field(e, "a", p), p + ".a");
  }
  return out;
}

}  // namespace detail

inline json to_json(const Eigenfunction& u) {
  json j = {{"rect", to_json(u.rect())},
            {"mu", to_json(u.mu())},
            {"basis", std::string(to_string(u.basis()))},
            {"coeffs", detail::coeffs_to_json(u.coeffs())}};
  if (u.basis() == Basis::TorusFull) {
    j["coeffs_cs"] = detail::coeffs_to_json(u.coeffs_cs());
    j["coeffs_sc"] = detail::coeffs_to_json(u.coeffs_sc());
    j["coeffs_ss"] = detail::coeffs_to_json(u.coeffs_ss());
  } else if (u.basis() == Basis::CylinderMixed) {
    j["coeffs_sc"] = detail::coeffs_to_json(u.coeffs_sc());
  }
  return j;
}

inline Eigenfunction eigenfunction_from_json(const json& j) {
  Rectangle rect = rectangle_from_json(detail::field(j, "rect", ""));
  const json& mu_json = detail::field(j, "mu", "");
  SpectralParam mu = rect.is_generic() ? SpectralParam(detail::read_number(mu_json, "mu"))
                                       : spectral_param_from_json(mu_json, "mu");
  Basis basis = Basis::NeumannCosine;
  if (j.contains("basis")) {
    try {
      basis = parse_basis(detail::read_string(j["basis"], "basis"));
    } catch (const InputError& e) {
      throw InputError(std::string("field 'basis': ") + e.what());
    }
  }
  auto optional_map = [&](const char* key) {
    return j.contains(key) ? detail::coeffs_from_json(j[key], key) : CoeffMap{};
  };
  CoeffMap cc = detail::coeffs_from_json(detail::field(j, "coeffs", ""), "coeffs");
  switch (basis) {
    case Basis::NeumannCosine:
      for (const char* key : {"coeffs_cs", "coeffs_sc", "coeffs_ss"})
        if (j.contains(key) && !j[key].empty())
          throw InputError(std::string("field '") + key + "' is not allowed for basis 'neumann'");
      return Eigenfunction::neumann(std::move(rect), std::move(mu), std::move(cc));
    case Basis::TorusFull:
      return Eigenfunction::torus(std::move(rect), std::move(mu), std::move(cc), optional_map("coeffs_cs"),
                                  optional_map("coeffs_sc"), optional_map("coeffs_ss"));
    case Basis::CylinderMixed:
      for (const char* key : {"coeffs_cs", "coeffs_ss"})
        if (j.contains(key) && !j[key].empty())
          throw InputError(std::string("field '") + key + "' is not allowed for basis 'cylinder'");
      return Eigenfunction::cylinder(std::move(rect), std::move(mu), std::move(cc), optional_map("coeffs_sc"));
  }
  throw InputError("field 'basis' invalid");
}

inline json to_json(const EdgeTrace& tr) {
  json terms = json::array();
  for (const auto& [k, b] : tr.terms) terms.push_back({{"k", k}, {"b", b}});
  return {{"edge", std::string(to_string(tr.edge))}, {"length", tr.length}, {"omega", tr.omega()},
          {"terms", std::move(terms)}};
}

/// `samples` rows of "t,value" over the closed edge.
inline void write_trace_csv(std::ostream& os, const EdgeTrace& tr, std::int64_t samples) {
  os << "t,value\n";
  os.precision(17);
  for (std::int64_t j = 0; j < samples; ++j) {
    const double t = tr.length * static_cast<double>(j) / static_cast<double>(samples - 1);
    os << t << "," << tr(t) << "\n";
  }
}

// --- Certificates ------------------------------------------------------------

namespace detail {

template <class E, std::size_t N>
E parse_enum(const std::string& s, const E (&values)[N], const std::string& path) {
  for (E v : values)
    if (to_string(v) == s) return v;
  throw InputError("field '" + path + "' has unknown value '" + s + "'");
}

inline constexpr CertificateCase kCases[] = {CertificateCase::C1, CertificateCase::C2, CertificateCase::C3,
                                             CertificateCase::TorusReduced, CertificateCase::CylinderReduced};
inline constexpr CertificateKind kKinds[] = {CertificateKind::ExactZero, CertificateKind::SignPair,
                                             CertificateKind::NegativePoint, CertificateKind::CornerAverage};
inline constexpr Relation kRelations[] = {Relation::MeanZero, Relation::MeanNegative};

}  // namespace detail

inline json to_json(const WitnessCertificate& cert) {
  json points = json::array();
  for (const auto& pt : cert.points) points.push_back({{"edge", std::string(to_string(pt.edge))}, {"t", pt.t}});
  json j = {{"case_tag", std::string(to_string(cert.case_tag))},
            {"kind", std::string(to_string(cert.kind))},
            {"relation", std::string(to_string(cert.relation))},
            {"points", std::move(points)},
            {"derivation", cert.derivation}};
  if (cert.identity_residual) j["identity_residual"] = *cert.identity_residual;
  if (cert.selected_edge) j["selected_edge"] = std::string(to_string(*cert.selected_edge));
  if (cert.selected_trace_constant) j["selected_trace_constant"] = *cert.selected_trace_constant;
  return j;
}

inline WitnessCertificate certificate_from_json(const json& j) {
  WitnessCertificate cert;
  cert.case_tag =
      detail::parse_enum(detail::read_string(detail::field(j, "case_tag", ""), "case_tag"), detail::kCases, "case_tag");
  cert.kind = detail::parse_enum(detail::read_string(detail::field(j, "kind", ""), "kind"), detail::kKinds, "kind");
  if (j.contains("relation"))
    cert.relation = detail::parse_enum(detail::read_string(j["relation"], "relation"), detail::kRelations, "relation");
  const json& pts = detail::field(j, "points", "");
  if (!pts.is_array() || pts.empty()) throw InputError("field 'points' must be a non-empty array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = "points[" + std::to_string(i) + "]";
    Edge e;
    try {
      e = parse_edge(detail::read_string(detail::field(pts[i], "edge", p), p + ".edge"));
    } catch (const InputError& err) {
      throw InputError("field '" + p + ".edge': " + err.what());
    }
    cert.points.push_back({e, detail::read_number(detail::field(pts[i], "t", p), p + ".t")});
  }
  if (j.contains("derivation")) {
    if (!j["derivation"].is_array()) throw InputError("field 'derivation' must be an array of strings");
    for (const auto& line : j["derivation"]) cert.derivation.push_back(detail::read_string(line, "derivation[]"));
  }
  if (j.contains("identity_residual")) cert.identity_residual = detail::read_number(j["identity_residual"], "identity_residual");
  if (j.contains("selected_edge")) cert.selected_edge = parse_edge(detail::read_string(j["selected_edge"], "selected_edge"));
  if (j.contains("selected_trace_constant"))
    cert.selected_trace_constant = detail::read_number(j["selected_trace_constant"], "selected_trace_constant");
  return cert;
}

// --- Number theory -----------------------------------------------------------

template <class Int>
json decomposition_to_json(const Int& lam) {
  const auto d = decompose(lam);
  const auto p = predicted_class(lam);
  return {{"lam", detail::write_integer(BigInt(lam))},
          {"s", d.s},
          {"ell", detail::write_integer(BigInt(d.ell))},
          {"core", std::string(to_string(d.core))},
          {"class", std::string(to_string(p.cls))}};
}

template <class Int>
json to_json(const PropositionReport<Int>& rep) {
  json reps = json::array();
  for (const auto& [m, n] : rep.representations) reps.push_back({detail::write_integer(BigInt(m)), detail::write_integer(BigInt(n))});
  json viol = json::array();
  for (const auto& v : rep.violations)
    viol.push_back({{"m", detail::write_integer(BigInt(v.m))}, {"n", detail::write_integer(BigInt(v.n))}, {"reason", v.reason}});
  json j = {{"lam", detail::write_integer(BigInt(rep.lam))},
            {"s", rep.s},
            {"class", std::string(to_string(rep.predicted))},
            {"representations", std::move(reps)},
            {"violations", std::move(viol)},
            {"pass", rep.pass}};
  if (rep.s_equals_one) j["s_equals_one"] = true;
  return j;
}

inline json to_json(const PropositionSweepReport& rep) {
  json failures = json::array();
  for (const auto& f : rep.failures) failures.push_back(to_json(f));
  return {{"lam_max", rep.lam_max},
          {"with_representations", rep.with_representations},
          {"total_representations", rep.total_representations},
          {"s_equals_one", rep.s_equals_one},
          {"failures", std::move(failures)},
          {"pass", rep.pass}};
}

// --- Sweeps ------------------------------------------------------------------

inline json to_json(const SweepReport& rep) {
  json records = json::array();
  for (const auto& r : rep.records) {
    records.push_back({{"mu", to_json(r.mu)},
                       {"multiplicity", r.multiplicity},
                       {"worst_boundary_min", r.worst_boundary_min},
                       {"certificate_verified", r.certificate_verified},
                       {"relation_verified", r.relation_verified},
                       {"oracle_agrees", r.oracle_agrees},
                       {"trace_constants_zero", r.trace_constants_zero},
                       {"max_identity_residual", r.max_identity_residual},
                       {"inconclusive", r.inconclusive},
                       {"pass", r.pass}});
  }
  return {{"rect", to_json(rep.rect)},
          {"description", rep.rect.describe()},
          {"mu_max", rep.mu_max.str()},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"tol", rep.tol},
          {"records", std::move(records)},
          {"max_identity_residual", rep.max_identity_residual},
          {"pass", rep.pass}};
}

inline void write_sweep_csv(std::ostream& os, const SweepReport& rep) {
  os << "mu,trial,boundary_min,verified\n";
  os.precision(17);
  for (const auto& s : rep.samples)
    os << rep.records[s.eigenspace].mu.str() << "," << s.trial << "," << s.boundary_min << ","
       << (s.verified ? 1 : 0) << "\n";
}

}  // namespace nwit::io
