#pragma once

// Command-line front end. Exit codes: 0 success / check passed,
// 1 a mathematical check failed or was inconclusive, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nwit/eigenfunction.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/io.hpp"
#include "nwit/oracle.hpp"
#include "nwit/spectrum.hpp"
#include "nwit/twosquares.hpp"
#include "nwit/witness.hpp"

namespace nwit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

inline std::int64_t parse_lam(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string(what) + " must be an integer, got '" + text + "'");
  }
}

}  // namespace detail

struct Options {
  double tol = 1e-9;
  std::string rect_path;
  std::string mu_max;
  std::string lam;
  std::string max_lam;
  bool summary_only = false;
  std::string in_path;
  std::string out_path;
  std::string cert_path;
  std::string csv_path;
  std::string edge = "bottom";
  std::int64_t samples = 512;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::int64_t samples_per_edge = 4096;
};

inline int run_classify(const Options& o, std::ostream& out) {
  const Rectangle rect = io::rectangle_from_json(detail::read_json_file(o.rect_path));
  out << io::json{{"rect", io::to_json(rect)}, {"case", std::string(to_string(classify(rect)))}}.dump() << "\n";
  return kExitOk;
}

inline int run_spectrum(const Options& o, std::ostream& out) {
  const Rectangle rect = io::rectangle_from_json(detail::read_json_file(o.rect_path));
  const Rational mu_max = Rational::parse(o.mu_max);
  for (const auto& es : enumerate(rect, mu_max)) out << io::to_json(es).dump() << "\n";
  return kExitOk;
}

inline int run_decompose(const Options& o, std::ostream& out) {
  BigInt lam;
  try {
    lam = BigInt(o.lam);
  } catch (const std::exception&) {
    throw InputError("N must be an integer, got '" + o.lam + "'");
  }
  out << io::decomposition_to_json(lam).dump() << "\n";
  return kExitOk;
}

inline int run_check_prop(const Options& o, std::ostream& out) {
  const std::int64_t lam_max = detail::parse_lam(o.max_lam, "--max");
  auto visit = [&](const PropositionReport<std::int64_t>& rep) {
    if (!o.summary_only && (!rep.representations.empty() || !rep.pass)) out << io::to_json(rep).dump() << "\n";
  };
  const auto summary = proposition_sweep(lam_max, visit);
  io::json j = io::to_json(summary);
  out << io::json{{"summary", std::move(j)}}.dump() << "\n";
  return summary.pass ? kExitOk : kExitCheckFailed;
}

inline int run_trace(const Options& o, std::ostream& out) {
  const Eigenfunction u = io::eigenfunction_from_json(detail::read_json_file(o.in_path));
  const EdgeTrace tr = trace(u, parse_edge(o.edge));
  if (!o.csv_path.empty()) {
    if (o.samples < 2) throw InputError("--samples must be at least 2");
    auto csv = detail::open_output(o.csv_path);
    io::write_trace_csv(csv, tr, o.samples);
  }
  out << io::to_json(tr).dump() << "\n";
  return kExitOk;
}

inline int run_witness(const Options& o, std::ostream& out) {
  const Eigenfunction u = io::eigenfunction_from_json(detail::read_json_file(o.in_path));
  WitnessOptions wopts;
  wopts.tol = o.tol;
  const WitnessCertificate cert = witness(u, wopts);
  const CertificateCheck chk = check_certificate(u, cert, o.tol);
  io::json j = io::to_json(cert);
  j["verified"] = chk.min_nonpositive;
  j["relation_verified"] = chk.relation_holds;
  j["min_value"] = chk.min_value;
  j["tol"] = o.tol;
  if (!o.out_path.empty()) {
    auto file = detail::open_output(o.out_path);
    file << j.dump(2) << "\n";
  } else {
    out << j.dump() << "\n";
  }
  return chk.min_nonpositive ? kExitOk : kExitCheckFailed;
}

inline int run_verify(const Options& o, std::ostream& out) {
  const Eigenfunction u = io::eigenfunction_from_json(detail::read_json_file(o.in_path));
  const WitnessCertificate cert = io::certificate_from_json(detail::read_json_file(o.cert_path));
  const CertificateCheck chk = check_certificate(u, cert, o.tol);
  out << io::json{{"verified", chk.min_nonpositive},
                  {"relation_verified", chk.relation_holds},
                  {"min_value", chk.min_value},
                  {"mean_value", chk.mean_value},
                  {"tol", o.tol}}
             .dump()
      << "\n";
  return chk.min_nonpositive ? kExitOk : kExitCheckFailed;
}

inline int run_sweep(const Options& o, std::ostream& out) {
  const Rectangle rect = io::rectangle_from_json(detail::read_json_file(o.rect_path));
  SweepOptions sopts;
  sopts.tol = o.tol;
  sopts.witness.tol = o.tol;
  sopts.samples_per_edge = o.samples_per_edge;
  sopts.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  const SweepReport rep = theorem_sweep(rect, Rational::parse(o.mu_max), o.trials, o.seed, sopts);
  if (!o.csv_path.empty()) {
    auto csv = detail::open_output(o.csv_path);
    io::write_sweep_csv(csv, rep);
  }
  out << io::to_json(rep).dump() << "\n";
  return rep.pass ? kExitOk : kExitCheckFailed;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Neumann rectangle eigenfunctions: spectra, two-square classes and boundary witnesses", "nwit"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "numerical tolerance relative to (1 + |a|_inf)")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "rationality case of a rectangle");
  classify_cmd->add_option("--rect", o.rect_path, "rectangle JSON")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues mu <= Q with index sets, JSON lines");
  spectrum_cmd->add_option("--rect", o.rect_path, "rectangle JSON")->required();
  spectrum_cmd->add_option("--mu-max", o.mu_max, "upper bound, rational \"num/den\"")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "2-adic class of an integer eigenvalue");
  decompose_cmd->add_option("N", o.lam, "positive integer")->required();

  auto* prop_cmd = app.add_subcommand("check-prop", "verify the two-square parity classes for lam <= N");
  prop_cmd->add_option("--max", o.max_lam, "largest lam")->required();
  prop_cmd->add_flag("--summary-only", o.summary_only, "only print the summary line");

  auto* trace_cmd = app.add_subcommand("trace", "boundary trace of an eigenfunction");
  trace_cmd->add_option("--in", o.in_path, "eigenfunction JSON")->required();
  trace_cmd->add_option("--edge", o.edge, "bottom|top|left|right")->capture_default_str();
  trace_cmd->add_option("--csv", o.csv_path, "write (t,value) samples");
  trace_cmd->add_option("--samples", o.samples, "CSV sample count")->capture_default_str();

  auto* witness_cmd = app.add_subcommand("witness", "boundary non-positivity certificate");
  witness_cmd->add_option("--in", o.in_path, "eigenfunction JSON")->required();
  witness_cmd->add_option("--out", o.out_path, "certificate output file");

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against an eigenfunction");
  verify_cmd->add_option("--in", o.in_path, "eigenfunction JSON")->required();
  verify_cmd->add_option("--cert", o.cert_path, "certificate JSON")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "random eigenspace sweep with certificates");
  sweep_cmd->add_option("--rect", o.rect_path, "rectangle JSON")->required();
  sweep_cmd->add_option("--mu-max", o.mu_max, "upper bound, rational \"num/den\"")->required();
  sweep_cmd->add_option("--trials", o.trials, "samples per eigenspace")->capture_default_str();
  sweep_cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sweep_cmd->add_option("--csv", o.csv_path, "per-sample boundary minima");
  sweep_cmd->add_option("--threads", o.threads, "worker threads, 0 = hardware")->capture_default_str();
  sweep_cmd->add_option("--samples-per-edge", o.samples_per_edge, "boundary sampling density")->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("nwit");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nwit: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*classify_cmd) return run_classify(o, out);
    if (*spectrum_cmd) return run_spectrum(o, out);
    if (*decompose_cmd) return run_decompose(o, out);
    if (*prop_cmd) return run_check_prop(o, out);
    if (*trace_cmd) return run_trace(o, out);
    if (*witness_cmd) return run_witness(o, out);
    if (*verify_cmd) return run_verify(o, out);
    if (*sweep_cmd) return run_sweep(o, out);
  } catch (const NumericalInconclusive& e) {
    err << "nwit: inconclusive: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const InconsistentSpectrum& e) {
    err << "nwit: inconsistent spectrum: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ConstantEigenfunction& e) {
    err << "nwit: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "nwit: " << e.what() << "\n";
    return kExitInputError;
  } catch (const io::json::exception& e) {
    err << "nwit: invalid JSON value: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace nwit::cli
