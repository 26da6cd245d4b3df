// Command-line front end.
//
// Exit codes: 0 success / all requested checks pass, 2 command-line usage
// error, 3 file IO or parse error, 4 input is not a frame (lower bound
// numerically zero), 5 a requested check or certification failed.

#include <complex>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfusion/gfusion.hpp"

namespace gf = gfusion;
using gf::json;

namespace {

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    gf::save_json_file(out, j);
    std::cerr << "wrote " << out << '\n';
  }
}

gf::SubsetMask parse_subset(const std::string& csv) {
  gf::SubsetMask m;
  std::size_t start = 0;
  while (start <= csv.size() && !csv.empty()) {
    const std::size_t comma = csv.find(',', start);
    const std::string id = csv.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!id.empty()) m.members.insert(id);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return m;
}

// Runs fn with a value of the scalar type named by the file's "mode".
template <class F>
int with_mode(const std::string& mode, F&& fn) {
  if (mode == "real") return fn(double{});
  return fn(std::complex<double>{});
}

// ---- gen -------------------------------------------------------------------

struct GenOpts {
  int dim = 4;
  int atoms = 6;
  std::string kind = "random";
  std::string base_kind = "random";  // dual_pair only: kind of the V frame
  double tight_constant = 1.0;
  std::uint64_t seed = 0;
  std::string mode = "real";
  bool ensure_frame = false;
  std::string out;
};

template <gf::ScalarType T>
json gen_payload(const GenOpts& o) {
  gf::GenConfig cfg;
  cfg.dim = o.dim;
  cfg.atoms = o.atoms;
  cfg.tight_constant = o.tight_constant;
  cfg.seed = o.seed;
  cfg.ensure_frame = o.ensure_frame;
  if (o.kind == "dual_pair") {
    if (o.base_kind == "parseval")
      cfg.kind = gf::FrameKind::parseval;
    else if (o.base_kind == "tight")
      cfg.kind = gf::FrameKind::tight;
    gf::DualPair<T> p = gf::alternate_dual_pair<T>(cfg);
    return gf::pair_to_json(p.v, p.w);
  }
  if (o.kind == "orthonormal") return gf::frame_to_json(gf::orthonormal_basis_frame<T>(o.dim));
  if (o.kind == "mercedes") {
    if constexpr (std::is_same_v<T, double>)
      return gf::frame_to_json(gf::mercedes_frame());
    else
      throw gf::InvalidConfig("gen: the mercedes witness is real-mode only");
  }
  if (o.kind == "parseval")
    cfg.kind = gf::FrameKind::parseval;
  else if (o.kind == "tight")
    cfg.kind = gf::FrameKind::tight;
  else if (o.kind == "bessel_only")
    cfg.kind = gf::FrameKind::bessel_only;
  else
    cfg.kind = gf::FrameKind::random;
  return gf::frame_to_json(gf::random_frame<T>(cfg));
}

int cmd_gen(const GenOpts& o) {
  const int rc = with_mode(o.mode, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    emit(gen_payload<T>(o), o.out);
    return 0;
  });
  return rc;
}

// ---- analyze ---------------------------------------------------------------

template <gf::ScalarType T>
int analyze_impl(const json& jf, const std::string& out, double tol_rel) {
  gf::GFusionFrame<T> frame = gf::frame_from_json<T>(jf);
  gf::HermitianOperator<T> s = gf::frame_operator(frame);
  const bool is_frame = s.invertible();
  const double a = std::max(0.0, s.lambda_min());
  const double b = s.lambda_max();
  const double gate = std::max(tol_rel, 1e-9);
  const double pdev = std::max(std::abs(s.lambda_min() - 1.0), std::abs(s.lambda_max() - 1.0));
  const double that = 0.5 * (s.lambda_min() + s.lambda_max());
  const double tdev =
      std::max(std::abs(s.lambda_min() - that), std::abs(s.lambda_max() - that)) /
      std::max(1.0, std::abs(that));

  json j;
  j["format"] = "gfusion-analysis";
  j["version"] = 1;
  j["frame_digest"] = gf::frame_digest(frame);
  j["mode"] = gf::detail::mode_name<T>();
  j["dim"] = frame.dim();
  j["atoms"] = frame.n_atoms();
  j["lower_bound"] = a;
  j["upper_bound"] = b;
  j["is_frame"] = is_frame;
  j["condition"] = is_frame ? json(b / s.lambda_min()) : json(nullptr);
  j["parseval"] = pdev <= gate;
  j["parseval_deviation"] = pdev;
  j["tight"] = is_frame && tdev <= gate;
  j["tight_constant"] = (is_frame && tdev <= gate) ? json(that) : json(nullptr);
  j["tight_deviation"] = tdev;
  emit(j, out);
  return is_frame ? 0 : 4;
}

// ---- check -----------------------------------------------------------------

struct CheckOpts {
  std::string file;
  int trials = 100;
  std::uint64_t seed = 0;
  double tol_rel = gf::kDefaultTolRel;
  std::optional<std::string> subset;
  std::string report;
};

template <gf::ScalarType T>
int check_impl(const json& jf, const CheckOpts& o) {
  gf::GFusionFrame<T> frame = gf::frame_from_json<T>(jf);
  gf::SuiteConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.tol_rel = o.tol_rel;
  if (o.subset) cfg.fixed_mask = parse_subset(*o.subset);
  if (cfg.fixed_mask) gf::mask_indices(frame, *cfg.fixed_mask);  // id validation up front
  gf::CheckSuiteResult res = gf::run_suite(frame, cfg);
  json j = gf::suite_result_to_json(res, cfg);
  std::cout << j.dump(2) << '\n';
  if (!o.report.empty()) {
    gf::save_json_file(o.report, j);
    std::cerr << "wrote " << o.report << '\n';
  }
  if (res.overall_pass) return 0;
  return gf::frame_operator(frame).invertible() ? 5 : 4;
}

// ---- dual / parsevalize ----------------------------------------------------

template <gf::ScalarType T>
int dual_impl(const json& jf, const std::string& out) {
  gf::GFusionFrame<T> frame = gf::frame_from_json<T>(jf);
  gf::DualFrame<T> dual = gf::canonical_dual(frame);
  gf::HermitianOperator<T> s = gf::frame_operator(frame);
  gf::DenseMatrix<T> sinv = s.power(-1.0).matrix();
  gf::DenseMatrix<T> sd = gf::frame_operator(dual.frame).matrix();
  const double cond = s.lambda_max() / s.lambda_min();
  const double residual = gf::operator_norm<T>(gf::DenseMatrix<T>(sd - sinv));
  const double tol = 1e-8 * cond * std::max(1.0, gf::operator_norm<T>(sinv));
  if (residual > tol)
    throw gf::Error("dual: verification failed, ||S_dual - S^-1|| = " +
                    std::to_string(residual));
  emit(gf::frame_to_json(dual.frame), out);
  return 0;
}

template <gf::ScalarType T>
int parsevalize_impl(const json& jf, const std::string& out) {
  gf::GFusionFrame<T> frame = gf::frame_from_json<T>(jf);
  gf::GFusionFrame<T> p = gf::parsevalize(frame);
  gf::HermitianOperator<T> s = gf::frame_operator(frame);
  gf::HermitianOperator<T> sp = gf::frame_operator(p);
  const double cond = s.lambda_max() / s.lambda_min();
  const double dev = std::max(std::abs(sp.lambda_min() - 1.0), std::abs(sp.lambda_max() - 1.0));
  if (dev > 1e-8 * cond)
    throw gf::Error("parsevalize: verification failed, deviation " + std::to_string(dev));
  emit(gf::frame_to_json(p), out);
  return 0;
}

// ---- pair ------------------------------------------------------------------

struct PairOpts {
  std::vector<std::string> files;
  bool check_resolution = false;
  bool perturbation = false;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  int probes = 32;
  bool check_dual = false;
  int trials = 100;
  std::uint64_t seed = 0;
  double tol_rel = gf::kDefaultTolRel;
  std::optional<std::string> subset;
  std::string report;
};

template <gf::ScalarType T>
int pair_impl(const json& jv, const json& jw, const PairOpts& o) {
  gf::GFusionFrame<T> v = gf::frame_from_json<T>(jv);
  gf::GFusionFrame<T> w = gf::frame_from_json<T>(jw);
  json out;
  out["format"] = "gfusion-pair-analysis";
  out["version"] = 1;
  out["frame_digest"] = gf::frame_digest(v) + ":" + gf::frame_digest(w);

  gf::PairAnalysis an = gf::analyze_pair(v, w);
  out["analysis"] = {{"sigma_min", an.sigma_min},
                     {"sigma_max", an.sigma_max},
                     {"norm_bound", an.norm_bound},
                     {"bounded_below", an.bounded_below},
                     {"invertible", an.invertible},
                     {"w_lower_certificate", an.w_lower_certificate}};
  bool fail = false;

  if (o.check_resolution) {
    try {
      gf::ResolutionWitness<T> wit = gf::resolution_witness(v, w);
      gf::IdentityReport rep = gf::verify_resolution(v, w, wit, o.tol_rel);
      out["resolution"] = {{"k_norm", wit.k_norm}, {"report", gf::report_to_json(rep)}};
      if (!rep.pass) fail = true;
    } catch (const gf::Error& e) {
      out["resolution"] = {{"error", e.what()}};
      fail = true;
    }
  }

  if (o.perturbation) {
    try {
      gf::PerturbationResult pr = gf::perturbation_check(v, w, o.lambda1, o.lambda2, o.probes,
                                                         o.seed, o.tol_rel);
      out["perturbation"] = {{"lambda1", pr.lambda1},
                             {"lambda2", pr.lambda2},
                             {"lambda1_star", pr.lambda1_star},
                             {"sigma_min", pr.sigma_min},
                             {"operator_condition", pr.operator_condition},
                             {"probes_ok", pr.probes_ok},
                             {"certified", pr.certified},
                             {"w_lower_certificate", pr.w_lower_certificate}};
      if (!pr.certified) fail = true;
    } catch (const gf::Error& e) {
      out["perturbation"] = {{"error", e.what()}};
      fail = true;
    }
  }

  if (o.check_dual) {
    gf::SuiteConfig cfg;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.tol_rel = o.tol_rel;
    if (o.subset) cfg.fixed_mask = parse_subset(*o.subset);
    gf::CheckSuiteResult res = gf::run_pair_suite(v, w, cfg);
    out["dual_checks"] = gf::suite_result_to_json(res, cfg);
    if (!res.overall_pass) fail = true;
  }

  std::cout << out.dump(2) << '\n';
  if (!o.report.empty()) {
    gf::save_json_file(o.report, out);
    std::cerr << "wrote " << o.report << '\n';
  }
  return fail ? 5 : 0;
}

int cmd_pair(const PairOpts& o) {
  json jv, jw;
  std::string mode;
  if (o.files.size() == 1) {
    json j = gf::load_json_file(o.files[0]);
    gf::detail::require_header(j, "gfusion-pair", "pair file");
    if (!j.contains("v") || !j.contains("w"))
      throw gf::ParseError("pair file: needs \"v\" and \"w\" frames");
    jv = j["v"];
    jw = j["w"];
    mode = gf::mode_of(jv);
  } else {
    jv = gf::load_json_file(o.files[0]);
    jw = gf::load_json_file(o.files[1]);
    mode = gf::mode_of(jv);
    if (gf::mode_of(jw) != mode) throw gf::ParseError("pair: the two frames differ in mode");
  }
  return with_mode(mode, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    return pair_impl<T>(jv, jw, o);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous g-fusion frames on finite weighted measure spaces"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate a frame or a dual pair");
  cgen->add_option("--dim", gen.dim, "ambient dimension")->check(CLI::Range(1, 64));
  cgen->add_option("--atoms", gen.atoms, "number of measure atoms")->check(CLI::Range(1, 4096));
  cgen->add_option("--kind", gen.kind, "frame kind")
      ->check(CLI::IsMember({"random", "parseval", "tight", "bessel_only", "dual_pair",
                             "orthonormal", "mercedes"}));
  cgen->add_option("--base-kind", gen.base_kind, "dual_pair: kind of the first frame")
      ->check(CLI::IsMember({"random", "parseval", "tight"}));
  cgen->add_option("--tight-constant", gen.tight_constant, "tight frame constant");
  cgen->add_option("--seed", gen.seed, "rng seed");
  cgen->add_option("--mode", gen.mode, "scalar field")->check(CLI::IsMember({"real", "complex"}));
  cgen->add_flag("--ensure-frame", gen.ensure_frame, "redraw until well conditioned");
  cgen->add_option("--out", gen.out, "output file (stdout if omitted)");

  std::string analyze_file, analyze_out;
  double analyze_tol = gf::kDefaultTolRel;
  CLI::App* cana = app.add_subcommand("analyze", "frame bounds and structure flags");
  cana->add_option("file", analyze_file, "frame file")->required();
  cana->add_option("--tol-rel", analyze_tol, "structure gate tolerance");
  cana->add_option("--out", analyze_out, "output file (stdout if omitted)");

  CheckOpts chk;
  CLI::App* cchk = app.add_subcommand("check", "run the identity/inequality suite");
  cchk->add_option("file", chk.file, "frame file")->required();
  cchk->add_option("--trials", chk.trials, "trials per check")->check(CLI::Range(1, 1000000));
  cchk->add_option("--seed", chk.seed, "rng seed");
  cchk->add_option("--tol-rel", chk.tol_rel, "relative tolerance");
  cchk->add_option("--subset", chk.subset, "fixed comma-separated atom ids (else random masks)");
  cchk->add_option("--report", chk.report, "also write the report here");

  std::string dual_file, dual_out;
  CLI::App* cdual = app.add_subcommand("dual", "canonical dual frame");
  cdual->add_option("file", dual_file, "frame file")->required();
  cdual->add_option("--out", dual_out, "output file (stdout if omitted)");

  std::string pz_file, pz_out;
  CLI::App* cpz = app.add_subcommand("parsevalize", "canonical Parseval companion");
  cpz->add_option("file", pz_file, "frame file")->required();
  cpz->add_option("--out", pz_out, "output file (stdout if omitted)");

  PairOpts pr;
  CLI::App* cpair = app.add_subcommand("pair", "two-system pair operator analysis");
  cpair->add_option("files", pr.files, "pair file, or two frame files")
      ->expected(1, 2)
      ->required();
  cpair->add_flag("--check-resolution", pr.check_resolution,
                  "verify the inverse-witness resolution of the identity");
  cpair->add_flag("--perturbation", pr.perturbation, "perturbation certificate for W");
  cpair->add_option("--lambda1", pr.lambda1, "perturbation constant (default ||I - S_VW||)");
  cpair->add_option("--lambda2", pr.lambda2, "perturbation constant (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  cpair->add_option("--probes", pr.probes, "random probe count")->check(CLI::Range(0, 100000));
  cpair->add_flag("--check-dual", pr.check_dual, "run the alternate-dual check suite");
  cpair->add_option("--trials", pr.trials, "trials per dual check")
      ->check(CLI::Range(1, 1000000));
  cpair->add_option("--seed", pr.seed, "rng seed");
  cpair->add_option("--tol-rel", pr.tol_rel, "relative tolerance");
  cpair->add_option("--subset", pr.subset, "fixed comma-separated atom ids");
  cpair->add_option("--report", pr.report, "also write the analysis here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (cana->parsed()) {
      const json j = gf::load_json_file(analyze_file);
      return with_mode(gf::mode_of(j), [&](auto tag) {
        using T = std::decay_t<decltype(tag)>;
        return analyze_impl<T>(j, analyze_out, analyze_tol);
      });
    }
    if (cchk->parsed()) {
      const json j = gf::load_json_file(chk.file);
      return with_mode(gf::mode_of(j), [&](auto tag) {
        using T = std::decay_t<decltype(tag)>;
        return check_impl<T>(j, chk);
      });
    }
    if (cdual->parsed()) {
      const json j = gf::load_json_file(dual_file);
      return with_mode(gf::mode_of(j), [&](auto tag) {
        using T = std::decay_t<decltype(tag)>;
        return dual_impl<T>(j, dual_out);
      });
    }
    if (cpz->parsed()) {
      const json j = gf::load_json_file(pz_file);
      return with_mode(gf::mode_of(j), [&](auto tag) {
        using T = std::decay_t<decltype(tag)>;
        return parsevalize_impl<T>(j, pz_out);
      });
    }
    if (cpair->parsed()) return cmd_pair(pr);
  } catch (const gf::NotAFrame& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const gf::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const gf::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
  return 2;
}
