#pragma once

// JSON (de)serialization for frames, dual pairs and check reports.
//
// Frame files, version 1: "basis" holds spanning vectors (rows); they are
// orthonormalized on load unless already orthonormal, in which case they are
// kept bit-exact.  "lambda" holds the raw local operator (rows of length
// dim); an already-canonical local is likewise adopted unchanged, so
// save -> load -> save is byte-identical.  Real mode uses plain numbers,
// complex mode uses [re, im] pairs (plain numbers are accepted as real on
// load).  Non-finite values are rejected everywhere.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gfusion/identities.hpp"
#include "gfusion/model.hpp"

namespace gfusion {

using json = nlohmann::ordered_json;

inline constexpr int kFrameFormatVersion = 1;

namespace detail {

inline double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite value");
  return v;
}

template <ScalarType T>
json scalar_to_json(const T& v) {
  if constexpr (is_complex_v<T>)
    return json::array({v.real(), v.imag()});
  else
    return v;
}

template <ScalarType T>
T scalar_from_json(const json& j, const char* what) {
  if constexpr (is_complex_v<T>) {
    if (j.is_array()) {
      if (j.size() != 2) throw ParseError(std::string(what) + ": complex entry needs [re, im]");
      return T(finite_number(j[0], what), finite_number(j[1], what));
    }
    return T(finite_number(j, what), 0.0);
  } else {
    if (j.is_array())
      throw ParseError(std::string(what) + ": complex entry in a real-mode file");
    return finite_number(j, what);
  }
}

template <ScalarType T>
json matrix_rows_to_json(const DenseMatrix<T>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json<T>(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ScalarType T>
DenseMatrix<T> matrix_rows_from_json(const json& j, int cols, const char* what) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string(what) + ": expected a non-empty array of rows");
  DenseMatrix<T> m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols))
      throw ParseError(std::string(what) + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < row.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          scalar_from_json<T>(row[c], what);
  }
  return m;
}

template <ScalarType T>
constexpr const char* mode_name() {
  return is_complex_v<T> ? "complex" : "real";
}

inline void require_header(const json& j, const char* format, const char* who) {
  if (!j.is_object()) throw ParseError(std::string(who) + ": expected a JSON object");
  if (!j.contains("format") || j["format"] != format)
    throw ParseError(std::string(who) + ": missing or wrong \"format\" (want \"" + format +
                     "\")");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kFrameFormatVersion)
    throw ParseError(std::string(who) + ": unsupported version");
}

}  // namespace detail

// "real" or "complex"; used to pick the scalar type before a full parse.
inline std::string mode_of(const json& j) {
  if (!j.is_object() || !j.contains("mode") || !j["mode"].is_string())
    throw ParseError("frame file: missing \"mode\"");
  const std::string m = j["mode"].get<std::string>();
  if (m != "real" && m != "complex") throw ParseError("frame file: mode must be real|complex");
  return m;
}

template <ScalarType T>
json frame_to_json(const GFusionFrame<T>& frame) {
  json j;
  j["format"] = "gfusion-frame";
  j["version"] = kFrameFormatVersion;
  j["mode"] = detail::mode_name<T>();
  j["dim"] = frame.dim();
  json atoms = json::array();
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const MeasureAtom& a = frame.atom(i);
    json ja;
    ja["id"] = a.id;
    ja["mu"] = a.mu;
    ja["omega"] = a.omega;
    // orthonormal basis vectors, one per row (transpose, not adjoint: the
    // stored rows are the vectors themselves, unconjugated)
    ja["basis"] = detail::matrix_rows_to_json<T>(
        DenseMatrix<T>(frame.subspace(i).basis().transpose()));
    ja["lambda"] = detail::matrix_rows_to_json<T>(frame.local(i).matrix());
    atoms.push_back(std::move(ja));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

template <ScalarType T>
GFusionFrame<T> frame_from_json(const json& j) {
  detail::require_header(j, "gfusion-frame", "frame file");
  if (mode_of(j) != detail::mode_name<T>())
    throw ParseError(std::string("frame file: mode is ") + mode_of(j) + ", expected " +
                     detail::mode_name<T>());
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("frame file: missing integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ParseError("frame file: dim must be >= 1");
  if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
    throw ParseError("frame file: missing non-empty \"atoms\"");

  std::vector<MeasureAtom> atoms;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (const json& ja : j["atoms"]) {
    if (!ja.is_object() || !ja.contains("id") || !ja["id"].is_string())
      throw ParseError("frame file: every atom needs a string \"id\"");
    MeasureAtom a;
    a.id = ja["id"].get<std::string>();
    a.mu = ja.contains("mu") ? detail::finite_number(ja["mu"], "mu") : 1.0;
    a.omega = ja.contains("omega") ? detail::finite_number(ja["omega"], "omega") : 1.0;
    atoms.push_back(std::move(a));

    if (!ja.contains("basis") || !ja.contains("lambda"))
      throw ParseError("frame file: every atom needs \"basis\" and \"lambda\"");
    DenseMatrix<T> span_rows = detail::matrix_rows_from_json<T>(ja["basis"], dim, "basis");
    DenseMatrix<T> raw = detail::matrix_rows_from_json<T>(ja["lambda"], dim, "lambda");
    try {
      Subspace<T> s =
          Subspace<T>::from_spanning(dim, DenseMatrix<T>(span_rows.transpose()));
      try {
        locals.push_back(LocalOperator<T>::adopt_canonical(raw, s));
      } catch (const Error&) {
        locals.push_back(LocalOperator<T>::canonicalize(raw, s));
      }
      subspaces.push_back(std::move(s));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("frame file: atom \"" + atoms.back().id + "\": " + e.what());
    }
  }
  try {
    return GFusionFrame<T>(dim, MeasureSpace(std::move(atoms)), std::move(subspaces),
                           std::move(locals));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("frame file: ") + e.what());
  }
}

template <ScalarType T>
json pair_to_json(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  json j;
  j["format"] = "gfusion-pair";
  j["version"] = kFrameFormatVersion;
  j["mode"] = detail::mode_name<T>();
  j["v"] = frame_to_json(v);
  j["w"] = frame_to_json(w);
  return j;
}

template <ScalarType T>
std::pair<GFusionFrame<T>, GFusionFrame<T>> pair_from_json(const json& j) {
  detail::require_header(j, "gfusion-pair", "pair file");
  if (!j.contains("v") || !j.contains("w"))
    throw ParseError("pair file: needs \"v\" and \"w\" frames");
  return {frame_from_json<T>(j["v"]), frame_from_json<T>(j["w"])};
}

inline json report_to_json(const IdentityReport& r) {
  json j;
  j["name"] = r.name;
  j["paper_ref"] = r.paper_ref;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["margin"] = r.margin;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["trials"] = r.trials;
  return j;
}

inline json suite_result_to_json(const CheckSuiteResult& result, const SuiteConfig& cfg) {
  json j;
  j["format"] = "gfusion-report";
  j["version"] = kFrameFormatVersion;
  j["frame_digest"] = result.frame_digest;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tol_rel"] = cfg.tol_rel;
  j["overall_pass"] = result.overall_pass;
  j["corrected_forms_note"] = corrected_forms_note();
  json checks = json::array();
  for (const auto& r : result.checks) checks.push_back(report_to_json(r));
  j["checks"] = std::move(checks);
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace gfusion
