#pragma once

// Analysis of the pair operator of two g-fusion systems over one measure
// space: spectral data, an inverse witness for the resolution of the
// identity, and a perturbation-style certificate for the second system's
// lower frame bound.

#include <optional>

#include "gfusion/identities.hpp"
#include "gfusion/operators.hpp"
#include "gfusion/report.hpp"
#include "gfusion/rng.hpp"

namespace gfusion {

// Absolute singular-value floor deciding bounded-below / invertible; in equal
// finite dimensions the two properties coincide.
inline constexpr double kPairSigmaFloor = 1e-8;

struct PairAnalysis {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double norm_bound = 0.0;      // sqrt(B_V B_W), always >= sigma_max up to roundoff
  bool bounded_below = false;   // sigma_min > kPairSigmaFloor
  bool invertible = false;      // same flag: equal finite dimensions
  double w_lower_certificate = 0.0;  // sigma_min^2 / B_V when bounded below, else 0
};

template <ScalarType T>
PairAnalysis analyze_pair(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  require_pair_compatible(v, w);
  DenseMatrix<T> s_vw = pair_operator(v, w);
  Eigen::JacobiSVD<DenseMatrix<T>> svd(s_vw);
  PairAnalysis out;
  out.sigma_max = svd.singularValues()(0);
  out.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  const double bv = frame_operator(v).lambda_max();
  const double bw = frame_operator(w).lambda_max();
  out.norm_bound = std::sqrt(bv * bw);
  out.bounded_below = out.sigma_min > kPairSigmaFloor;
  out.invertible = out.bounded_below;
  if (out.bounded_below) out.w_lower_certificate = out.sigma_min * out.sigma_min / bv;
  return out;
}

// Inverse witness K = S_VW^-1 used by the resolution check.
template <ScalarType T>
struct ResolutionWitness {
  DenseMatrix<T> k;
  double k_norm = 0.0;
};

template <ScalarType T>
ResolutionWitness<T> resolution_witness(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  require_pair_compatible(v, w);
  DenseMatrix<T> s_vw = pair_operator(v, w);
  Eigen::JacobiSVD<DenseMatrix<T>> svd(s_vw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sig = svd.singularValues();
  if (sig(sig.size() - 1) <= kPairSigmaFloor)
    throw SingularOperator("resolution_witness: pair operator not bounded below, sigma_min = " +
                           std::to_string(sig(sig.size() - 1)));
  DenseVector<T> inv(sig.size());
  for (Eigen::Index i = 0; i < sig.size(); ++i) inv(i) = T(1.0 / sig(i));
  ResolutionWitness<T> out;
  out.k = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  out.k_norm = 1.0 / sig(sig.size() - 1);
  return out;
}

// Checks sum_i mu_i T_i = I for T_i = w_i nu_i K L_V,i^H L_W,i; on a pass
// sigma_min(S_VW) >= (1 - residual)/||K|| and the W lower certificate
// sigma_min^2 / B_V is validated against the spectrum of S_W.
template <ScalarType T>
IdentityReport verify_resolution(const GFusionFrame<T>& v, const GFusionFrame<T>& w,
                                 const ResolutionWitness<T>& witness,
                                 double tol_rel = kDefaultTolRel) {
  require_pair_compatible(v, w);
  const int n = v.dim();
  DenseMatrix<T> sum = DenseMatrix<T>::Zero(n, n);
  for (int i = 0; i < v.n_atoms(); ++i) {
    const double c = v.atom(i).mu * v.atom(i).omega * w.atom(i).omega;
    sum += T(c) * (witness.k * (v.local(i).matrix().adjoint() * w.local(i).matrix()));
  }
  const double residual =
      operator_norm<T>(DenseMatrix<T>(sum - DenseMatrix<T>::Identity(n, n)));
  const double tol = tol_rel * std::max(1.0, witness.k_norm);
  IdentityReport r = make_identity_report(
      "pair_resolution", "sum_i mu_i w_i nu_i K P L^H G P = I, K = S_VW^-1", 1.0,
      1.0 - residual, residual, tol);
  if (r.pass) {
    const double sigma_lower = (1.0 - residual) / witness.k_norm;
    const double cert = sigma_lower * sigma_lower / frame_operator(v).lambda_max();
    const double aw = frame_operator(w).lambda_min();
    if (aw < cert - 1e-9 * std::max(1.0, cert))
      throw Error("verify_resolution: certified W lower bound " + std::to_string(cert) +
                  " exceeds observed " + std::to_string(aw));
  }
  return r;
}

struct PerturbationResult {
  double lambda1 = 0.0;          // hypothesis constants actually used
  double lambda2 = 0.0;
  double lambda1_star = 0.0;     // ||I - S_VW||
  double sigma_min = 0.0;        // of S_VW
  bool operator_condition = false;  // ||I - S_VW|| <= lambda1 + lambda2 sigma_min (+tol)
  bool probes_ok = false;        // pointwise ||S f - f|| <= l1 ||f|| + l2 ||S f|| on probes
  bool certified = false;
  double w_lower_certificate = 0.0;  // ((1-l1)/(1+l2))^2 / B_V when certified
};

// Perturbation certificate: if ||S_VW f - f|| <= l1 ||f|| + l2 ||S_VW f||
// with l1, l2 in [0,1) then ||S_VW f|| >= (1-l1)/(1+l2) ||f||, and via
// Cauchy-Schwarz the W system has lower bound ((1-l1)/(1+l2))^2 / B_V.
// When no constants are supplied, l1 = ||I - S_VW|| and l2 = 0.
// Probes: standard basis, adjacent-sum vectors, then seeded random draws.
template <ScalarType T>
PerturbationResult perturbation_check(const GFusionFrame<T>& v, const GFusionFrame<T>& w,
                                      std::optional<double> lambda1 = std::nullopt,
                                      std::optional<double> lambda2 = std::nullopt,
                                      int random_probes = 32, std::uint64_t seed = 0,
                                      double tol_rel = kDefaultTolRel) {
  require_pair_compatible(v, w);
  const int n = v.dim();
  DenseMatrix<T> s_vw = pair_operator(v, w);
  DenseMatrix<T> dev = DenseMatrix<T>::Identity(n, n) - s_vw;

  PerturbationResult out;
  out.lambda1_star = operator_norm<T>(dev);
  Eigen::JacobiSVD<DenseMatrix<T>> svd(s_vw);
  out.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  out.lambda1 = lambda1.value_or(out.lambda1_star);
  out.lambda2 = lambda2.value_or(0.0);
  if (out.lambda1 < 0.0 || out.lambda2 < 0.0 || out.lambda2 >= 1.0)
    throw InvalidConfig("perturbation_check: need lambda1 >= 0 and lambda2 in [0,1)");

  const double tol = tol_rel * std::max(1.0, out.lambda1_star);
  out.operator_condition = out.lambda1_star <= out.lambda1 + out.lambda2 * out.sigma_min + tol;

  std::vector<DenseVector<T>> probes;
  for (int i = 0; i < n; ++i) probes.push_back(DenseVector<T>::Unit(n, i));
  for (int i = 0; i + 1 < n; ++i) {
    DenseVector<T> p = DenseVector<T>::Unit(n, i) + DenseVector<T>::Unit(n, i + 1);
    probes.push_back(DenseVector<T>(p / T(p.norm())));
  }
  Rng rng(derive_stream(seed, fnv1a64("perturbation_probe")));
  for (int k = 0; k < random_probes; ++k)
    probes.push_back(detail::draw_unit_vector<T>(rng, n));

  out.probes_ok = true;
  for (const auto& f : probes) {
    DenseVector<T> sf = s_vw * f;
    if ((sf - f).norm() > out.lambda1 * f.norm() + out.lambda2 * sf.norm() + tol) {
      out.probes_ok = false;
      break;
    }
  }

  out.certified = out.lambda1 < 1.0 && out.operator_condition && out.probes_ok;
  if (out.certified) {
    const double ratio = (1.0 - out.lambda1) / (1.0 + out.lambda2);
    const double cert = ratio * ratio / frame_operator(v).lambda_max();
    const double aw = frame_operator(w).lambda_min();
    if (aw < cert - 1e-9 * std::max(1.0, cert))
      throw Error("perturbation_check: certified W lower bound " + std::to_string(cert) +
                  " exceeds observed " + std::to_string(aw));
    out.w_lower_certificate = cert;
  }
  return out;
}

}  // namespace gfusion
