#pragma once

// Canonical dual, Parseval normalization and the alternate-dual test.
//
// Canonical dual of (F, Lambda, omega): subspaces S^-1 F(i), local operators
// Lambda_i P_i S^-1, same weights.  Its frame operator is S^-1 and the mixed
// reconstruction sum telescopes to the identity.
//
// Alternate duality of a pair (V, W): the mixed sum with the mixer S_V^-1,
//
//   D(V, W) = (sum_i mu_i omega_i nu_i P_i^G Gamma_i^H Lambda_i P_i^F) S_V^-1
//
// equals the identity.  The mixer sits outside the atom sum; that is the only
// placement that is well typed for local output dims != ambient dim, and it
// makes W = V dual for every frame (the reconstruction formula), with the
// lower-bound certificate A_W >= 1 / (||S_V^-1||^2 B_V) provable as stated.

#include <cmath>
#include <utility>
#include <vector>

#include "gfusion/operators.hpp"

namespace gfusion {

template <ScalarType T>
struct DualFrame {
  GFusionFrame<T> frame;
};

template <ScalarType T>
GFusionFrame<T> transformed_frame(const GFusionFrame<T>& frame, const DenseMatrix<T>& map) {
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  subspaces.reserve(static_cast<std::size_t>(frame.n_atoms()));
  locals.reserve(static_cast<std::size_t>(frame.n_atoms()));
  for (int i = 0; i < frame.n_atoms(); ++i) {
    DenseMatrix<T> mapped = map * frame.subspace(i).basis();
    Subspace<T> s = Subspace<T>::from_spanning(frame.dim(), mapped);
    if (s.dim() != frame.subspace(i).dim())
      throw Error("transformed_frame: subspace rank collapsed under the map");
    // Lambda P map lands inside the mapped span, so canonicalization is a
    // numerical no-op here; it is applied anyway to keep the invariant exact.
    DenseMatrix<T> l = frame.local(i).matrix() * map;
    locals.push_back(LocalOperator<T>::canonicalize(l, s));
    subspaces.push_back(std::move(s));
  }
  return GFusionFrame<T>(frame.dim(), frame.space(), std::move(subspaces), std::move(locals));
}

template <ScalarType T>
DualFrame<T> canonical_dual(const GFusionFrame<T>& frame) {
  HermitianOperator<T> s = frame_operator(frame);
  if (!s.invertible()) throw NotAFrame("canonical_dual: frame operator not invertible");
  return {transformed_frame(frame, s.power(-1.0).matrix())};
}

// Same construction with S^-1/2: result has frame operator I.
template <ScalarType T>
GFusionFrame<T> parsevalize(const GFusionFrame<T>& frame) {
  HermitianOperator<T> s = frame_operator(frame);
  if (!s.invertible()) throw NotAFrame("parsevalize: frame operator not invertible");
  return transformed_frame(frame, s.power(-0.5).matrix());
}

struct AlternateDualResult {
  bool ok = false;
  double residual = 0.0;  // ||D(V,W) - I||
};

// Default tolerance scales with the ambient dimension.
template <ScalarType T>
double alternate_dual_default_tol(const GFusionFrame<T>& v) {
  return 1e-9 * v.dim();
}

template <ScalarType T>
DenseMatrix<T> alternate_dual_operator(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  require_pair_compatible(v, w);
  HermitianOperator<T> s = frame_operator(v);
  if (!s.invertible()) throw NotAFrame("alternate_dual_operator: V is not a frame");
  // pair_operator(w, v) = sum mu nu omega P^G Gamma^H Lambda P^F
  return pair_operator(w, v) * s.power(-1.0).matrix();
}

template <ScalarType T>
AlternateDualResult is_alternate_dual(const GFusionFrame<T>& v, const GFusionFrame<T>& w,
                                      double tol = -1.0) {
  if (tol < 0.0) tol = alternate_dual_default_tol(v);
  DenseMatrix<T> d = alternate_dual_operator(v, w);
  DenseMatrix<T> eye = DenseMatrix<T>::Identity(v.dim(), v.dim());
  const double residual = operator_norm<T>(DenseMatrix<T>(d - eye));
  return {residual <= tol, residual};
}

// Exact alternate dual of `frame` by per-atom rescaling: Gamma_i = c_i
// Lambda_i with nu_i = omega_i / c_i, same subspaces.  The scalars cancel in
// the mixed sum, which therefore telescopes to S_V S_V^-1 = I for any frame
// with A > 0.  c_i must be positive.
template <ScalarType T>
GFusionFrame<T> scaled_dual_witness(const GFusionFrame<T>& frame, const std::vector<double>& c) {
  if (c.size() != static_cast<std::size_t>(frame.n_atoms()))
    throw ShapeMismatch("scaled_dual_witness: need one scale per atom");
  std::vector<MeasureAtom> atoms;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    if (!(ci > 0.0)) throw std::invalid_argument("scaled_dual_witness: scales must be > 0");
    MeasureAtom a = frame.atom(i);
    a.omega /= ci;
    atoms.push_back(std::move(a));
    subspaces.push_back(frame.subspace(i));
    locals.push_back(LocalOperator<T>::adopt_canonical(
        DenseMatrix<T>(T(ci) * frame.local(i).matrix()), frame.subspace(i)));
  }
  return GFusionFrame<T>(frame.dim(), MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

// Certified lower frame bound for W given that (V, W) passes the duality
// test: A_W >= 1 / (||S_V^-1||^2 B_V).  The certificate is verified against
// lambda_min(S_W) before being returned.
template <ScalarType T>
double alternate_dual_lower_bound(const GFusionFrame<T>& v, const GFusionFrame<T>& w,
                                  double tol = -1.0) {
  AlternateDualResult r = is_alternate_dual(v, w, tol);
  if (!r.ok)
    throw NotAlternateDual("alternate_dual_lower_bound: duality residual " +
                           std::to_string(r.residual));
  HermitianOperator<T> sv = frame_operator(v);
  const double a = sv.lambda_min();  // ||S_V^-1|| = 1/a
  const double b = sv.lambda_max();
  const double cert = (a * a) / b;
  const double actual = frame_operator(w).lambda_min();
  if (actual < cert - 1e-9 * std::max(1.0, cert))
    throw Error("alternate_dual_lower_bound: certificate contradicted by spectrum");
  return cert;
}

}  // namespace gfusion
