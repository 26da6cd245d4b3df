#pragma once

// Operator layer.  Everything is a weighted sum of per-atom terms
//
//   T_i = mu_i omega_i^2 P_i Lambda_i^H Lambda_i P_i = mu_i omega_i^2 L_i^H L_i
//
// with L_i the stored canonical local matrix.  Partial sums reuse the same
// per-atom terms in atom order, so set partitions add up to the full operator
// to within a few ulps regardless of the mask.

#include <cmath>
#include <string>
#include <vector>

#include "gfusion/model.hpp"

namespace gfusion {

struct FrameBounds {
  double lower = 0.0;  // largest valid A
  double upper = 0.0;  // smallest valid B
};

// Per-atom multipliers a_i for the weighted partial operator.  Complex values
// are allowed in complex mode; checks that need real weights reject others.
template <ScalarType T>
struct AWeights {
  std::vector<T> values;

  double sup_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

template <ScalarType T>
DenseMatrix<T> atom_term(const GFusionFrame<T>& frame, int i) {
  const auto& a = frame.atom(i);
  const auto& l = frame.local(i).matrix();
  return (a.mu * a.omega * a.omega) * (l.adjoint() * l);
}

// Analysis: block i is omega_i * Lambda_i P_i f.  The quadrature weight mu
// enters through the coefficient inner product, not the blocks.
template <ScalarType T>
CoefficientVector<T> analysis_apply(const GFusionFrame<T>& frame, const DenseVector<T>& f) {
  if (f.size() != frame.dim()) throw ShapeMismatch("analysis_apply: vector dim mismatch");
  CoefficientVector<T> c;
  c.blocks.reserve(static_cast<std::size_t>(frame.n_atoms()));
  for (int i = 0; i < frame.n_atoms(); ++i)
    c.blocks.push_back(T(frame.atom(i).omega) * (frame.local(i).matrix() * f));
  return c;
}

// Synthesis: sum_i mu_i omega_i P_i Lambda_i^H c_i.  Adjoint of analysis with
// respect to the mu-weighted coefficient inner product.
template <ScalarType T>
DenseVector<T> synthesis_apply(const GFusionFrame<T>& frame, const CoefficientVector<T>& c) {
  if (c.blocks.size() != static_cast<std::size_t>(frame.n_atoms()))
    throw ShapeMismatch("synthesis_apply: block count mismatch");
  DenseVector<T> out = DenseVector<T>::Zero(frame.dim());
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const auto& block = c.blocks[static_cast<std::size_t>(i)];
    if (block.size() != frame.local(i).out_dim())
      throw ShapeMismatch("synthesis_apply: block size mismatch");
    out += T(frame.atom(i).mu * frame.atom(i).omega) * (frame.local(i).matrix().adjoint() * block);
  }
  return out;
}

template <ScalarType T>
HermitianOperator<T> frame_operator(const GFusionFrame<T>& frame) {
  DenseMatrix<T> s = DenseMatrix<T>::Zero(frame.dim(), frame.dim());
  for (int i = 0; i < frame.n_atoms(); ++i) s += atom_term(frame, i);
  return HermitianOperator<T>(s);
}

// Optimal bounds A = lambda_min(S), B = lambda_max(S).  Throws NotAFrame when
// A sits below the invertibility floor.
template <ScalarType T>
FrameBounds frame_bounds(const GFusionFrame<T>& frame) {
  HermitianOperator<T> s = frame_operator(frame);
  if (!s.invertible())
    throw NotAFrame("frame_bounds: lower bound below invertibility floor");
  return {s.lambda_min(), s.lambda_max()};
}

template <ScalarType T>
ValidationReport validate_frame(const GFusionFrame<T>& frame, double tol = 1e-10) {
  ValidationReport rep;
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const auto& id = frame.atom(i).id;
    const auto& u = frame.subspace(i).basis();
    DenseMatrix<T> gram = u.adjoint() * u;
    DenseMatrix<T> eye = DenseMatrix<T>::Identity(gram.rows(), gram.cols());
    if (max_abs<T>(DenseMatrix<T>(gram - eye)) > tol)
      rep.issues.push_back({id, "basis not orthonormal"});
    const auto& l = frame.local(i).matrix();
    DenseMatrix<T> leak = l - (l * u) * u.adjoint();
    if (max_abs<T>(leak) > 1e-12 * std::max(1.0, max_abs<T>(l)))
      rep.issues.push_back({id, "local operator leaks outside its subspace"});
  }
  HermitianOperator<T> s = frame_operator(frame);
  rep.bounds = {std::max(s.lambda_min(), 0.0), s.lambda_max()};
  if (!s.invertible())
    rep.issues.push_back({"", "frame operator lower bound is numerically zero"});
  rep.ok = rep.issues.empty();
  return rep;
}

// M^{X1} = sum over masked atoms of T_i, in atom order.
template <ScalarType T>
HermitianOperator<T> partial_frame_operator(const GFusionFrame<T>& frame, const SubsetMask& mask) {
  DenseMatrix<T> m = DenseMatrix<T>::Zero(frame.dim(), frame.dim());
  for (int i : mask_indices(frame, mask)) m += atom_term(frame, i);
  return HermitianOperator<T>(m);
}

// S^{X1} = M^{X1} S^{-1}.  Positive but non-Hermitian in general, hence a
// plain matrix; S^{-1/2} M^{X1} S^{-1/2} is the PSD conjugate the range checks
// use.  Partition property: S^{X1} + S^{X1 complement} = I.
template <ScalarType T>
DenseMatrix<T> mixed_partial_operator(const GFusionFrame<T>& frame, const SubsetMask& mask) {
  HermitianOperator<T> s = frame_operator(frame);
  if (!s.invertible())
    throw NotAFrame("mixed_partial_operator: frame operator not invertible");
  HermitianOperator<T> sinv = s.power(-1.0);
  return partial_frame_operator(frame, mask).matrix() * sinv.matrix();
}

// S^1(a) = sum_i a_i T_i.  adjoint(S^1(a)) == S^1(conj a); S^2 = S - S^1.
template <ScalarType T>
DenseMatrix<T> a_weighted_operator(const GFusionFrame<T>& frame, const AWeights<T>& a) {
  if (a.values.size() != static_cast<std::size_t>(frame.n_atoms()))
    throw ShapeMismatch("a_weighted_operator: weight count mismatch");
  DenseMatrix<T> m = DenseMatrix<T>::Zero(frame.dim(), frame.dim());
  for (int i = 0; i < frame.n_atoms(); ++i)
    m += a.values[static_cast<std::size_t>(i)] * atom_term(frame, i);
  return m;
}

template <ScalarType T>
void require_pair_compatible(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  if (v.dim() != w.dim()) throw ShapeMismatch("pair: ambient dimensions differ");
  if (!(v.space() == w.space()))
    throw MeasureSpaceMismatch("pair: atom ids or mu weights differ");
  for (int i = 0; i < v.n_atoms(); ++i)
    if (v.local(i).out_dim() != w.local(i).out_dim())
      throw ShapeMismatch("pair: local output dims differ at atom '" + v.atom(i).id + "'");
}

// S_{FG} = sum_i mu_i omega_i nu_i P_i^F Lambda_i^H Gamma_i P_i^G.
// v supplies (omega, F, Lambda), w supplies (nu, G, Gamma).
template <ScalarType T>
DenseMatrix<T> pair_operator(const GFusionFrame<T>& v, const GFusionFrame<T>& w) {
  require_pair_compatible(v, w);
  DenseMatrix<T> m = DenseMatrix<T>::Zero(v.dim(), v.dim());
  for (int i = 0; i < v.n_atoms(); ++i) {
    const double c = v.atom(i).mu * v.atom(i).omega * w.atom(i).omega;
    m += T(c) * (v.local(i).matrix().adjoint() * w.local(i).matrix());
  }
  return m;
}

// Masked pair sum, same convention (used by the alternate-dual checks).
template <ScalarType T>
DenseMatrix<T> partial_pair_operator(const GFusionFrame<T>& v, const GFusionFrame<T>& w,
                                     const SubsetMask& mask) {
  require_pair_compatible(v, w);
  DenseMatrix<T> m = DenseMatrix<T>::Zero(v.dim(), v.dim());
  for (int i : mask_indices(v, mask)) {
    const double c = v.atom(i).mu * v.atom(i).omega * w.atom(i).omega;
    m += T(c) * (v.local(i).matrix().adjoint() * w.local(i).matrix());
  }
  return m;
}

// sum over masked atoms of mu_i omega_i^2 ||Lambda_i P_i f||^2: the scalar
// route the identity checks compare against the operator route.
template <ScalarType T>
double masked_energy(const GFusionFrame<T>& frame, const SubsetMask& mask,
                     const DenseVector<T>& f) {
  double e = 0.0;
  for (int i : mask_indices(frame, mask)) {
    const auto& a = frame.atom(i);
    e += a.mu * a.omega * a.omega * (frame.local(i).matrix() * f).squaredNorm();
  }
  return e;
}

template <ScalarType T>
double total_energy(const GFusionFrame<T>& frame, const DenseVector<T>& f) {
  double e = 0.0;
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const auto& a = frame.atom(i);
    e += a.mu * a.omega * a.omega * (frame.local(i).matrix() * f).squaredNorm();
  }
  return e;
}

}  // namespace gfusion
