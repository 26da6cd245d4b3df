#pragma once

// Shared fixtures: closed-form witness frames and the seeded desk-scale
// corpus used across the test binaries.

#include <cstdint>
#include <vector>

#include "gfusion/gfusion.hpp"

namespace testsupport {

using namespace gfusion;

// dim 2, two atoms: span{e0} with projector local, full plane with identity
// local; frame operator exactly diag(2, 1).
template <ScalarType T>
GFusionFrame<T> diag21_frame() {
  std::vector<MeasureAtom> atoms(2);
  atoms[0].id = "a0";
  atoms[1].id = "a1";
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  Subspace<T> s0(2, DenseMatrix<T>(DenseVector<T>::Unit(2, 0)));
  locals.push_back(LocalOperator<T>::canonicalize(DenseMatrix<T>::Identity(2, 2), s0));
  subspaces.push_back(std::move(s0));
  Subspace<T> s1(2, DenseMatrix<T>(DenseMatrix<T>::Identity(2, 2)));
  locals.push_back(LocalOperator<T>::canonicalize(DenseMatrix<T>::Identity(2, 2), s1));
  subspaces.push_back(std::move(s1));
  return GFusionFrame<T>(2, MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

// Same frame with every omega multiplied by `factor`.
template <ScalarType T>
GFusionFrame<T> scaled_omega_frame(const GFusionFrame<T>& frame, double factor) {
  std::vector<MeasureAtom> atoms = frame.space().atoms();
  for (auto& a : atoms) a.omega *= factor;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (int i = 0; i < frame.n_atoms(); ++i) {
    subspaces.push_back(frame.subspace(i));
    locals.push_back(frame.local(i));
  }
  return GFusionFrame<T>(frame.dim(), MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

// Orthonormal-basis frame whose k-th weight is nudged: spectral deviation
// from the identity lands in the near-miss band of the suite gate.
template <ScalarType T>
GFusionFrame<T> near_parseval_frame(int dim, double omega0 = 1.00025) {
  GFusionFrame<T> base = orthonormal_basis_frame<T>(dim);
  std::vector<MeasureAtom> atoms = base.space().atoms();
  atoms[0].omega = omega0;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (int i = 0; i < base.n_atoms(); ++i) {
    subspaces.push_back(base.subspace(i));
    locals.push_back(base.local(i));
  }
  return GFusionFrame<T>(dim, MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

template <ScalarType T>
T gen_scalar(Rng& rng) {
  if constexpr (is_complex_v<T>)
    return T(rng.normal(), rng.normal());
  else
    return rng.normal();
}

template <ScalarType T>
DenseVector<T> unit_vector(Rng& rng, int dim) {
  DenseVector<T> f(dim);
  for (int i = 0; i < dim; ++i) f(i) = gen_scalar<T>(rng);
  const double n = f.norm();
  return n > 0 ? DenseVector<T>(f / T(n)) : DenseVector<T>(DenseVector<T>::Unit(dim, 0));
}

// Desk-scale corpus draw: dim in [1,8], atoms in [1,16], shapes derived from
// the seed so the whole corpus is reproducible.
inline GenConfig corpus_cfg(std::uint64_t seed, FrameKind kind = FrameKind::random) {
  Rng r(derive_stream(seed, fnv1a64("corpus_shape")));
  GenConfig c;
  c.dim = static_cast<int>(r.uniform_int(1, 8));
  c.atoms = static_cast<int>(r.uniform_int(1, 16));
  c.kind = kind;
  c.seed = seed;
  c.ensure_frame = true;
  return c;
}

template <ScalarType T>
GFusionFrame<T> corpus_frame(std::uint64_t seed, FrameKind kind = FrameKind::random) {
  return random_frame<T>(corpus_cfg(seed, kind));
}

// Independent second system over v's measure space: same atom ids and mu,
// fresh weights, subspaces and locals; local output dims match v's so the
// pair operator is defined.
template <ScalarType T>
GFusionFrame<T> random_companion(const GFusionFrame<T>& v, std::uint64_t seed) {
  std::vector<MeasureAtom> atoms = v.space().atoms();
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  const int n = v.dim();
  for (int i = 0; i < v.n_atoms(); ++i) {
    const std::uint64_t base = derive_stream(derive_stream(seed, fnv1a64("companion")),
                                             static_cast<std::uint64_t>(i));
    Rng r_omega(derive_stream(base, fnv1a64("omega")));
    Rng r_basis(derive_stream(base, fnv1a64("basis")));
    Rng r_lambda(derive_stream(base, fnv1a64("lambda")));
    atoms[static_cast<std::size_t>(i)].omega = r_omega.log_uniform(0.25, 4.0);
    const int d = 1 + static_cast<int>(r_basis.next() % static_cast<std::uint64_t>(n));
    DenseMatrix<T> span(n, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < n; ++r) span(r, c) = gen_scalar<T>(r_basis);
    Subspace<T> s = Subspace<T>::from_spanning(n, span);
    const int m = v.local(i).out_dim();
    DenseMatrix<T> raw(m, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) raw(r, c) = gen_scalar<T>(r_lambda);
    locals.push_back(LocalOperator<T>::canonicalize(raw, s));
    subspaces.push_back(std::move(s));
  }
  return GFusionFrame<T>(n, MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

}  // namespace testsupport
