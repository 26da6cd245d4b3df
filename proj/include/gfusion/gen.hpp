#pragma once

// Deterministic frame generators.  All randomness flows through Rng streams
// derived from (seed, attempt, atom index, field tag), so a given config
// reproduces the same frame on any platform.

#include <string>
#include <vector>

#include "gfusion/duality.hpp"
#include "gfusion/model.hpp"
#include "gfusion/operators.hpp"
#include "gfusion/rng.hpp"

namespace gfusion {

enum class FrameKind { random, parseval, tight, bessel_only };

inline constexpr int kMaxGenDim = 64;
inline constexpr int kMaxGenAtoms = 4096;
// Conditioning floor for redraws: accept once lambda_min > 1e-8 lambda_max.
inline constexpr double kGenConditionFloor = 1e-8;
inline constexpr int kMaxGenAttempts = 64;

struct GenConfig {
  int dim = 4;
  int atoms = 6;
  FrameKind kind = FrameKind::random;
  double tight_constant = 1.0;  // only FrameKind::tight
  std::uint64_t seed = 0;
  // Redraw until the frame operator is comfortably invertible; implied for
  // parseval and tight kinds, meaningless for bessel_only.
  bool ensure_frame = false;
};

namespace detail {

template <ScalarType T>
T draw_scalar(Rng& rng) {
  if constexpr (is_complex_v<T>)
    return T(rng.normal(), rng.normal());
  else
    return rng.normal();
}

// One raw draw: mu = 1, omega log-uniform in [1/4, 4], subspace dims in
// [1, cap], local output dims in [1, 2n].  With restrict_hyperplane the
// spanning vectors live in the first n-1 coordinates, so e_n is in the
// kernel of every local and of the frame operator.
template <ScalarType T>
GFusionFrame<T> draw_raw_frame(const GenConfig& cfg, std::uint64_t attempt,
                               bool restrict_hyperplane) {
  const int n = cfg.dim;
  const int rows = restrict_hyperplane ? n - 1 : n;
  std::vector<MeasureAtom> atoms;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (int i = 0; i < cfg.atoms; ++i) {
    const std::uint64_t base =
        derive_stream(derive_stream(cfg.seed, attempt), static_cast<std::uint64_t>(i));
    Rng r_shape(derive_stream(base, fnv1a64("shape")));
    Rng r_omega(derive_stream(base, fnv1a64("omega")));
    Rng r_basis(derive_stream(base, fnv1a64("basis")));
    Rng r_lambda(derive_stream(base, fnv1a64("lambda")));

    MeasureAtom a;
    a.id = "a" + std::to_string(i);
    a.mu = 1.0;
    a.omega = r_omega.log_uniform(0.25, 4.0);
    atoms.push_back(a);

    const int d = static_cast<int>(r_shape.uniform_int(1, rows));
    const int m = static_cast<int>(r_shape.uniform_int(1, 2 * n));
    DenseMatrix<T> span = DenseMatrix<T>::Zero(n, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < rows; ++r) span(r, c) = draw_scalar<T>(r_basis);
    Subspace<T> s = Subspace<T>::from_spanning(n, span);

    DenseMatrix<T> raw(m, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) raw(r, c) = draw_scalar<T>(r_lambda);
    locals.push_back(LocalOperator<T>::canonicalize(raw, s));
    subspaces.push_back(std::move(s));
  }
  return GFusionFrame<T>(n, MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

}  // namespace detail

template <ScalarType T>
GFusionFrame<T> random_frame(const GenConfig& cfg) {
  if (cfg.dim < 1 || cfg.dim > kMaxGenDim)
    throw InvalidConfig("random_frame: dim must be in [1, 64]");
  if (cfg.atoms < 1 || cfg.atoms > kMaxGenAtoms)
    throw InvalidConfig("random_frame: atoms must be in [1, 4096]");
  if (cfg.kind == FrameKind::tight && !(cfg.tight_constant > 0.0))
    throw InvalidConfig("random_frame: tight constant must be positive");

  if (cfg.kind == FrameKind::bessel_only) {
    if (cfg.dim < 2)
      throw GenerationFailed("random_frame: bessel_only needs dim >= 2 for a proper kernel");
    return detail::draw_raw_frame<T>(cfg, 0, true);
  }

  const bool need_frame = cfg.ensure_frame || cfg.kind != FrameKind::random;
  for (std::uint64_t attempt = 0; attempt < kMaxGenAttempts; ++attempt) {
    GFusionFrame<T> f = detail::draw_raw_frame<T>(cfg, attempt, false);
    if (!need_frame) return f;
    HermitianOperator<T> s = frame_operator(f);
    if (!s.invertible() || s.lambda_min() <= kGenConditionFloor * s.lambda_max()) continue;
    switch (cfg.kind) {
      case FrameKind::random:
        return f;
      case FrameKind::parseval:
        return parsevalize(f);
      case FrameKind::tight: {
        GFusionFrame<T> p = parsevalize(f);
        std::vector<MeasureAtom> atoms = p.space().atoms();
        const double root = std::sqrt(cfg.tight_constant);
        for (auto& a : atoms) a.omega *= root;
        std::vector<Subspace<T>> subspaces;
        std::vector<LocalOperator<T>> locals;
        for (int i = 0; i < p.n_atoms(); ++i) {
          subspaces.push_back(p.subspace(i));
          locals.push_back(p.local(i));
        }
        return GFusionFrame<T>(p.dim(), MeasureSpace(std::move(atoms)), std::move(subspaces),
                               std::move(locals));
      }
      default:
        break;
    }
  }
  throw GenerationFailed("random_frame: no well-conditioned draw in 64 attempts");
}

// n one-dimensional coordinate subspaces with projector locals; Parseval.
template <ScalarType T>
GFusionFrame<T> orthonormal_basis_frame(int dim) {
  if (dim < 1) throw InvalidConfig("orthonormal_basis_frame: dim must be >= 1");
  std::vector<MeasureAtom> atoms;
  std::vector<Subspace<T>> subspaces;
  std::vector<LocalOperator<T>> locals;
  for (int i = 0; i < dim; ++i) {
    MeasureAtom a;
    a.id = "e" + std::to_string(i);
    atoms.push_back(a);
    Subspace<T> s(dim, DenseMatrix<T>(DenseVector<T>::Unit(dim, i)));
    locals.push_back(
        LocalOperator<T>::canonicalize(DenseMatrix<T>::Identity(dim, dim), s));
    subspaces.push_back(std::move(s));
  }
  return GFusionFrame<T>(dim, MeasureSpace(std::move(atoms)), std::move(subspaces),
                         std::move(locals));
}

// Three unit vectors at 120 degrees in the plane, rank-one locals scaled by
// sqrt(2/3); the frame operator is exactly the identity.
inline GFusionFrame<double> mercedes_frame() {
  const double tau = 2.0 * M_PI / 3.0;
  const double scale = std::sqrt(2.0 / 3.0);
  std::vector<MeasureAtom> atoms;
  std::vector<Subspace<double>> subspaces;
  std::vector<LocalOperator<double>> locals;
  for (int k = 0; k < 3; ++k) {
    MeasureAtom a;
    a.id = "m" + std::to_string(k);
    atoms.push_back(a);
    DenseVector<double> v(2);
    v << std::cos(tau * k), std::sin(tau * k);
    Subspace<double> s(2, DenseMatrix<double>(v / v.norm()));
    DenseMatrix<double> raw = scale * v.transpose();
    locals.push_back(LocalOperator<double>::canonicalize(raw, s));
    subspaces.push_back(std::move(s));
  }
  return GFusionFrame<double>(2, MeasureSpace(std::move(atoms)), std::move(subspaces),
                              std::move(locals));
}

template <ScalarType T>
struct DualPair {
  GFusionFrame<T> v;
  GFusionFrame<T> w;
};

// V drawn per cfg (frame-ness enforced), W the per-atom rescaled witness:
// an exact alternate dual of V by construction.
template <ScalarType T>
DualPair<T> alternate_dual_pair(const GenConfig& cfg) {
  if (cfg.kind == FrameKind::bessel_only)
    throw InvalidConfig("alternate_dual_pair: V must be a frame");
  GenConfig c = cfg;
  c.ensure_frame = true;
  GFusionFrame<T> v = random_frame<T>(c);
  Rng rng(derive_stream(cfg.seed, fnv1a64("dual_scale")));
  std::vector<double> scales;
  for (int i = 0; i < v.n_atoms(); ++i) scales.push_back(rng.log_uniform(0.5, 2.0));
  GFusionFrame<T> w = scaled_dual_witness(v, scales);
  return {std::move(v), std::move(w)};
}

}  // namespace gfusion
