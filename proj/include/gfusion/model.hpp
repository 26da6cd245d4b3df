#pragma once

// Data model: a g-fusion frame over a finite weighted atom set.
//
// Atom i carries a quadrature weight mu_i >= 0, a frame weight omega_i >= 0,
// a closed subspace F(i) (orthonormal basis columns) and a local operator
// Lambda_i stored in canonical form Lambda_i = Lambda_i * P_i, where P_i is
// the orthogonal projector onto F(i).  With that normalization every weighted
// sum in the operator layer can use the stored matrix directly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gfusion/linalg.hpp"

namespace gfusion {

struct MeasureAtom {
  std::string id;
  double mu = 1.0;     // quadrature weight of the atom
  double omega = 1.0;  // frame weight
};

// Finite measure space: ordered atom list, unique ids.
class MeasureSpace {
 public:
  explicit MeasureSpace(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("MeasureSpace: needs at least one atom");
    std::set<std::string> seen;
    bool any_mass = false;
    for (const auto& a : atoms_) {
      if (!seen.insert(a.id).second)
        throw std::invalid_argument("MeasureSpace: duplicate atom id '" + a.id + "'");
      if (!std::isfinite(a.mu) || a.mu < 0.0)
        throw std::invalid_argument("MeasureSpace: mu must be finite and >= 0");
      if (!std::isfinite(a.omega) || a.omega < 0.0)
        throw std::invalid_argument("MeasureSpace: omega must be finite and >= 0");
      if (a.mu * a.omega * a.omega > 0.0) any_mass = true;
    }
    if (!any_mass)
      throw std::invalid_argument("MeasureSpace: every atom has mu*omega^2 == 0");
  }

  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const MeasureAtom& atom(int i) const { return atoms_.at(static_cast<std::size_t>(i)); }

  int index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
      if (atoms_[static_cast<std::size_t>(i)].id == id) return i;
    throw UnknownAtomId("MeasureSpace: unknown atom id '" + id + "'");
  }

  bool operator==(const MeasureSpace& o) const {
    if (atoms_.size() != o.atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].id != o.atoms_[i].id || atoms_[i].mu != o.atoms_[i].mu) return false;
    return true;
  }

 private:
  std::vector<MeasureAtom> atoms_;
};

// Subspace of the ambient space, held as an orthonormal basis (columns).
template <ScalarType T>
class Subspace {
 public:
  Subspace(int ambient_dim, DenseMatrix<T> basis)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (ambient_dim_ < 1) throw std::invalid_argument("Subspace: ambient dim must be >= 1");
    if (basis_.rows() != ambient_dim_ || basis_.cols() < 1 || basis_.cols() > ambient_dim_)
      throw std::invalid_argument("Subspace: basis shape invalid");
    DenseMatrix<T> gram = basis_.adjoint() * basis_;
    DenseMatrix<T> eye = DenseMatrix<T>::Identity(gram.rows(), gram.cols());
    if (max_abs<T>(DenseMatrix<T>(gram - eye)) > 1e-10)
      throw std::invalid_argument("Subspace: basis not orthonormal");
  }

  static Subspace from_spanning(int ambient_dim, const DenseMatrix<T>& spanning,
                                double rank_tol = kRankTol) {
    if (spanning.rows() != ambient_dim)
      throw std::invalid_argument("Subspace: spanning vectors have wrong length");
    return Subspace(ambient_dim, orthonormalize<T>(spanning, rank_tol));
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const DenseMatrix<T>& basis() const { return basis_; }

 private:
  int ambient_dim_;
  DenseMatrix<T> basis_;
};

// Orthogonal projector onto the subspace.  Independent of which orthonormal
// basis represents the span (up to round-off), which the tests rely on.
template <ScalarType T>
HermitianOperator<T> projector(const Subspace<T>& s) {
  return HermitianOperator<T>(DenseMatrix<T>(s.basis() * s.basis().adjoint()));
}

// Local operator in canonical form: matrix() == matrix() * P exactly as stored.
// Canonicalization happens once, at construction; constructed instances are
// closed under it.
template <ScalarType T>
class LocalOperator {
 public:
  static LocalOperator canonicalize(const DenseMatrix<T>& raw, const Subspace<T>& s) {
    if (raw.cols() != s.ambient_dim())
      throw ShapeMismatch("LocalOperator: column count must equal ambient dim");
    if (raw.rows() < 1) throw ShapeMismatch("LocalOperator: needs at least one row");
    DenseMatrix<T> canon = (raw * s.basis()) * s.basis().adjoint();
    return LocalOperator(std::move(canon));
  }

  // `m` must already satisfy ||m (I - P)|| <= 1e-12 max(1, ||m||).
  static LocalOperator adopt_canonical(DenseMatrix<T> m, const Subspace<T>& s) {
    DenseMatrix<T> leak = m - (m * s.basis()) * s.basis().adjoint();
    if (max_abs<T>(leak) > 1e-12 * std::max(1.0, max_abs<T>(m)))
      throw ShapeMismatch("LocalOperator: matrix not canonical for the subspace");
    return LocalOperator(std::move(m));
  }

  int out_dim() const { return static_cast<int>(mat_.rows()); }
  int ambient_dim() const { return static_cast<int>(mat_.cols()); }
  const DenseMatrix<T>& matrix() const { return mat_; }

 private:
  explicit LocalOperator(DenseMatrix<T> m) : mat_(std::move(m)) {}
  DenseMatrix<T> mat_;
};

template <ScalarType T>
class GFusionFrame {
 public:
  GFusionFrame(int dim, MeasureSpace space, std::vector<Subspace<T>> subspaces,
               std::vector<LocalOperator<T>> locals)
      : dim_(dim),
        space_(std::move(space)),
        subspaces_(std::move(subspaces)),
        locals_(std::move(locals)) {
    if (dim_ < 1) throw std::invalid_argument("GFusionFrame: dim must be >= 1");
    const std::size_t n = static_cast<std::size_t>(space_.size());
    if (subspaces_.size() != n || locals_.size() != n)
      throw std::invalid_argument("GFusionFrame: per-atom lists must match the atom count");
    for (std::size_t i = 0; i < n; ++i) {
      if (subspaces_[i].ambient_dim() != dim_)
        throw std::invalid_argument("GFusionFrame: subspace ambient dim mismatch");
      if (locals_[i].ambient_dim() != dim_)
        throw std::invalid_argument("GFusionFrame: local operator dim mismatch");
    }
  }

  int dim() const { return dim_; }
  int n_atoms() const { return space_.size(); }
  const MeasureSpace& space() const { return space_; }
  const MeasureAtom& atom(int i) const { return space_.atom(i); }
  const Subspace<T>& subspace(int i) const { return subspaces_.at(static_cast<std::size_t>(i)); }
  const LocalOperator<T>& local(int i) const { return locals_.at(static_cast<std::size_t>(i)); }
  int index_of(const std::string& id) const { return space_.index_of(id); }

 private:
  int dim_;
  MeasureSpace space_;
  std::vector<Subspace<T>> subspaces_;
  std::vector<LocalOperator<T>> locals_;
};

// Atom subset, by id.  std::set keeps iteration deterministic.
struct SubsetMask {
  std::set<std::string> members;

  bool contains(const std::string& id) const { return members.count(id) > 0; }
};

template <ScalarType T>
SubsetMask subset_complement(const GFusionFrame<T>& frame, const SubsetMask& mask) {
  for (const auto& id : mask.members) frame.index_of(id);  // validates
  SubsetMask c;
  for (const auto& a : frame.space().atoms())
    if (!mask.contains(a.id)) c.members.insert(a.id);
  return c;
}

// Indices of masked atoms, in atom order (canonical summation order).
template <ScalarType T>
std::vector<int> mask_indices(const GFusionFrame<T>& frame, const SubsetMask& mask) {
  for (const auto& id : mask.members) frame.index_of(id);
  std::vector<int> idx;
  for (int i = 0; i < frame.n_atoms(); ++i)
    if (mask.contains(frame.atom(i).id)) idx.push_back(i);
  return idx;
}

template <ScalarType T>
std::vector<int> all_indices(const GFusionFrame<T>& frame) {
  std::vector<int> idx(static_cast<std::size_t>(frame.n_atoms()));
  for (int i = 0; i < frame.n_atoms(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

// Analysis coefficients: one block per atom, block i lives in the local space
// of atom i.  Inner product weighs blocks by mu_i.
template <ScalarType T>
struct CoefficientVector {
  std::vector<DenseVector<T>> blocks;
};

template <ScalarType T>
T mu_inner(const GFusionFrame<T>& frame, const CoefficientVector<T>& c,
           const CoefficientVector<T>& d) {
  if (c.blocks.size() != d.blocks.size() ||
      c.blocks.size() != static_cast<std::size_t>(frame.n_atoms()))
    throw ShapeMismatch("mu_inner: block count mismatch");
  T acc = T(0);
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const auto& x = c.blocks[static_cast<std::size_t>(i)];
    const auto& y = d.blocks[static_cast<std::size_t>(i)];
    if (x.size() != y.size()) throw ShapeMismatch("mu_inner: block size mismatch");
    acc += T(frame.atom(i).mu) * inner<T>(x, y);
  }
  return acc;
}

struct ValidationIssue {
  std::string atom_id;  // empty for frame-level issues
  std::string message;
};

struct ValidationReport {
  bool ok = false;
  std::vector<ValidationIssue> issues;
  // Extreme eigenvalues of the frame operator; present whenever the frame
  // assembles, even when lower == 0 (Bessel family).
  std::optional<std::pair<double, double>> bounds;
};

}  // namespace gfusion
