#pragma once

// Dense kernel shared by every module: scalar abstraction, SVD-based
// orthonormalization, a single Hermitian eigendecomposition engine and the
// functional calculus built on it.  Eigen supplies the factorizations.
//
// Scalar field is a construction-time mode: the whole stack is instantiated
// for double and std::complex<double> and the choice travels with each object
// (frame files carry a "scalar" tag); nothing commits the system globally.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <type_traits>

#include "gfusion/errors.hpp"

namespace gfusion {

template <class T>
concept ScalarType = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

template <ScalarType T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <ScalarType T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using RealVector = Eigen::VectorXd;

template <ScalarType T>
inline constexpr bool is_complex_v = std::same_as<T, std::complex<double>>;

// Relative rank cutoff for orthonormalization.
inline constexpr double kRankTol = 1e-10;
// Construction tolerance for "numerically Hermitian".
inline constexpr double kHermitianTol = 1e-12;

// One invertibility rule everywhere: smallest eigenvalue must clear this.
inline double invertibility_floor(double lambda_max) {
  return 1e-12 * std::max(1.0, lambda_max);
}

// <x, y> = y^H x: sesquilinear, linear in the first argument.
template <ScalarType T>
T inner(const DenseVector<T>& x, const DenseVector<T>& y) {
  return (y.adjoint() * x)(0, 0);
}

template <ScalarType T>
double max_abs(const DenseMatrix<T>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Largest singular value.
template <ScalarType T>
double operator_norm(const DenseMatrix<T>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix<T>> svd(m);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

struct OrthonormalBasis {
  int rank = 0;
  // columns are the basis vectors; cols() == rank
};

// Orthonormal basis of the numerical column span of `vectors`.
// Singular directions below rank_tol * max(sigma_max, 1) are dropped.
// Already-orthonormal input (Gram within 1e-12 of the identity) is returned
// unchanged, which keeps canonical data bit-stable across save/load cycles.
template <ScalarType T>
DenseMatrix<T> orthonormalize(const DenseMatrix<T>& vectors, double rank_tol = kRankTol) {
  if (vectors.cols() == 0) throw AllVectorsNumericallyZero("orthonormalize: no vectors given");
  if (vectors.cols() <= vectors.rows()) {
    DenseMatrix<T> gram = vectors.adjoint() * vectors;
    DenseMatrix<T> eye = DenseMatrix<T>::Identity(gram.rows(), gram.cols());
    if (max_abs<T>(gram - eye) <= 1e-12) return vectors;
  }
  Eigen::JacobiSVD<DenseMatrix<T>> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank == 0) throw AllVectorsNumericallyZero("orthonormalize: all vectors below rank tolerance");
  return svd.matrixU().leftCols(rank);
}

// Hermitian operator with an eagerly computed spectrum.  The matrix is
// symmetrized once at construction ((M + M^H)/2 is exactly Hermitian in
// floating point) and the object is immutable afterwards, so instances can be
// shared across threads freely; the spectrum is never observed stale.
template <ScalarType T>
class HermitianOperator {
 public:
  explicit HermitianOperator(const DenseMatrix<T>& m, double hermitian_tol = kHermitianTol) {
    if (m.rows() != m.cols()) throw ShapeMismatch("HermitianOperator: matrix not square");
    const double scale = std::max(1.0, max_abs<T>(m));
    if (max_abs<T>(DenseMatrix<T>(m - m.adjoint())) > hermitian_tol * scale)
      throw ShapeMismatch("HermitianOperator: matrix not numerically Hermitian");
    mat_ = ((m + m.adjoint()) / T(2)).eval();
    Eigen::SelfAdjointEigenSolver<DenseMatrix<T>> es(mat_);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailure("HermitianOperator: eigendecomposition failed");
    evals_ = es.eigenvalues();  // ascending
    evecs_ = es.eigenvectors();
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const DenseMatrix<T>& matrix() const { return mat_; }
  const RealVector& eigenvalues() const { return evals_; }
  const DenseMatrix<T>& eigenvectors() const { return evecs_; }
  double lambda_min() const { return evals_.size() ? evals_(0) : 0.0; }
  double lambda_max() const { return evals_.size() ? evals_(evals_.size() - 1) : 0.0; }

  bool invertible() const { return lambda_min() > invertibility_floor(lambda_max()); }

  DenseVector<T> apply(const DenseVector<T>& x) const { return mat_ * x; }

  double quadratic_form(const DenseVector<T>& x) const {
    // real for Hermitian mat_
    return std::real((x.adjoint() * (mat_ * x))(0, 0));
  }

  // Functional calculus for exponent in {-1, -1/2, +1/2}.  Negative powers
  // require the spectrum to clear the invertibility floor; +1/2 clamps
  // round-off negatives in [-eig_tol, 0) to zero.
  HermitianOperator power(double exponent) const {
    const bool neg = exponent == -1.0 || exponent == -0.5;
    if (!neg && exponent != 0.5)
      throw std::invalid_argument("power: exponent must be -1, -0.5 or 0.5");
    if (neg && !invertible())
      throw SingularOperator("power: spectrum below invertibility floor");
    const double eig_tol = 1e-10 * std::max(1.0, lambda_max());
    RealVector mapped(evals_.size());
    for (Eigen::Index i = 0; i < evals_.size(); ++i) {
      double ev = evals_(i);
      if (!neg) {
        if (ev < -eig_tol)
          throw std::invalid_argument("power: operator is not positive semidefinite");
        ev = std::max(ev, 0.0);
      }
      mapped(i) = std::pow(ev, exponent);
    }
    DenseVector<T> d = mapped.cast<T>();
    DenseMatrix<T> r = evecs_ * d.asDiagonal() * evecs_.adjoint();
    return HermitianOperator(r);
  }

 private:
  DenseMatrix<T> mat_;
  RealVector evals_;
  DenseMatrix<T> evecs_;
};

template <ScalarType T>
struct EigenSystem {
  RealVector eigenvalues;    // ascending
  DenseMatrix<T> eigenvectors;  // unitary, column i pairs with eigenvalues(i)
};

template <ScalarType T>
EigenSystem<T> hermitian_eig(const HermitianOperator<T>& op) {
  return {op.eigenvalues(), op.eigenvectors()};
}

template <ScalarType T>
HermitianOperator<T> psd_power(const HermitianOperator<T>& op, double exponent) {
  return op.power(exponent);
}

}  // namespace gfusion
