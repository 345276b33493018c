#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "jetlab/rational.hpp"

namespace jetlab {

struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};

namespace detail {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LongComplexMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

inline LongMatrix omega_f(int n) {
  LongMatrix w = LongMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w(i, n + i) = 1;
    w(n + i, i) = -1;
  }
  return w;
}

struct WilliamsonCore {
  LongVector lambda;  // descending
  LongMatrix s;
};

/// Symplectic diagonalization S^T M S = diag(Λ, Λ). The antisymmetric
/// kernel K = M^{-1/2} Ω M^{-1/2} is diagonalized as the Hermitian matrix
/// iK; each unit eigenvector u + iw for eigenvalue μ > 0 yields the real
/// invariant plane, and S = M^{-1/2} O D^{1/2} with λ = 1/μ. Everything is
/// evaluated in extended precision; the eigenvalues of Ω M are ±iλ.
inline WilliamsonCore williamson_core(const LongMatrix& m) {
  const int dim = static_cast<int>(m.rows());
  const int n = dim / 2;
  Eigen::SelfAdjointEigenSolver<LongMatrix> es(m);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed on input matrix");
  const LongVector ev = es.eigenvalues();
  for (int i = 0; i < dim; ++i)
    if (!(ev(i) > 0)) throw NotPositiveDefinite("matrix is not positive definite");
  const LongMatrix v = es.eigenvectors();
  const LongMatrix m_inv_sqrt =
      v * ev.array().rsqrt().matrix().asDiagonal() * v.transpose();

  const LongMatrix k = m_inv_sqrt * omega_f(n) * m_inv_sqrt;
  LongComplexMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) h(i, j) = std::complex<long double>(0, k(i, j));
  Eigen::SelfAdjointEigenSolver<LongComplexMatrix> hes(h);
  if (hes.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed on iK");

  // positive eigenvalues mu ascending => lambda = 1/mu descending
  LongMatrix o(dim, dim);
  LongVector lambda(n);
  int found = 0;
  for (int idx = 0; idx < dim && found < n; ++idx) {
    const long double mu = hes.eigenvalues()(idx);
    if (mu <= 0) continue;
    const auto z = hes.eigenvectors().col(idx);
    LongVector u(dim), w(dim);
    for (int r = 0; r < dim; ++r) {
      u(r) = z(r).real();
      w(r) = z(r).imag();
    }
    // |u| = |w| = 1/sqrt(2) for a unit complex eigenvector of iK
    u.normalize();
    w.normalize();
    o.col(found) = u;
    o.col(n + found) = -w;  // v = -K u / mu
    lambda(found) = 1.0L / mu;
    ++found;
  }
  if (found != n) throw ConvergenceFailure("could not extract a full symplectic eigenbasis");

  LongVector d(dim);
  for (int i = 0; i < n; ++i) d(i) = d(n + i) = lambda(i);
  const LongMatrix s = m_inv_sqrt * o * d.array().sqrt().matrix().asDiagonal();
  return {lambda, s};
}

inline void require_spd_input(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DimensionMismatch("matrix must be square of even dimension");
  if (m != m.transpose()) throw DimensionMismatch("matrix must be exactly symmetric");
}

}  // namespace detail

/// Symplectic spectrum λ_1 ≥ ... ≥ λ_n > 0 of an SPD 2n x 2n matrix.
inline Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& m) {
  detail::require_spd_input(m);
  const auto core = detail::williamson_core(m.cast<long double>());
  return core.lambda.cast<double>();
}

/// Symplectic diagonalization with residual report.
struct SymplecticDecomposition {
  int n = 0;
  Eigen::MatrixXd S;
  Eigen::VectorXd lambda;  // descending
  double residualSymplectic = 0;
  double residualDiagonal = 0;
};

inline SymplecticDecomposition williamson(const Eigen::MatrixXd& m) {
  detail::require_spd_input(m);
  const int n = static_cast<int>(m.rows()) / 2;
  const auto core = detail::williamson_core(m.cast<long double>());

  SymplecticDecomposition out;
  out.n = n;
  out.S = core.s.cast<double>();
  out.lambda = core.lambda.cast<double>();

  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    omega(i, n + i) = 1;
    omega(n + i, i) = -1;
  }
  Eigen::VectorXd d(2 * n);
  for (int i = 0; i < n; ++i) d(i) = d(n + i) = out.lambda(i);
  out.residualSymplectic = (out.S.transpose() * omega * out.S - omega).cwiseAbs().maxCoeff();
  out.residualDiagonal =
      (out.S.transpose() * m * out.S - Eigen::MatrixXd(d.asDiagonal())).cwiseAbs().maxCoeff();
  if (out.residualSymplectic > 1e-9 || out.residualDiagonal > 1e-9)
    throw ConvergenceFailure("residuals too large: symplectic " +
                             std::to_string(out.residualSymplectic) + ", diagonal " +
                             std::to_string(out.residualDiagonal));
  return out;
}

/// Classification invariant of a 4x4 SPD matrix: c = λ2/λ1 in (0, 1].
inline double classify(const Eigen::MatrixXd& m) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionMismatch("classify expects a 4x4 matrix");
  const Eigen::VectorXd lambda = symplectic_spectrum(m);
  return lambda(1) / lambda(0);
}

/// |classify(S^T M S) - classify(M)| <= 1e-7 for symplectic S.
inline bool congruence_invariance(const Eigen::MatrixXd& m, const Eigen::MatrixXd& s) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    omega(i, 2 + i) = 1;
    omega(2 + i, i) = -1;
  }
  if ((s.transpose() * omega * s - omega).cwiseAbs().maxCoeff() > 1e-9) return false;
  const Eigen::MatrixXd conj = s.transpose() * m * s;
  const Eigen::MatrixXd sym = 0.5 * (conj + conj.transpose());  // symmetrize away roundoff
  return std::abs(classify(sym) - classify(m)) <= 1e-7;
}

}  // namespace jetlab
