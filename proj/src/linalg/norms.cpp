#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dresplit/linalg.hpp"

namespace dresplit {

CholeskyFactor::CholeskyFactor(const SymmetricKernel& m) : llt_(m.matrix()) {
  if (llt_.info() != Eigen::Success) {
    throw std::domain_error("Cholesky: non-positive pivot, matrix is not SPD");
  }
  if ((llt_.matrixLLT().diagonal().array() <= 0).any()) {
    throw std::domain_error("Cholesky: non-positive pivot, matrix is not SPD");
  }
}

void CholeskyFactor::ApplyL(Vector& y) const {
  y = llt_.matrixL() * y;
}

void CholeskyFactor::ApplyLt(Vector& y) const {
  y = llt_.matrixU() * y;
}

CholeskyFactor Cholesky(const SymmetricKernel& m) {
  if (!m.matrix().allFinite()) throw std::domain_error("Cholesky: non-finite input");
  return CholeskyFactor(m);
}

double DominantEigenMagnitude(const std::function<void(const Vector&, Vector&)>& apply,
                              Index dim, double rel_tol, int max_iter) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
  v.normalize();

  Vector w(dim), z(dim);
  double estimate = 0;
  for (int it = 0; it < max_iter; ++it) {
    apply(v, w);
    const double mu = w.norm();
    if (mu == 0) return 0;
    estimate = mu;
    apply(w, z);
    // v is a unit vector, so ‖Sv‖² is the Rayleigh quotient of S² at v.
    const double mu2 = mu * mu;
    const double residual = (z - mu2 * v).norm();
    if (residual <= rel_tol * mu2) break;
    v = z / z.norm();
  }
  return estimate;
}

double SpectralNorm(const SymmetricKernel& s) {
  if (!s.matrix().allFinite()) throw std::domain_error("SpectralNorm: non-finite entries");
  if (s.dim() <= kDenseEigenLimit) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  const DenseMatrix& m = s.matrix();
  return DominantEigenMagnitude([&m](const Vector& x, Vector& y) { y.noalias() = m * x; },
                                s.dim());
}

double MinEigenvalue(const SymmetricKernel& s) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool PositiveSemidefiniteWithin(const SymmetricKernel& s, double slack) {
  DenseMatrix shifted = s.matrix();
  shifted.diagonal().array() += slack;
  Eigen::LLT<DenseMatrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace dresplit
