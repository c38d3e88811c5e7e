#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dresplit/linalg.hpp"

namespace dresplit {

SymmetricKernel LyapunovApply(const Eigen::Ref<const DenseMatrix>& a, const SymmetricKernel& x) {
  if (a.rows() != a.cols() || a.rows() != x.dim()) {
    throw std::invalid_argument("LyapunovApply: dimension mismatch");
  }
  const DenseMatrix ax = a * x.matrix();
  return SymmetricKernel::FromMatrix(ax + ax.transpose());
}

SymmetricKernel LyapunovSolve(const Eigen::Ref<const DenseMatrix>& a,
                              const SymmetricKernel& rhs) {
  using Complex = std::complex<double>;
  using ComplexMatrix = Eigen::MatrixXcd;

  const Index n = a.rows();
  if (a.cols() != n || rhs.dim() != n) throw std::invalid_argument("LyapunovSolve: dimension mismatch");
  if (!a.allFinite() || !rhs.matrix().allFinite()) {
    throw std::domain_error("LyapunovSolve: non-finite input");
  }

  // A = U·T·Uᴴ; with Y = Uᴴ·X·U the equation becomes T·Y + Y·Tᴴ = Uᴴ·R·U.
  Eigen::ComplexSchur<DenseMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw std::domain_error("LyapunovSolve: Schur form failed");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  ComplexMatrix c = u.adjoint() * rhs.matrix().cast<Complex>() * u;

  const double a_norm = a.cwiseAbs().colwise().sum().maxCoeff();
  const double singular_tol =
      std::max(1e-13 * a_norm, std::numeric_limits<double>::min());

  // Y(i, j) depends on Y(k > i, j) and Y(i, k > j): sweep both indices backwards.
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Index i = n - 1; i >= 0; --i) {
    for (Index j = n - 1; j >= 0; --j) {
      Complex acc = c(i, j);
      for (Index k = i + 1; k < n; ++k) acc -= t(i, k) * y(k, j);
      for (Index k = j + 1; k < n; ++k) acc -= y(i, k) * std::conj(t(j, k));
      const Complex pivot = t(i, i) + std::conj(t(j, j));
      if (std::abs(pivot) <= singular_tol) {
        throw std::domain_error(
            "LyapunovSolve: singular Lyapunov operator (eigenvalues of A sum to zero); "
            "apply a stabilizing shift");
      }
      y(i, j) = acc / pivot;
    }
  }
  const DenseMatrix x = (u * y * u.adjoint()).real();
  return SymmetricKernel::FromMatrix(x);
}

}  // namespace dresplit
