#include <cmath>
#include <stdexcept>
#include <string>

#include "dresplit/solver.hpp"

namespace dresplit::solver {

SymmetricKernel RegularizedInitial(const GalerkinDRE& problem, const SymmetricKernel& rhs) {
  if (!(problem.shift > 0)) {
    throw std::domain_error(
        "RegularizedInitial: the unshifted generator is singular; set a shift lambda > 0");
  }
  return LyapunovSolve(problem.ShiftedGenerator(), rhs);
}

SymmetricKernel RegularizedInitial(const GalerkinDRE& problem) {
  if (!(problem.shift > 0)) {
    throw std::domain_error(
        "RegularizedInitial: the unshifted generator is singular; set a shift lambda > 0");
  }
  const DenseMatrix a = problem.ShiftedGenerator();
  return LyapunovSolve(a, LyapunovApply(a, problem.InitialKernel()));
}

SymmetricKernel ProjectedGeneratorImage(const GalerkinDRE& problem, const fem::ScalarField& zeta) {
  if (problem.nx == 0) throw std::invalid_argument("ProjectedGeneratorImage: needs a mesh problem");
  const fem::PeriodicMesh mesh = fem::BuildMesh(problem.nx);
  const double lambda = problem.shift;
  const Vector load = fem::AssembleLoad(mesh, [&zeta, lambda](double x, double y) {
    return zeta.laplacian(x, y) - lambda * zeta.value(x, y);
  });
  const Vector w = Cholesky(problem.mass).Solve(load);
  const DenseMatrix wz = w * problem.z_vec.transpose();
  return SymmetricKernel::FromMatrix(wz + wz.transpose());
}

Trajectory Rk4Reference(const GalerkinDRE& problem, int nt_fine) {
  if (nt_fine < 1) throw std::invalid_argument("Rk4Reference: nt_fine must be >= 1");
  const DenseMatrix& a = problem.generator;
  const DenseMatrix q = problem.OutputKernel().matrix();
  const Vector& ell = problem.ell_xi;
  const double tau = problem.horizon / nt_fine;

  auto rhs = [&](const DenseMatrix& p) {
    const DenseMatrix ap = a * p;
    const Vector pl = p * ell;
    DenseMatrix f = ap + ap.transpose() + q;
    f.noalias() -= pl * pl.transpose();
    return f;
  };

  Trajectory traj;
  traj.tau = tau;
  traj.kernels.reserve(nt_fine + 1);
  DenseMatrix p = problem.InitialKernel().matrix();
  traj.kernels.push_back(SymmetricKernel::FromMatrix(p));

  const double scale = std::max(p.cwiseAbs().maxCoeff(), problem.horizon * q.cwiseAbs().maxCoeff());
  for (int n = 0; n < nt_fine; ++n) {
    const DenseMatrix k1 = rhs(p);
    const DenseMatrix k2 = rhs(p + 0.5 * tau * k1);
    const DenseMatrix k3 = rhs(p + 0.5 * tau * k2);
    const DenseMatrix k4 = rhs(p + tau * k3);
    p += (tau / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    p = 0.5 * (p + p.transpose()).eval();
    const double size = p.cwiseAbs().maxCoeff();
    if (!std::isfinite(size) || size > 1e6 * scale) {
      throw std::runtime_error("Rk4Reference: blow-up at step " + std::to_string(n + 1) +
                               " (tau = " + std::to_string(tau) +
                               "); the step is beyond the RK4 stability limit, increase nt_fine");
    }
    traj.kernels.push_back(SymmetricKernel::FromMatrix(p));
  }
  return traj;
}

}  // namespace dresplit::solver
