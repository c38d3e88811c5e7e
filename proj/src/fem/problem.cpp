#include <cmath>
#include <stdexcept>

#include "dresplit/fem.hpp"

namespace dresplit::fem {

DenseMatrix GalerkinDRE::ShiftedGenerator() const {
  DenseMatrix a = generator;
  a.diagonal().array() -= shift;
  return a;
}

GalerkinDRE MakeProblem(const SymmetricKernel& mass, const SymmetricKernel& stiffness,
                        const Vector& ell_xi, const Vector& q_vec, const Vector& z_vec,
                        double shift, double horizon, int nx) {
  const Index n = mass.dim();
  if (stiffness.dim() != n || ell_xi.size() != n || q_vec.size() != n || z_vec.size() != n) {
    throw std::invalid_argument("MakeProblem: dimension mismatch");
  }
  if (!(shift >= 0) || !std::isfinite(shift)) {
    throw std::invalid_argument("MakeProblem: shift must be finite and >= 0");
  }
  if (!(horizon > 0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("MakeProblem: horizon must be finite and > 0");
  }
  const CholeskyFactor mass_factor = Cholesky(mass);

  GalerkinDRE p;
  p.nx = nx;
  p.mass = mass;
  p.stiffness = stiffness;
  p.ell_xi = ell_xi;
  p.q_vec = q_vec;
  p.z_vec = z_vec;
  p.shift = shift;
  p.horizon = horizon;
  p.generator = mass_factor.Solve(stiffness.matrix());
  return p;
}

GalerkinDRE BuildProblem(int nx, const ScalarField& xi, const ScalarField& zeta,
                         double lambda_shift, double horizon) {
  const PeriodicMesh mesh = BuildMesh(nx);
  const SymmetricKernel mass = AssembleMass(mesh);
  const SymmetricKernel stiffness = AssembleStiffness(mesh);
  const CholeskyFactor mass_factor = Cholesky(mass);

  const Vector ell_xi = AssembleLoad(mesh, xi.value);
  const Vector q = mass_factor.Solve(AssembleHalfDomain(mesh));
  const Vector z = mass_factor.Solve(AssembleLoad(mesh, zeta.value));
  return MakeProblem(mass, stiffness, ell_xi, q, z, lambda_shift, horizon, nx);
}

}  // namespace dresplit::fem
