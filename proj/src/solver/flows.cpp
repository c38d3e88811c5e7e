#include <cmath>
#include <stdexcept>

#include "dresplit/solver.hpp"

namespace dresplit::solver {

SymmetricKernel NonlinearFlow(const SymmetricKernel& p, const Vector& ell, double t) {
  if (ell.size() != p.dim()) throw std::invalid_argument("NonlinearFlow: dimension mismatch");
  if (!(t >= 0)) throw std::invalid_argument("NonlinearFlow: t must be nonnegative");
  if (t == 0) return p;
  const Vector p_ell = p.matrix() * ell;
  const double denom = 1 + t * ell.dot(p_ell);
  if (!(denom > 0)) {
    throw std::domain_error("NonlinearFlow: 1 + t*l'Pl <= 0, input kernel is not PSD");
  }
  return SymmetricKernel::FromMatrix(p.matrix() - (t / denom) * (p_ell * p_ell.transpose()));
}

SymmetricKernel TransformedNonlinearFlow(const SymmetricKernel& p, const Vector& ell,
                                         double lambda, double t, double t0) {
  if (!(lambda > 0)) throw std::invalid_argument("TransformedNonlinearFlow: lambda must be > 0");
  if (!(t >= 0)) throw std::invalid_argument("TransformedNonlinearFlow: t must be nonnegative");
  // ∫_{t0}^{t0+t} e^{2λs} ds
  const double t_eff = std::exp(2 * lambda * t0) * std::expm1(2 * lambda * t) / (2 * lambda);
  return NonlinearFlow(p, ell, t_eff);
}

double ScalarRiccatiClosedForm(double a, double q, double s, double p0, double t) {
  if (s < 0 || q < 0 || p0 < 0) {
    throw std::invalid_argument("ScalarRiccatiClosedForm: requires s, q, p0 >= 0");
  }
  DenseMatrix hamiltonian(2, 2);
  hamiltonian << a, q, s, -a;
  const DenseMatrix flow = Expm(hamiltonian, t);
  const double v = flow(0, 0) * p0 + flow(0, 1);
  const double w = flow(1, 0) * p0 + flow(1, 1);
  if (w == 0) throw std::domain_error("ScalarRiccatiClosedForm: finite escape time");
  return v / w;
}

StructureReport CheckStructure(const SymmetricKernel& p, double psd_rel_tol) {
  StructureReport report;
  report.symmetry_defect = p.SymmetryDefect();
  report.norm = SpectralNorm(p);
  report.psd = report.norm == 0 || PositiveSemidefiniteWithin(p, psd_rel_tol * report.norm);
  return report;
}

}  // namespace dresplit::solver
