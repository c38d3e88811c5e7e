#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "dresplit/fem.hpp"
#include "dresplit/oracles.hpp"
#include "dresplit/solver.hpp"

namespace dresplit::oracles {

DenseMatrix ReferenceExpm(const DenseMatrix& a, double t) {
  return (t * a).exp();
}

DenseMatrix SimpsonGramian(const DenseMatrix& a, const DenseMatrix& q, double t, int panels) {
  const int nodes = 2 * panels;
  const double h = t / nodes;
  const DenseMatrix step = ReferenceExpm(a, h);
  DenseMatrix e = DenseMatrix::Identity(a.rows(), a.cols());
  DenseMatrix sum = DenseMatrix::Zero(a.rows(), a.cols());
  for (int k = 0; k <= nodes; ++k) {
    const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * (e * q * e.transpose());
    e = (step * e).eval();
  }
  return (h / 3) * sum;
}

DenseMatrix Rk4QuadraticFlow(const DenseMatrix& p0, const Vector& ell, double t, int steps) {
  const DenseMatrix s = ell * ell.transpose();
  auto f = [&s](const DenseMatrix& p) -> DenseMatrix { return -(p * s * p); };
  const double h = t / steps;
  DenseMatrix p = p0;
  for (int k = 0; k < steps; ++k) {
    const DenseMatrix k1 = f(p);
    const DenseMatrix k2 = f(p + 0.5 * h * k1);
    const DenseMatrix k3 = f(p + 0.5 * h * k2);
    const DenseMatrix k4 = f(p + h * k3);
    p += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return p;
}

double Rk4ScalarRiccati(double a, double q, double s, double p0, double t, int steps) {
  auto f = [=](double p) { return 2 * a * p + q - s * p * p; };
  const double h = t / steps;
  double p = p0;
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(p), k2 = f(p + 0.5 * h * k1), k3 = f(p + 0.5 * h * k2),
                 k4 = f(p + h * k3);
    p += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return p;
}

namespace {
DenseMatrix Gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  DenseMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}
}  // namespace

DenseMatrix RandomStable(Index n, std::mt19937_64& rng, double margin) {
  DenseMatrix g = Gaussian(n, n, rng);
  const double norm = Eigen::JacobiSVD<DenseMatrix>(g).singularValues()(0);
  g.diagonal().array() -= norm + margin;
  return g;
}

DenseMatrix RandomSpd(Index n, std::mt19937_64& rng) {
  const DenseMatrix b = Gaussian(n, n, rng);
  return b.transpose() * b + DenseMatrix::Identity(n, n);
}

DenseMatrix RandomPsd(Index n, std::mt19937_64& rng, Index rank) {
  const DenseMatrix b = Gaussian(rank, n, rng);
  return b.transpose() * b;
}

DenseMatrix RandomSymmetric(Index n, std::mt19937_64& rng) {
  const DenseMatrix g = Gaussian(n, n, rng);
  return 0.5 * (g + g.transpose());
}

Vector RandomVector(Index n, std::mt19937_64& rng) { return Gaussian(n, 1, rng); }

double RelativeError(const DenseMatrix& a, const DenseMatrix& b) {
  const double scale = b.norm();
  return scale > 0 ? (a - b).norm() / scale : (a - b).norm();
}

OracleCheck CheckNonlinearFlow(int instances, unsigned seed) {
  std::mt19937_64 rng(seed);
  OracleCheck check{"nonlinear flow vs RK4 (Sherman-Morrison, 5x5 PSD, t=0.7)", 0, 1e-8};
  for (int i = 0; i < instances; ++i) {
    const DenseMatrix p = RandomPsd(5, rng, 5);
    const Vector ell = RandomVector(5, rng);
    const DenseMatrix closed =
        solver::NonlinearFlow(SymmetricKernel::FromMatrix(p), ell, 0.7).matrix();
    const DenseMatrix rk4 = Rk4QuadraticFlow(p, ell, 0.7, 10000);
    check.max_deviation = std::max(check.max_deviation, RelativeError(closed, rk4));
  }
  return check;
}

OracleCheck CheckVanLoan(int instances, unsigned seed) {
  std::mt19937_64 rng(seed);
  OracleCheck check{"Van Loan integral vs Simpson (stable 4x4, t=0.5)", 0, 1e-10};
  for (int i = 0; i < instances; ++i) {
    const DenseMatrix a = RandomStable(4, rng);
    const DenseMatrix q = RandomPsd(4, rng, 4);
    const AffineFlow flow = VanLoanFlow(a, SymmetricKernel::FromMatrix(q), 0.5);
    const DenseMatrix simpson = SimpsonGramian(a, q, 0.5, 10000);
    check.max_deviation = std::max(check.max_deviation, RelativeError(flow.integral.matrix(), simpson));
    check.max_deviation =
        std::max(check.max_deviation, RelativeError(flow.propagator, ReferenceExpm(a, 0.5)));
  }
  return check;
}

OracleCheck CheckScalarRiccati() {
  struct Case {
    double a, q, s, p0, t;
  };
  constexpr Case kCases[] = {
      {-1, 1, 1, 0, 1}, {0, 0, 1, 1, 1}, {0.5, 2, 3, 0.25, 2}, {-3, 0.5, 0.1, 4, 1.5}, {1, 0, 0, 1, 1}};
  OracleCheck check{"scalar Riccati closed form vs RK4 (1e5 steps)", 0, 1e-10};
  for (const Case& c : kCases) {
    const double exact = solver::ScalarRiccatiClosedForm(c.a, c.q, c.s, c.p0, c.t);
    const double rk4 = Rk4ScalarRiccati(c.a, c.q, c.s, c.p0, c.t, 100000);
    const double dev = std::abs(exact - rk4) / std::max(1.0, std::abs(rk4));
    check.max_deviation = std::max(check.max_deviation, dev);
  }
  return check;
}

OracleCheck CheckScalarLieStep() {
  // M = 1, 𝐀 = a, q, ℓ: one step from p0 is e^{2aτ}·p0/(1 + τℓ²p0) + q²(e^{2aτ} − 1)/(2a).
  const double a = -0.8, q = 1.3, ell = 0.9, p0 = 0.6, tau = 0.125;
  const fem::GalerkinDRE problem =
      fem::MakeProblem(SymmetricKernel::Identity(1), SymmetricKernel::Identity(1) * a,
                       Vector::Constant(1, ell), Vector::Constant(1, q), Vector::Constant(1, std::sqrt(p0)),
                       0.0, tau);
  const double step = solver::Solve(problem, 1).kernels.back()(0, 0);
  const double expected =
      std::exp(2 * a * tau) * p0 / (1 + tau * ell * ell * p0) + q * q * std::expm1(2 * a * tau) / (2 * a);
  return {"scalar Lie step vs composed closed forms", std::abs(step - expected) / std::abs(expected),
          1e-13};
}

std::vector<OracleCheck> RunOracleSuite() {
  return {CheckScalarRiccati(), CheckVanLoan(), CheckNonlinearFlow(), CheckScalarLieStep()};
}

}  // namespace dresplit::oracles
