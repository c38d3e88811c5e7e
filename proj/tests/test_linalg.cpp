#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "dresplit/linalg.hpp"
#include "dresplit/oracles.hpp"

namespace dresplit {
namespace {

using oracles::RandomPsd;
using oracles::RandomSpd;
using oracles::RandomStable;
using oracles::RandomSymmetric;
using oracles::RelativeError;

// e^{tS} for symmetric S through its eigendecomposition.
DenseMatrix EigenExpm(const DenseMatrix& s, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s);
  const Vector d = (t * es.eigenvalues()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

TEST(Expm, ZeroMatrixGivesIdentity) {
  const DenseMatrix e = Expm(DenseMatrix::Zero(2, 2), 5.0);
  EXPECT_EQ(e, DenseMatrix::Identity(2, 2));
}

TEST(Expm, Diagonal) {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a.diagonal() << -1, -2;
  const DenseMatrix e = Expm(a, 1.0);
  EXPECT_NEAR(e(0, 0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e(1, 1), std::exp(-2.0), 1e-15);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(Expm, MatchesEigendecompositionOnSymmetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a = RandomSymmetric(4, rng);
    EXPECT_LE(RelativeError(Expm(a, 0.3), EigenExpm(a, 0.3)), 1e-12);
  }
}

TEST(Expm, StiffSymmetricUsesSquaring) {
  std::mt19937_64 rng(12);
  const DenseMatrix a = -200.0 * RandomSpd(6, rng);
  EXPECT_LE(RelativeError(Expm(a, 0.01), EigenExpm(a, 0.01)), 1e-11);
}

TEST(Expm, SemigroupProperty) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a = RandomSymmetric(5, rng) + 0.3 * RandomStable(5, rng);
    const double s = unit(rng), t = unit(rng);
    EXPECT_LE(RelativeError(Expm(a, s) * Expm(a, t), Expm(a, s + t)), 1e-11);
  }
}

TEST(Expm, NegativeTimeInvertsForwardFlow) {
  std::mt19937_64 rng(14);
  const DenseMatrix a = RandomSymmetric(3, rng);
  EXPECT_LE(RelativeError(Expm(a, -0.7) * Expm(a, 0.7), DenseMatrix::Identity(3, 3)), 1e-13);
}

TEST(Expm, RejectsBadInput) {
  EXPECT_THROW(Expm(DenseMatrix::Zero(2, 3), 1.0), std::invalid_argument);
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(Expm(a, 1.0), std::domain_error);
  EXPECT_THROW(Expm(DenseMatrix::Zero(2, 2), INFINITY), std::domain_error);
}

TEST(VanLoanFlow, ZeroGeneratorIntegratesConstant) {
  const double tau = 0.37, q = 2.5;
  const AffineFlow f = VanLoanFlow(DenseMatrix::Zero(1, 1), SymmetricKernel::Identity(1) * q, tau);
  EXPECT_NEAR(f.propagator(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(f.integral(0, 0), tau * q, 1e-15);
}

TEST(VanLoanFlow, ScalarClosedForm) {
  const AffineFlow f = VanLoanFlow(DenseMatrix::Constant(1, 1, -1.0), SymmetricKernel::Identity(1), 1.0);
  EXPECT_NEAR(f.integral(0, 0), (1 - std::exp(-2.0)) / 2, 1e-15);
  EXPECT_NEAR(f.integral(0, 0), 0.43233235838169365, 1e-15);
  EXPECT_NEAR(f.propagator(0, 0), std::exp(-1.0), 1e-15);
}

TEST(VanLoanFlow, MatchesSimpsonQuadrature) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = RandomStable(4, rng);
    const DenseMatrix q = RandomPsd(4, rng, 4);
    const AffineFlow f = VanLoanFlow(a, SymmetricKernel::FromMatrix(q), 0.5);
    EXPECT_LE(RelativeError(f.integral.matrix(), oracles::SimpsonGramian(a, q, 0.5, 10000)), 1e-10);
  }
}

TEST(VanLoanFlow, StiffSymmetricMatchesSpectralFormula) {
  // Eigenvalues down to about −5e3 and t = 0.1: the unscaled block exponential
  // would contain e^{500}.
  std::mt19937_64 rng(22);
  const DenseMatrix a = -100.0 * RandomSpd(8, rng);
  const DenseMatrix q = RandomPsd(8, rng, 2);
  const double t = 0.1;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a);
  const DenseMatrix& v = es.eigenvectors();
  const Vector& lam = es.eigenvalues();
  DenseMatrix c = v.transpose() * q * v;
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 8; ++j) c(i, j) *= -std::expm1(t * (lam(i) + lam(j))) / -(lam(i) + lam(j));
  const DenseMatrix expected = v * c * v.transpose();

  const AffineFlow f = VanLoanFlow(a, SymmetricKernel::FromMatrix(q), t);
  EXPECT_LE(RelativeError(f.integral.matrix(), expected), 1e-11);
  EXPECT_LE((f.propagator - EigenExpm(a, t)).norm(), 1e-12);
  EXPECT_EQ(f.integral.SymmetryDefect(), 0.0);
}

TEST(VanLoanFlow, RejectsBadInput) {
  EXPECT_THROW(VanLoanFlow(DenseMatrix::Zero(2, 2), SymmetricKernel(3), 1.0), std::invalid_argument);
  EXPECT_THROW(VanLoanFlow(DenseMatrix::Zero(2, 2), SymmetricKernel(2), -1.0), std::invalid_argument);
}

TEST(Cholesky, IdentityAndDiagonal) {
  EXPECT_EQ(Cholesky(SymmetricKernel::Identity(3)).L(), DenseMatrix::Identity(3, 3));
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m.diagonal() << 4, 9;
  const DenseMatrix l = Cholesky(SymmetricKernel::FromMatrix(m)).L();
  EXPECT_DOUBLE_EQ(l(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(l(1, 1), 3.0);
  EXPECT_EQ(l(1, 0), 0.0);
}

TEST(Cholesky, ResidualOnRandomSpd) {
  std::mt19937_64 rng(31);
  const DenseMatrix m = RandomSpd(5, rng);
  const DenseMatrix l = Cholesky(SymmetricKernel::FromMatrix(m)).L();
  EXPECT_LE((l * l.transpose() - m).norm(), 1e-13 * m.norm());
  EXPECT_TRUE(l.isLowerTriangular());
  EXPECT_GT(l.diagonal().minCoeff(), 0);
}

TEST(Cholesky, RejectsIndefinite) {
  DenseMatrix m = DenseMatrix::Identity(2, 2);
  m(1, 1) = -1;
  EXPECT_THROW(Cholesky(SymmetricKernel::FromMatrix(m)), std::domain_error);
}

TEST(SpectralNorm, TrivialCases) {
  EXPECT_DOUBLE_EQ(SpectralNorm(SymmetricKernel::Identity(3)), 1.0);
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d.diagonal() << 2, -5;
  EXPECT_NEAR(SpectralNorm(SymmetricKernel::FromMatrix(d)), 5.0, 1e-15);
}

TEST(SpectralNorm, MatchesEigensolverAndScales) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const SymmetricKernel s = SymmetricKernel::FromMatrix(RandomSymmetric(6, rng));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s.matrix());
    const double oracle = es.eigenvalues().cwiseAbs().maxCoeff();
    const double norm = SpectralNorm(s);
    EXPECT_NEAR(norm, oracle, 1e-10 * oracle);
    EXPECT_NEAR(SpectralNorm(s * -1.0), norm, 1e-14 * norm);
    EXPECT_NEAR(SpectralNorm(s * -3.5), 3.5 * norm, 1e-14 * norm);
  }
}

TEST(SpectralNorm, PowerIterationAboveSwitchover) {
  std::mt19937_64 rng(42);
  const Index n = kDenseEigenLimit + 40;
  // Decaying spectrum of mixed sign, like the kernels the solver produces.
  Eigen::HouseholderQR<DenseMatrix> qr(oracles::RandomSymmetric(n, rng));
  const DenseMatrix v = qr.householderQ();
  Vector lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = (i % 2 ? -1.0 : 1.0) * std::pow(0.7, static_cast<double>(i));
  const SymmetricKernel s = SymmetricKernel::FromMatrix(v * lam.asDiagonal() * v.transpose());
  EXPECT_NEAR(SpectralNorm(s), 1.0, 1e-10);
}

TEST(Lyapunov, NegativeIdentity) {
  std::mt19937_64 rng(51);
  const SymmetricKernel r = SymmetricKernel::FromMatrix(RandomSymmetric(3, rng));
  const SymmetricKernel x = LyapunovSolve(-DenseMatrix::Identity(3, 3), r);
  EXPECT_LE((x.matrix() + 0.5 * r.matrix()).norm(), 1e-15);
}

TEST(Lyapunov, DiagonalFormula) {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a.diagonal() << -1, -2;
  const SymmetricKernel x = LyapunovSolve(a, SymmetricKernel::FromMatrix(DenseMatrix::Ones(2, 2)));
  EXPECT_NEAR(x(0, 0), -0.5, 1e-15);
  EXPECT_NEAR(x(0, 1), -1.0 / 3, 1e-15);
  EXPECT_NEAR(x(1, 1), -0.25, 1e-15);
  EXPECT_EQ(x.SymmetryDefect(), 0.0);
}

TEST(Lyapunov, ResidualOnRandomStable) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a = RandomStable(5, rng);
    const SymmetricKernel r = SymmetricKernel::FromMatrix(RandomSymmetric(5, rng));
    const SymmetricKernel x = LyapunovSolve(a, r);
    const DenseMatrix residual = a * x.matrix() + x.matrix() * a.transpose() - r.matrix();
    EXPECT_LE(residual.norm(), 1e-10 * r.matrix().norm());
    EXPECT_LE((LyapunovApply(a, x).matrix() - r.matrix()).norm(), 1e-10 * r.matrix().norm());
  }
}

TEST(Lyapunov, DetectsSingularOperator) {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a.diagonal() << 1, -1;
  EXPECT_THROW(LyapunovSolve(a, SymmetricKernel::Identity(2)), std::domain_error);
  EXPECT_THROW(LyapunovSolve(DenseMatrix::Zero(3, 3), SymmetricKernel::Identity(3)),
               std::domain_error);
}

TEST(SymmetricKernel, ConstructorsAreExactlySymmetric) {
  std::mt19937_64 rng(61);
  const DenseMatrix g = oracles::RandomStable(7, rng);
  EXPECT_EQ(SymmetricKernel::FromMatrix(g).SymmetryDefect(), 0.0);
  EXPECT_EQ(SymmetricKernel::Outer(oracles::RandomVector(7, rng)).SymmetryDefect(), 0.0);
  EXPECT_THROW(SymmetricKernel::FromMatrix(DenseMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(PositiveSemidefiniteWithin, ShiftedCholeskyTest) {
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d.diagonal() << 1, 0, -1e-12;
  const SymmetricKernel s = SymmetricKernel::FromMatrix(d);
  EXPECT_TRUE(PositiveSemidefiniteWithin(s, 1e-10));
  EXPECT_FALSE(PositiveSemidefiniteWithin(s, 1e-13));
  EXPECT_NEAR(MinEigenvalue(s), -1e-12, 1e-20);
}

}  // namespace
}  // namespace dresplit
