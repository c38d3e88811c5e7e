#pragma once

// Independent reference computations used to validate the solver: Eigen's
// own matrix exponential, composite Simpson quadrature and RK4. None of
// these share code paths with the production routines they check.

#include <random>
#include <string>
#include <vector>

#include "dresplit/linalg.hpp"

namespace dresplit::oracles {

/// e^{tA} from Eigen's MatrixFunctions module.
DenseMatrix ReferenceExpm(const DenseMatrix& a, double t);

/// ∫₀ᵗ e^{sA} Q e^{sAᵀ} ds by composite Simpson with `panels` panels.
DenseMatrix SimpsonGramian(const DenseMatrix& a, const DenseMatrix& q, double t, int panels);

/// RK4 for Ṗ = −P·ℓℓᵀ·P.
DenseMatrix Rk4QuadraticFlow(const DenseMatrix& p0, const Vector& ell, double t, int steps);

/// RK4 for ṗ = 2ap + q − sp².
double Rk4ScalarRiccati(double a, double q, double s, double p0, double t, int steps);

/// Gaussian matrix shifted left of the imaginary axis by its spectral norm plus `margin`.
DenseMatrix RandomStable(Index n, std::mt19937_64& rng, double margin = 0.1);
/// BᵀB + I for Gaussian B.
DenseMatrix RandomSpd(Index n, std::mt19937_64& rng);
/// BᵀB for Gaussian B (rank ≤ `rank`).
DenseMatrix RandomPsd(Index n, std::mt19937_64& rng, Index rank);
DenseMatrix RandomSymmetric(Index n, std::mt19937_64& rng);
Vector RandomVector(Index n, std::mt19937_64& rng);

struct OracleCheck {
  std::string name;
  double max_deviation = 0;
  double tolerance = 0;
  bool passed() const { return max_deviation <= tolerance; }
};

/// Relative Frobenius distance ‖a − b‖ / ‖b‖ (absolute when b = 0).
double RelativeError(const DenseMatrix& a, const DenseMatrix& b);

/// Sherman–Morrison quadratic flow vs 10⁴-step RK4 on `instances` random
/// PSD 5×5 problems, t = 0.7.
OracleCheck CheckNonlinearFlow(int instances = 20, unsigned seed = 1);
/// Van Loan integral vs 10⁴-panel Simpson on random stable 4×4, t = 0.5.
OracleCheck CheckVanLoan(int instances = 20, unsigned seed = 2);
/// Scalar closed form vs 10⁵-step RK4 on a fixed set of coefficient tuples.
OracleCheck CheckScalarRiccati();
/// One Lie step of a scalar problem vs the composition of scalar closed forms.
OracleCheck CheckScalarLieStep();

std::vector<OracleCheck> RunOracleSuite();

}  // namespace dresplit::oracles
