#pragma once

// Dense linear algebra for the Riccati solver: matrix exponential, the
// block-exponential integral of the affine sub-flow, Cholesky factors,
// spectral norms and a Lyapunov solver.
//
// All functions are pure; they may be called concurrently.

#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace dresplit {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense symmetric matrix. Every constructor symmetrizes explicitly, so the
/// stored entries satisfy a(i, j) == a(j, i) bit for bit.
class SymmetricKernel {
 public:
  SymmetricKernel() = default;

  /// Zero kernel of dimension `dim`.
  explicit SymmetricKernel(Index dim);

  /// (a + aᵀ) / 2. Throws std::invalid_argument for non-square or empty input.
  static SymmetricKernel FromMatrix(const Eigen::Ref<const DenseMatrix>& a);

  /// v·vᵀ
  static SymmetricKernel Outer(const Eigen::Ref<const Vector>& v);

  static SymmetricKernel Identity(Index dim);

  Index dim() const { return m_.rows(); }
  const DenseMatrix& matrix() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  SymmetricKernel operator+(const SymmetricKernel& other) const;
  SymmetricKernel operator-(const SymmetricKernel& other) const;
  SymmetricKernel operator*(double c) const;

  /// Largest |a(i, j) − a(j, i)|; zero for every kernel built by this class.
  double SymmetryDefect() const;

 private:
  DenseMatrix m_;
};

/// Lower-triangular L with M = L·Lᵀ.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const SymmetricKernel& m);

  Index dim() const { return llt_.rows(); }
  DenseMatrix L() const { return llt_.matrixL(); }

  /// M⁻¹·b
  DenseMatrix Solve(const Eigen::Ref<const DenseMatrix>& b) const { return llt_.solve(b); }
  /// y ↦ L·y, in place.
  void ApplyL(Vector& y) const;
  /// y ↦ Lᵀ·y, in place.
  void ApplyLt(Vector& y) const;

 private:
  Eigen::LLT<DenseMatrix> llt_;
};

/// e^{tA} by scaling and squaring with a diagonal Padé approximant
/// (degrees 3..13, chosen from the 1-norm of tA).
DenseMatrix Expm(const Eigen::Ref<const DenseMatrix>& a, double t);

/// Solution operator of the affine matrix ODE Ẏ = AY + YAᵀ + Q:
/// Y(t) = E·Y(0)·Eᵀ + X with E = e^{tA} and X = ∫₀ᵗ e^{sA} Q e^{sAᵀ} ds.
struct AffineFlow {
  DenseMatrix propagator;
  SymmetricKernel integral;
};

/// Computes E and X from the top blocks of exp(δ·[[A, Q], [0, −Aᵀ]]) on a
/// sub-interval δ = t/2^k short enough that the −Aᵀ block stays O(1), then
/// doubles back up to t with E ← E², X ← X + E·X·Eᵀ.
AffineFlow VanLoanFlow(const Eigen::Ref<const DenseMatrix>& a, const SymmetricKernel& q,
                       double t);

CholeskyFactor Cholesky(const SymmetricKernel& m);

/// Dimension up to which SpectralNorm uses a full symmetric eigensolver.
inline constexpr Index kDenseEigenLimit = 512;

/// max |λ(S)|: symmetric eigensolver for dim ≤ kDenseEigenLimit, power
/// iteration (relative tolerance 1e−10) above.
double SpectralNorm(const SymmetricKernel& s);

/// Matrix-free largest |eigenvalue| of a symmetric operator given by `apply`
/// (y = S·x). Power iteration on S² from a fixed pseudo-random start; stops
/// once the S² eigen-residual is below `rel_tol`·‖S‖².
double DominantEigenMagnitude(const std::function<void(const Vector&, Vector&)>& apply,
                              Index dim, double rel_tol = 1e-10, int max_iter = 20000);

/// Smallest eigenvalue (full eigensolver).
double MinEigenvalue(const SymmetricKernel& s);

/// True if S + slack·I admits a Cholesky factorization, i.e. λ_min(S) > −slack.
bool PositiveSemidefiniteWithin(const SymmetricKernel& s, double slack);

/// X with A·X + X·Aᵀ = rhs (Bartels–Stewart on the complex Schur form).
/// Throws std::domain_error if two eigenvalues of A sum to (numerically) zero.
SymmetricKernel LyapunovSolve(const Eigen::Ref<const DenseMatrix>& a,
                              const SymmetricKernel& rhs);

/// A·X + X·Aᵀ
SymmetricKernel LyapunovApply(const Eigen::Ref<const DenseMatrix>& a, const SymmetricKernel& x);

}  // namespace dresplit
