#include <cmath>
#include <stdexcept>

#include "dresplit/linalg.hpp"

namespace dresplit {
namespace {

// Sub-interval bound on ‖δA‖₁. The block exponential contains e^{−δAᵀ}, whose
// growth would otherwise swamp G₁₂·G₁₁ᵀ in cancellation for stiff A.
constexpr double kMaxSubstepNorm = 1.0;

}  // namespace

AffineFlow VanLoanFlow(const Eigen::Ref<const DenseMatrix>& a, const SymmetricKernel& q,
                       double t) {
  const Index n = a.rows();
  if (a.cols() != n || q.dim() != n) throw std::invalid_argument("VanLoanFlow: dimension mismatch");
  if (!std::isfinite(t) || !a.allFinite() || !q.matrix().allFinite()) {
    throw std::domain_error("VanLoanFlow: non-finite input");
  }
  if (t < 0) throw std::invalid_argument("VanLoanFlow: t must be nonnegative");

  const double q_scale = q.matrix().cwiseAbs().maxCoeff();
  if (t == 0 || q_scale == 0) {
    return {Expm(a, t), SymmetricKernel(n)};
  }

  const double norm1 = t * a.cwiseAbs().colwise().sum().maxCoeff();
  const int doublings =
      norm1 > kMaxSubstepNorm ? static_cast<int>(std::ceil(std::log2(norm1 / kMaxSubstepNorm))) : 0;
  const double delta = std::ldexp(t, -doublings);

  DenseMatrix block = DenseMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = delta * a;
  block.topRightCorner(n, n) = (delta / q_scale) * q.matrix();
  block.bottomRightCorner(n, n) = -delta * a.transpose();
  const DenseMatrix g = Expm(block, 1.0);

  DenseMatrix e = g.topLeftCorner(n, n);
  DenseMatrix x = q_scale * (g.topRightCorner(n, n) * e.transpose());
  x = 0.5 * (x + x.transpose()).eval();

  DenseMatrix ex(n, n);
  for (int k = 0; k < doublings; ++k) {
    ex.noalias() = e * x;
    x.noalias() += ex * e.transpose();
    x = 0.5 * (x + x.transpose()).eval();
    e = (e * e).eval();
  }
  return {std::move(e), SymmetricKernel::FromMatrix(x)};
}

}  // namespace dresplit
