#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "dresplit/lab.hpp"

namespace dresplit::lab {

double OperatorNormL2(const SymmetricKernel& p, const CholeskyFactor& mass_factor) {
  if (p.dim() != mass_factor.dim()) throw std::invalid_argument("OperatorNormL2: dimension mismatch");
  if (p.dim() <= kDenseEigenLimit) {
    const DenseMatrix l = mass_factor.L();
    return SpectralNorm(SymmetricKernel::FromMatrix(l.transpose() * p.matrix() * l));
  }
  const DenseMatrix& m = p.matrix();
  return DominantEigenMagnitude(
      [&](const Vector& x, Vector& y) {
        Vector lx = x;
        mass_factor.ApplyL(lx);
        y.noalias() = m * lx;
        mass_factor.ApplyLt(y);
      },
      p.dim());
}

void RelativeSupError::Add(double diff_norm, double ref_norm) {
  max_diff_ = std::max(max_diff_, diff_norm);
  max_ref_ = std::max(max_ref_, ref_norm);
  ++samples_;
}

double RelativeSupError::value() const {
  if (max_diff_ == 0) return 0;
  if (max_ref_ == 0) throw std::domain_error("RelativeSupError: reference is identically zero");
  return max_diff_ / max_ref_;
}

double ErrTauH(const solver::Trajectory& traj, const solver::Trajectory& ref,
               const InjectionOperator& j_traj, const InjectionOperator& j_ref,
               const CholeskyFactor& mass_common) {
  const int n_traj = traj.steps(), n_ref = ref.steps();
  if (n_traj < 1 || n_ref < n_traj || n_ref % n_traj != 0) {
    throw std::invalid_argument("ErrTauH: reference time grid does not refine the trajectory's");
  }
  if (std::abs(traj.tau * n_traj - ref.tau * n_ref) > 1e-12 * traj.tau * n_traj) {
    throw std::invalid_argument("ErrTauH: trajectories cover different horizons");
  }
  if (j_traj.fine_nx != j_ref.fine_nx) {
    throw std::invalid_argument("ErrTauH: injections target different spaces");
  }
  const int stride = n_ref / n_traj;
  RelativeSupError acc;
  for (int n = 1; n <= n_traj; ++n) {
    const SymmetricKernel r = ExtendKernel(ref.Physical(stride * n), j_ref);
    const SymmetricKernel d = ExtendKernel(traj.Physical(n), j_traj) - r;
    acc.Add(OperatorNormL2(d, mass_common), OperatorNormL2(r, mass_common));
  }
  return acc.value();
}

double ObservedOrder(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<std::pair<double, double>> usable;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0 && !(pairs[i].first < pairs[i - 1].first)) {
      throw std::invalid_argument("ObservedOrder: steps must be strictly decreasing");
    }
    if (pairs[i].second > 0) {
      usable.push_back(pairs[i]);
    } else {
      std::cerr << "warning: ObservedOrder: dropping nonpositive error at step " << pairs[i].first
                << "\n";
    }
  }
  if (usable.size() < 2) throw std::invalid_argument("ObservedOrder: need at least two positive errors");

  double mx = 0, my = 0;
  for (const auto& [step, err] : usable) {
    mx += std::log(step);
    my += std::log(err);
  }
  mx /= usable.size();
  my /= usable.size();
  double sxy = 0, sxx = 0;
  for (const auto& [step, err] : usable) {
    const double dx = std::log(step) - mx;
    sxy += dx * (std::log(err) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<std::pair<double, double>> DropStagnation(
    const std::vector<std::pair<double, double>>& pairs, double min_ratio, double factor) {
  if (pairs.size() < 3) return pairs;
  const double last = pairs.back().second, before = pairs[pairs.size() - 2].second;
  if (last <= 0 || before / last >= min_ratio) return pairs;

  double floor = last;
  for (const auto& p : pairs) {
    if (p.second > 0) floor = std::min(floor, p.second);
  }
  std::vector<std::pair<double, double>> kept;
  for (const auto& p : pairs) {
    if (p.second >= factor * floor) kept.push_back(p);
  }
  return kept;
}

}  // namespace dresplit::lab
