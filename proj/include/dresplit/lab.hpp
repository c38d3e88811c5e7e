#pragma once

// Convergence laboratory: nested-grid injection, the relative sup-in-time
// operator-norm error and observed-order fits.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dresplit/fem.hpp"
#include "dresplit/linalg.hpp"
#include "dresplit/solver.hpp"

namespace dresplit::lab {

/// Nodal interpolation from the coarse periodic P1 space into a nested fine one.
struct InjectionOperator {
  int coarse_nx = 0;
  int fine_nx = 0;
  DenseMatrix J;  ///< fine_nx² × coarse_nx²
};

/// Throws std::invalid_argument unless fine_nx = coarse_nx·2^m.
InjectionOperator BuildInjection(int coarse_nx, int fine_nx);

/// J·P·Jᵀ
SymmetricKernel ExtendKernel(const SymmetricKernel& p, const InjectionOperator& inj);

/// L²(Ω)-operator norm of the kernel P: ‖Lᵀ·P·L‖₂ with M = L·Lᵀ.
double OperatorNormL2(const SymmetricKernel& p, const CholeskyFactor& mass_factor);

/// Running max-over-time numerator and denominator of the relative error.
class RelativeSupError {
 public:
  void Add(double diff_norm, double ref_norm);
  double value() const;
  double max_diff() const { return max_diff_; }
  double max_ref() const { return max_ref_; }
  int samples() const { return samples_; }

 private:
  double max_diff_ = 0;
  double max_ref_ = 0;
  int samples_ = 0;
};

/// max_n ‖J_t·P_n·J_tᵀ − J_r·R_{kn}·J_rᵀ‖ / max_n ‖J_r·R_{kn}·J_rᵀ‖ over
/// n = 1..N, where k = ref steps / traj steps and norms are L²-operator
/// norms in the common space factored by `mass_common`.
double ErrTauH(const solver::Trajectory& traj, const solver::Trajectory& ref,
               const InjectionOperator& j_traj, const InjectionOperator& j_ref,
               const CholeskyFactor& mass_common);

/// Least-squares slope of log(err) against log(step). Pairs with err ≤ 0 are
/// dropped with a warning on stderr. Throws std::invalid_argument if fewer
/// than two usable pairs remain or steps are not strictly decreasing.
double ObservedOrder(const std::vector<std::pair<double, double>>& pairs);

/// Pairs left after removing the stagnation plateau. A plateau is present
/// when the last error ratio across one refinement is below `min_ratio`;
/// then every point within `factor` of the smallest error is dropped.
std::vector<std::pair<double, double>> DropStagnation(
    const std::vector<std::pair<double, double>>& pairs, double min_ratio, double factor = 3.0);

enum class Coupling { kNone, kTauEqualsHSquared };

struct StudyConfig {
  std::vector<int> nx_ladder;
  std::vector<int> nt_ladder;  ///< ignored under τ = h² coupling
  Coupling coupling = Coupling::kNone;
  double horizon = 1;
  std::string xi_name = "default-xi";
  std::string zeta_name = "default-zeta";
  double xi_amplitude = 1;
  double zeta_amplitude = 1;
  double lambda = 0;  ///< recorded in the report; stored on every problem
  std::optional<int> ref_nx;  ///< default: finest nx
  std::optional<int> ref_nt;  ///< default: finest nt (or ref_nx²·T when coupled)
};

struct StudyEntry {
  int nx = 0;
  int nt = 0;
  double h = 0;
  double tau = 0;
  double err = 0;  ///< against the designated reference, in its space
  std::optional<double> self_err;  ///< against the same-nx finest-nt run
};

struct OrderFit {
  std::string label;  ///< "nx=8", "nt=64" or "tau=h^2"
  std::optional<double> order;
  int points_used = 0;
};

struct PlateauDiagnostic {
  int nx = 0;
  double err_second_finest = 0;
  double err_finest = 0;
  double relative_change = 0;
};

struct ConvergenceReport {
  StudyConfig config;
  int ref_nx = 0;
  int ref_nt = 0;
  std::vector<StudyEntry> entries;
  std::vector<OrderFit> temporal_orders;
  std::vector<OrderFit> spatial_orders;
  std::vector<PlateauDiagnostic> plateaus;
};

/// Observer for every stored kernel of every run: (nx, nt, step, kernel).
using RunObserver = std::function<void(int, int, int, const SymmetricKernel&)>;

/// Runs every (nx, nt) of the study and the reference in lockstep on the
/// reference time grid, so no trajectory is ever held in memory.
ConvergenceReport RunStudy(const StudyConfig& config, const RunObserver& observer = {});

/// Runs of a study in ascending (nx, nt) order, without the reference.
std::vector<std::pair<int, int>> StudyRuns(const StudyConfig& config);

}  // namespace dresplit::lab
