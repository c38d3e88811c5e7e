#pragma once

// Time stepping for the Galerkin Riccati equation: Lie splitting with the
// exact quadratic sub-flow and the affine sub-flow, the exponentially
// shifted variant, and brute-force reference integrators.

#include <functional>
#include <vector>

#include "dresplit/fem.hpp"
#include "dresplit/linalg.hpp"

namespace dresplit::solver {

using fem::GalerkinDRE;

/// Exact flow of Ṗ = −P·ℓℓᵀ·P over time t:
/// (I + t·P·ℓℓᵀ)⁻¹·P = P − t·(Pℓ)(Pℓ)ᵀ / (1 + t·ℓᵀPℓ).
/// Throws std::domain_error if 1 + t·ℓᵀPℓ ≤ 0 (P not PSD).
SymmetricKernel NonlinearFlow(const SymmetricKernel& p, const Vector& ell, double t);

/// Exact flow of Ṗ = −P·e^{2λs}ℓℓᵀ·P from s = t0 to s = t0 + t, i.e.
/// NonlinearFlow with effective time e^{2λ·t0}·(e^{2λt} − 1)/(2λ).
SymmetricKernel TransformedNonlinearFlow(const SymmetricKernel& p, const Vector& ell,
                                         double lambda, double t, double t0 = 0);

enum class Mode {
  kDirect,       ///< physical equation with Â = M⁻¹𝐀
  kTransformed,  ///< P̄ = e^{−2λt}P with Â − λI, Q̄ = e^{−2λt}Q̂, S̄ = e^{2λt}Ŝ
};

/// Step data shared by every step of one (problem, τ) pair.
struct LieStepPrecomp {
  DenseMatrix propagator;  ///< e^{τÂ}
  SymmetricKernel integral;  ///< ∫₀^τ e^{sÂ} Q̂ e^{sÂᵀ} ds
  double tau = 0;
  Vector s_factor;  ///< ℓ_ξ
  Mode mode = Mode::kDirect;
  double lambda = 0;
};

LieStepPrecomp PrecomputeLieStep(const GalerkinDRE& problem, double tau,
                                 Mode mode = Mode::kDirect);

/// One direct Lie step: E·NonlinearFlow(P, ℓ, τ)·Eᵀ + X.
SymmetricKernel LieStep(const SymmetricKernel& p, const LieStepPrecomp& pre);

/// One transformed step starting at time t0: the time-varying quadratic
/// flow, then the affine flow with Q̄ frozen at t0.
SymmetricKernel TransformedLieStep(const SymmetricKernel& p, const LieStepPrecomp& pre,
                                   double t0);

/// Kernels on the uniform grid t_n = n·τ, n = 0..N.
struct Trajectory {
  double tau = 0;
  std::vector<SymmetricKernel> kernels;
  bool transformed = false;
  double lambda = 0;

  int steps() const { return static_cast<int>(kernels.size()) - 1; }
  double Time(int n) const { return n * tau; }
  /// Physical kernel P(nτ); applies e^{2λnτ} when the stored values are P̄.
  SymmetricKernel Physical(int n) const;
};

/// Advances one trajectory a step at a time without storing it.
class LieStepper {
 public:
  LieStepper(const GalerkinDRE& problem, int nt, Mode mode = Mode::kDirect);
  /// Starts from `initial` instead of the problem's zzᵀ.
  LieStepper(const GalerkinDRE& problem, int nt, Mode mode, const SymmetricKernel& initial);

  void Advance();
  int step() const { return step_; }
  int nt() const { return nt_; }
  double tau() const { return pre_.tau; }
  double time() const { return step_ * pre_.tau; }
  /// Stored state (P̄ in transformed mode).
  const SymmetricKernel& state() const { return state_; }
  /// P at the current time.
  SymmetricKernel Physical() const;

 private:
  LieStepPrecomp pre_;
  int nt_;
  int step_ = 0;
  SymmetricKernel state_;
};

/// Observer called with (step index, stored kernel) for n = 0..nt.
using StepObserver = std::function<void(int, const SymmetricKernel&)>;

/// Lie splitting with τ = T/nt from P₀ = zzᵀ.
Trajectory Solve(const GalerkinDRE& problem, int nt);
void Solve(const GalerkinDRE& problem, int nt, const StepObserver& observer);

/// Shifted formulation with λ = problem.shift > 0; the trajectory stores P̄.
Trajectory SolveTransformed(const GalerkinDRE& problem, int nt);

/// X with ÂX + XÂᵀ = rhs for the shifted generator Â = M⁻¹𝐀 − λI.
/// Throws std::domain_error if λ = 0.
SymmetricKernel RegularizedInitial(const GalerkinDRE& problem, const SymmetricKernel& rhs);

/// The round trip with the discrete generator: rhs = ÂP₀ + P₀Âᵀ.
SymmetricKernel RegularizedInitial(const GalerkinDRE& problem);

/// Projection of 𝒜P₀ for P₀ = ζ⊗ζ computed from the continuous shifted
/// generator: w·zᵀ + z·wᵀ with w the L² projection of Δζ − λζ.
SymmetricKernel ProjectedGeneratorImage(const GalerkinDRE& problem, const fem::ScalarField& zeta);

/// Classical RK4 for Ṗ = ÂP + PÂᵀ + Q̂ − PŜP (Â unshifted), symmetrized each
/// step. Throws std::runtime_error if ‖P‖ exceeds 1e6 times its scale.
Trajectory Rk4Reference(const GalerkinDRE& problem, int nt_fine);

/// Exact solution of ṗ = 2ap + q − sp², p(0) = p0, as v/w of the linear
/// system [v; w]' = [[a, q], [s, −a]]·[v; w], v(0) = p0, w(0) = 1.
double ScalarRiccatiClosedForm(double a, double q, double s, double p0, double t);

/// Symmetry defect and PSD check for one stored kernel.
struct StructureReport {
  double norm = 0;
  double symmetry_defect = 0;
  bool psd = true;  ///< λ_min ≥ −1e−10·‖P‖
};
StructureReport CheckStructure(const SymmetricKernel& p, double psd_rel_tol = 1e-10);

}  // namespace dresplit::solver
