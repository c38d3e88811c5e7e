#include <cmath>
#include <stdexcept>

#include "dresplit/solver.hpp"

namespace dresplit::solver {
namespace {

// E·P·Eᵀ + c·X
SymmetricKernel AffineStep(const SymmetricKernel& p, const LieStepPrecomp& pre, double c) {
  if (p.dim() != pre.propagator.rows()) throw std::invalid_argument("LieStep: dimension mismatch");
  DenseMatrix ep(p.dim(), p.dim());
  ep.noalias() = pre.propagator * p.matrix();
  DenseMatrix out = pre.integral.matrix() * c;
  out.noalias() += ep * pre.propagator.transpose();
  return SymmetricKernel::FromMatrix(out);
}

}  // namespace

LieStepPrecomp PrecomputeLieStep(const GalerkinDRE& problem, double tau, Mode mode) {
  if (!(tau > 0)) throw std::invalid_argument("PrecomputeLieStep: tau must be > 0");
  if (mode == Mode::kTransformed && !(problem.shift > 0)) {
    throw std::invalid_argument("PrecomputeLieStep: transformed mode needs a shift > 0");
  }
  const DenseMatrix a = mode == Mode::kTransformed ? problem.ShiftedGenerator() : problem.generator;
  AffineFlow flow = VanLoanFlow(a, problem.OutputKernel(), tau);

  LieStepPrecomp pre;
  pre.propagator = std::move(flow.propagator);
  pre.integral = std::move(flow.integral);
  pre.tau = tau;
  pre.s_factor = problem.ell_xi;
  pre.mode = mode;
  pre.lambda = mode == Mode::kTransformed ? problem.shift : 0.0;
  return pre;
}

SymmetricKernel LieStep(const SymmetricKernel& p, const LieStepPrecomp& pre) {
  return AffineStep(NonlinearFlow(p, pre.s_factor, pre.tau), pre, 1.0);
}

SymmetricKernel TransformedLieStep(const SymmetricKernel& p, const LieStepPrecomp& pre,
                                   double t0) {
  const SymmetricKernel q =
      TransformedNonlinearFlow(p, pre.s_factor, pre.lambda, pre.tau, t0);
  return AffineStep(q, pre, std::exp(-2 * pre.lambda * t0));
}

SymmetricKernel Trajectory::Physical(int n) const {
  const SymmetricKernel& k = kernels.at(n);
  return transformed ? k * std::exp(2 * lambda * Time(n)) : k;
}

LieStepper::LieStepper(const GalerkinDRE& problem, int nt, Mode mode)
    : LieStepper(problem, nt, mode, problem.InitialKernel()) {}

LieStepper::LieStepper(const GalerkinDRE& problem, int nt, Mode mode,
                       const SymmetricKernel& initial)
    : nt_(nt), state_(initial) {
  if (nt < 1) throw std::invalid_argument("LieStepper: nt must be >= 1");
  if (initial.dim() != problem.dim()) throw std::invalid_argument("LieStepper: dimension mismatch");
  pre_ = PrecomputeLieStep(problem, problem.horizon / nt, mode);
}

void LieStepper::Advance() {
  if (step_ >= nt_) throw std::logic_error("LieStepper: already at the final time");
  state_ = pre_.mode == Mode::kTransformed ? TransformedLieStep(state_, pre_, time())
                                           : LieStep(state_, pre_);
  ++step_;
}

SymmetricKernel LieStepper::Physical() const {
  return pre_.mode == Mode::kTransformed ? state_ * std::exp(2 * pre_.lambda * time()) : state_;
}

void Solve(const GalerkinDRE& problem, int nt, const StepObserver& observer) {
  LieStepper stepper(problem, nt);
  observer(0, stepper.state());
  while (stepper.step() < nt) {
    stepper.Advance();
    observer(stepper.step(), stepper.state());
  }
}

Trajectory Solve(const GalerkinDRE& problem, int nt) {
  Trajectory traj;
  traj.tau = problem.horizon / nt;
  Solve(problem, nt, [&traj](int, const SymmetricKernel& p) { traj.kernels.push_back(p); });
  return traj;
}

Trajectory SolveTransformed(const GalerkinDRE& problem, int nt) {
  LieStepper stepper(problem, nt, Mode::kTransformed);
  Trajectory traj;
  traj.tau = stepper.tau();
  traj.transformed = true;
  traj.lambda = problem.shift;
  traj.kernels.push_back(stepper.state());
  while (stepper.step() < nt) {
    stepper.Advance();
    traj.kernels.push_back(stepper.state());
  }
  return traj;
}

}  // namespace dresplit::solver
