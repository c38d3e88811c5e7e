#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "dresplit/lab.hpp"

namespace dresplit::lab {
namespace {

using RunKey = std::pair<int, int>;  // (nx, nt)

bool IsPowerOfTwo(int v) { return v > 0 && (v & (v - 1)) == 0; }

int CoupledSteps(int nx, double horizon) {
  const double nt = horizon * nx * nx;
  const double rounded = std::round(nt);
  if (rounded < 1 || std::abs(nt - rounded) > 1e-9 * nt) {
    throw std::invalid_argument("RunStudy: tau = h^2 coupling needs T*nx^2 to be a positive integer");
  }
  return static_cast<int>(rounded);
}

std::optional<double> FitOrder(std::vector<std::pair<double, double>> pairs, double min_ratio,
                               int& used) {
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::erase_if(pairs, [](auto& p) { return !(p.second > 0); });
  pairs = DropStagnation(pairs, min_ratio);
  used = static_cast<int>(pairs.size());
  if (pairs.size() < 2) return std::nullopt;
  return ObservedOrder(pairs);
}

}  // namespace

std::vector<std::pair<int, int>> StudyRuns(const StudyConfig& config) {
  if (config.nx_ladder.empty()) throw std::invalid_argument("RunStudy: empty nx ladder");
  std::set<RunKey> runs;
  for (int nx : config.nx_ladder) {
    if (config.coupling == Coupling::kTauEqualsHSquared) {
      runs.insert({nx, CoupledSteps(nx, config.horizon)});
    } else {
      if (config.nt_ladder.empty()) throw std::invalid_argument("RunStudy: empty nt ladder");
      for (int nt : config.nt_ladder) runs.insert({nx, nt});
    }
  }
  return {runs.begin(), runs.end()};
}

ConvergenceReport RunStudy(const StudyConfig& config, const RunObserver& observer) {
  const std::vector<RunKey> runs = StudyRuns(config);

  ConvergenceReport report;
  report.config = config;
  int max_nx = 0, max_nt = 0;
  for (const auto& [nx, nt] : runs) {
    max_nx = std::max(max_nx, nx);
    max_nt = std::max(max_nt, nt);
  }
  report.ref_nx = config.ref_nx.value_or(max_nx);
  if (config.ref_nt) {
    report.ref_nt = *config.ref_nt;
  } else if (config.coupling == Coupling::kTauEqualsHSquared) {
    report.ref_nt = CoupledSteps(report.ref_nx, config.horizon);
  } else {
    report.ref_nt = max_nt;
  }
  const int ref_nx = report.ref_nx, ref_nt = report.ref_nt;
  for (const auto& [nx, nt] : runs) {
    if (nx > ref_nx || nt > ref_nt) {
      throw std::invalid_argument("RunStudy: reference (nx = " + std::to_string(ref_nx) +
                                  ", nt = " + std::to_string(ref_nt) +
                                  ") is not finer than run (nx = " + std::to_string(nx) +
                                  ", nt = " + std::to_string(nt) + ")");
    }
    if (ref_nt % nt != 0) {
      throw std::invalid_argument("RunStudy: nt = " + std::to_string(nt) +
                                  " does not divide the reference nt = " + std::to_string(ref_nt));
    }
    if (ref_nx % nx != 0 || !IsPowerOfTwo(ref_nx / nx)) {
      throw std::invalid_argument("RunStudy: nx = " + std::to_string(nx) +
                                  " is not nested in the reference nx = " + std::to_string(ref_nx));
    }
  }

  const fem::ScalarField xi = fem::MakeField(config.xi_name, config.xi_amplitude);
  const fem::ScalarField zeta = fem::MakeField(config.zeta_name, config.zeta_amplitude);

  // Per-grid data.
  std::map<int, fem::GalerkinDRE> problems;
  std::map<int, CholeskyFactor> mass_factors;
  std::map<int, InjectionOperator> injections;
  std::map<int, int> self_ref_nt;
  auto ensure_grid = [&](int nx) {
    if (problems.count(nx)) return;
    problems.emplace(nx, fem::BuildProblem(nx, xi, zeta, config.lambda, config.horizon));
    mass_factors.emplace(nx, Cholesky(problems.at(nx).mass));
    injections.emplace(nx, BuildInjection(nx, ref_nx));
  };
  ensure_grid(ref_nx);
  for (const auto& [nx, nt] : runs) {
    ensure_grid(nx);
    self_ref_nt[nx] = std::max(self_ref_nt[nx], nt);
  }
  self_ref_nt[ref_nx] = std::max(self_ref_nt[ref_nx], ref_nt);

  std::map<RunKey, std::unique_ptr<solver::LieStepper>> steppers;
  auto ensure_stepper = [&](RunKey key) {
    if (!steppers.count(key)) {
      steppers.emplace(key, std::make_unique<solver::LieStepper>(problems.at(key.first), key.second));
    }
  };
  const RunKey ref_key{ref_nx, ref_nt};
  ensure_stepper(ref_key);
  for (const auto& run : runs) {
    ensure_stepper(run);
    ensure_stepper({run.first, self_ref_nt.at(run.first)});
  }

  std::map<RunKey, RelativeSupError> errors, self_errors;
  if (observer) {
    for (const auto& [key, st] : steppers) observer(key.first, key.second, 0, st->state());
  }

  for (int m = 1; m <= ref_nt; ++m) {
    for (auto& [key, st] : steppers) {
      if (m % (ref_nt / key.second) != 0) continue;
      st->Advance();
      if (observer) observer(key.first, key.second, st->step(), st->state());
    }

    const solver::LieStepper& ref = *steppers.at(ref_key);
    std::optional<double> ref_norm;
    for (const auto& run : runs) {
      if (m % (ref_nt / run.second) != 0) continue;
      const solver::LieStepper& st = *steppers.at(run);
      if (!ref_norm) ref_norm = OperatorNormL2(ref.state(), mass_factors.at(ref_nx));

      double diff = 0;
      if (run != ref_key) {
        const SymmetricKernel d = ExtendKernel(st.state(), injections.at(run.first)) - ref.state();
        diff = OperatorNormL2(d, mass_factors.at(ref_nx));
      }
      errors[run].Add(diff, *ref_norm);

      const RunKey self_key{run.first, self_ref_nt.at(run.first)};
      const solver::LieStepper& self = *steppers.at(self_key);
      const CholeskyFactor& factor = mass_factors.at(run.first);
      const double self_diff =
          run == self_key ? 0.0 : OperatorNormL2(st.state() - self.state(), factor);
      self_errors[run].Add(self_diff, OperatorNormL2(self.state(), factor));
    }
  }

  for (const auto& [nx, nt] : runs) {
    StudyEntry e;
    e.nx = nx;
    e.nt = nt;
    e.h = 1.0 / nx;
    e.tau = config.horizon / nt;
    e.err = errors.at({nx, nt}).value();
    if (nt != self_ref_nt.at(nx)) e.self_err = self_errors.at({nx, nt}).value();
    report.entries.push_back(e);
  }

  // Temporal orders per nx from the self errors (ratio 2 per halving expected).
  for (const auto& [nx, nt_self] : self_ref_nt) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& e : report.entries) {
      if (e.nx == nx && e.self_err) pairs.emplace_back(e.tau, *e.self_err);
    }
    if (pairs.size() < 2) continue;
    OrderFit fit{"nx=" + std::to_string(nx), {}, 0};
    fit.order = FitOrder(pairs, 1.5, fit.points_used);
    report.temporal_orders.push_back(fit);
  }

  // Spatial orders (ratio 4 per halving expected).
  if (config.coupling == Coupling::kTauEqualsHSquared) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& e : report.entries) pairs.emplace_back(e.h, e.err);
    if (pairs.size() >= 2) {
      OrderFit fit{"tau=h^2", {}, 0};
      fit.order = FitOrder(pairs, 2.0, fit.points_used);
      report.spatial_orders.push_back(fit);
    }
  } else {
    for (int nt : config.nt_ladder) {
      std::vector<std::pair<double, double>> pairs;
      for (const auto& e : report.entries) {
        if (e.nt == nt) pairs.emplace_back(e.h, e.err);
      }
      if (pairs.size() < 2) continue;
      OrderFit fit{"nt=" + std::to_string(nt), {}, 0};
      fit.order = FitOrder(pairs, 2.0, fit.points_used);
      report.spatial_orders.push_back(fit);
    }
  }

  // Plateau: change between the two finest time steps on each grid.
  for (const auto& [nx, nt_self] : self_ref_nt) {
    std::vector<const StudyEntry*> at_nx;
    for (const auto& e : report.entries) {
      if (e.nx == nx) at_nx.push_back(&e);
    }
    if (at_nx.size() < 2) continue;
    const StudyEntry& finest = *at_nx[at_nx.size() - 1];
    const StudyEntry& second = *at_nx[at_nx.size() - 2];
    const double scale = std::max(finest.err, second.err);
    report.plateaus.push_back({nx, second.err, finest.err,
                               scale > 0 ? std::abs(second.err - finest.err) / scale : 0.0});
  }
  return report;
}

}  // namespace dresplit::lab
