#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dresplit/cli.hpp"
#include "dresplit/oracles.hpp"

namespace dresplit::cli {
namespace {

using nlohmann::json;

std::string Sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

json ConfigJson(const RunConfig& c) {
  return {{"command", CommandName(c.command)},
          {"T", c.horizon},
          {"lambda", c.lambda},
          {"xi", c.xi_name},
          {"zeta", c.zeta_name},
          {"xi_amplitude", c.xi_amplitude},
          {"zeta_amplitude", c.zeta_amplitude}};
}

json FitJson(const lab::OrderFit& f) {
  return {{"label", f.label},
          {"order", f.order ? json(*f.order) : json(nullptr)},
          {"points_used", f.points_used}};
}

int RunSolve(const RunConfig& c, std::ostream& out) {
  const fem::GalerkinDRE problem =
      fem::BuildProblem(c.nx, fem::MakeField(c.xi_name, c.xi_amplitude),
                        fem::MakeField(c.zeta_name, c.zeta_amplitude), c.lambda, c.horizon);
  const CholeskyFactor mass_factor = Cholesky(problem.mass);
  const solver::Mode mode = c.lambda > 0 ? solver::Mode::kTransformed : solver::Mode::kDirect;
  solver::LieStepper stepper(problem, c.nt, mode);

  std::ostringstream csv;
  csv << "# n,t,norm,trace\n";
  double max_norm = 0, max_defect = 0;
  bool psd = true;
  auto record = [&] {
    const SymmetricKernel p = stepper.Physical();
    const double norm = lab::OperatorNormL2(p, mass_factor);
    const auto s = solver::CheckStructure(stepper.state());
    max_norm = std::max(max_norm, norm);
    max_defect = std::max(max_defect, s.symmetry_defect);
    psd = psd && s.psd;
    csv << stepper.step() << ',' << Sci(stepper.time()) << ',' << Sci(norm) << ','
        << Sci((p.matrix() * problem.mass.matrix()).trace()) << '\n';
    return norm;
  };
  record();
  double final_norm = 0;
  while (stepper.step() < c.nt) {
    stepper.Advance();
    final_norm = record();
  }

  json report = ConfigJson(c);
  report["nx"] = c.nx;
  report["nt"] = c.nt;
  report["mode"] = mode == solver::Mode::kTransformed ? "transformed" : "direct";
  report["final_norm"] = final_norm;
  report["max_norm"] = max_norm;
  report["max_symmetry_defect"] = max_defect;
  report["psd_every_step"] = psd;
  WriteFile(c.output_dir / "trajectory.csv", csv.str());
  WriteFile(c.output_dir / "report.json", report.dump(2) + "\n");
  out << "solve nx=" << c.nx << " nt=" << c.nt << ": ||P(T)|| = " << final_norm
      << ", max_n ||P_n|| = " << max_norm << (psd ? "" : " (PSD violated)") << "\n";
  return psd ? 0 : 1;
}

lab::StudyConfig ToStudy(const RunConfig& c) {
  lab::StudyConfig s;
  s.nx_ladder = c.nx_ladder;
  s.nt_ladder = c.nt_ladder;
  s.coupling = c.coupling;
  s.horizon = c.horizon;
  s.xi_name = c.xi_name;
  s.zeta_name = c.zeta_name;
  s.xi_amplitude = c.xi_amplitude;
  s.zeta_amplitude = c.zeta_amplitude;
  s.lambda = c.lambda;
  s.ref_nx = c.ref_nx;
  s.ref_nt = c.ref_nt;
  return s;
}

int RunConvergence(const RunConfig& c, std::ostream& out) {
  const lab::ConvergenceReport report = lab::RunStudy(ToStudy(c));

  json j = ConfigJson(c);
  j["nx_ladder"] = c.nx_ladder;
  j["nt_ladder"] = c.nt_ladder;
  j["coupling"] = c.coupling == lab::Coupling::kNone ? "none" : "tau-h2";
  j["reference"] = {{"nx", report.ref_nx}, {"nt", report.ref_nt}};
  j["entries"] = json::array();
  for (const auto& e : report.entries) {
    j["entries"].push_back({{"nx", e.nx},
                            {"h", e.h},
                            {"nt", e.nt},
                            {"tau", e.tau},
                            {"err", e.err},
                            {"self_err", e.self_err ? json(*e.self_err) : json(nullptr)}});
  }
  j["temporal_orders"] = json::array();
  for (const auto& f : report.temporal_orders) j["temporal_orders"].push_back(FitJson(f));
  j["spatial_orders"] = json::array();
  for (const auto& f : report.spatial_orders) j["spatial_orders"].push_back(FitJson(f));
  j["plateaus"] = json::array();
  for (const auto& p : report.plateaus) {
    j["plateaus"].push_back({{"nx", p.nx},
                             {"err_second_finest", p.err_second_finest},
                             {"err_finest", p.err_finest},
                             {"relative_change", p.relative_change}});
  }

  WriteFile(c.output_dir / "errors.csv", FormatErrorsCsv(report));
  WriteFile(c.output_dir / "report.json", j.dump(2) + "\n");
  const std::string orders = FormatOrders(report);
  WriteFile(c.output_dir / "orders.txt", orders);
  out << orders;
  return 0;
}

int RunOracleCheck(const RunConfig& c, std::ostream& out) {
  json j = ConfigJson(c);
  j["checks"] = json::array();
  bool all = true;
  for (const auto& check : oracles::RunOracleSuite()) {
    out << (check.passed() ? "PASS  " : "FAIL  ") << check.name
        << ": max deviation " << check.max_deviation << " (tol " << check.tolerance << ")\n";
    j["checks"].push_back({{"name", check.name},
                           {"max_deviation", check.max_deviation},
                           {"tolerance", check.tolerance},
                           {"passed", check.passed()}});
    all = all && check.passed();
  }
  WriteFile(c.output_dir / "report.json", j.dump(2) + "\n");
  return all ? 0 : 1;
}

int RunTransformCheck(const RunConfig& c, std::ostream& out) {
  const fem::GalerkinDRE problem =
      fem::BuildProblem(c.nx, fem::MakeField(c.xi_name, c.xi_amplitude),
                        fem::MakeField(c.zeta_name, c.zeta_amplitude), c.lambda, c.horizon);
  const CholeskyFactor mass_factor = Cholesky(problem.mass);

  std::vector<double> diffs;
  json j = ConfigJson(c);
  j["nx"] = c.nx;
  j["runs"] = json::array();
  for (int nt : {c.nt, 2 * c.nt, 4 * c.nt}) {
    const SymmetricKernel direct = solver::Solve(problem, nt).kernels.back();
    const solver::Trajectory transformed = solver::SolveTransformed(problem, nt);
    const SymmetricKernel back = transformed.Physical(nt);
    const double diff = lab::OperatorNormL2(back - direct, mass_factor) /
                        lab::OperatorNormL2(direct, mass_factor);
    diffs.push_back(diff);
    j["runs"].push_back({{"nt", nt}, {"relative_difference", diff}});
    out << "nt=" << nt << ": ||P_transformed(T) - P_direct(T)|| / ||P_direct(T)|| = " << diff << "\n";
  }
  j["ratios"] = {diffs[0] / diffs[1], diffs[1] / diffs[2]};
  out << "tau-halving ratios: " << diffs[0] / diffs[1] << ", " << diffs[1] / diffs[2]
      << " (first order: ~2)\n";
  WriteFile(c.output_dir / "report.json", j.dump(2) + "\n");
  return 0;
}

}  // namespace

std::string FormatErrorsCsv(const lab::ConvergenceReport& report) {
  std::ostringstream csv;
  csv << "# nx,h,nt,tau,err\n";
  for (const auto& e : report.entries) {
    csv << e.nx << ',' << Sci(e.h) << ',' << e.nt << ',' << Sci(e.tau) << ',' << Sci(e.err) << '\n';
  }
  return csv.str();
}

std::string FormatOrders(const lab::ConvergenceReport& report) {
  std::ostringstream os;
  os << "reference: nx = " << report.ref_nx << ", nt = " << report.ref_nt << "\n";
  auto line = [&os](const lab::OrderFit& f) {
    os << "  " << f.label << ": ";
    if (f.order) {
      os << std::fixed << std::setprecision(3) << *f.order << std::defaultfloat;
    } else {
      os << "n/a";
    }
    os << " (" << f.points_used << " points)\n";
  };
  os << "temporal orders (vs finest nt on the same grid):\n";
  for (const auto& f : report.temporal_orders) line(f);
  os << "spatial orders (vs reference):\n";
  for (const auto& f : report.spatial_orders) line(f);
  if (!report.plateaus.empty()) {
    os << "plateau (relative change across the two finest tau):\n";
    for (const auto& p : report.plateaus) {
      os << "  nx=" << p.nx << ": " << p.relative_change << "\n";
    }
  }
  return os.str();
}

int Run(const RunConfig& config, std::ostream& out) {
  std::filesystem::create_directories(config.output_dir);
  switch (config.command) {
    case Command::kSolve: return RunSolve(config, out);
    case Command::kConvergence: return RunConvergence(config, out);
    case Command::kOracleCheck: return RunOracleCheck(config, out);
    case Command::kTransformCheck: return RunTransformCheck(config, out);
  }
  return 2;
}

}  // namespace dresplit::cli
