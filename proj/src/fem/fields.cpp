#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dresplit/fem.hpp"

namespace dresplit::fem {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
// Concentration of the periodic bump.
constexpr double kBumpKappa = 4.0;

}  // namespace

std::vector<std::string> FieldNames() {
  return {"default-xi", "default-zeta", "gaussian-bump", "constant"};
}

ScalarField MakeField(const std::string& name, double amplitude) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("MakeField: non-finite amplitude");
  const double amp = amplitude;
  ScalarField f{name, amplitude, {}, {}};

  if (name == "default-xi") {
    // (1 + cos 2πx)(1 + cos 2πy) / 2
    f.value = [amp](double x, double y) {
      return 0.5 * amp * (1 + std::cos(kTwoPi * x)) * (1 + std::cos(kTwoPi * y));
    };
    f.laplacian = [amp](double x, double y) {
      const double cx = std::cos(kTwoPi * x), cy = std::cos(kTwoPi * y);
      const double k2 = kTwoPi * kTwoPi;
      return 0.5 * amp * (-k2 * cx * (1 + cy) - k2 * cy * (1 + cx));
    };
  } else if (name == "default-zeta") {
    // sin 2πx · sin 2πy + 1
    f.value = [amp](double x, double y) {
      return amp * (std::sin(kTwoPi * x) * std::sin(kTwoPi * y) + 1);
    };
    f.laplacian = [amp](double x, double y) {
      return -2 * kTwoPi * kTwoPi * amp * std::sin(kTwoPi * x) * std::sin(kTwoPi * y);
    };
  } else if (name == "gaussian-bump") {
    // Periodic (von Mises) bump centred at (1/2, 1/2), equal to 1 at the centre.
    auto g = [](double s) { return std::cos(kTwoPi * (s - 0.5)) - 1; };
    auto dg = [](double s) { return -kTwoPi * std::sin(kTwoPi * (s - 0.5)); };
    auto d2g = [](double s) { return -kTwoPi * kTwoPi * std::cos(kTwoPi * (s - 0.5)); };
    f.value = [amp, g](double x, double y) { return amp * std::exp(kBumpKappa * (g(x) + g(y))); };
    f.laplacian = [amp, g, dg, d2g](double x, double y) {
      const double v = amp * std::exp(kBumpKappa * (g(x) + g(y)));
      const double k = kBumpKappa;
      return v * (k * k * dg(x) * dg(x) + k * d2g(x) + k * k * dg(y) * dg(y) + k * d2g(y));
    };
  } else if (name == "constant") {
    f.value = [amp](double, double) { return amp; };
    f.laplacian = [](double, double) { return 0.0; };
  } else {
    throw std::invalid_argument("unknown field '" + name + "'");
  }
  return f;
}

}  // namespace dresplit::fem
