#pragma once

// P1 finite elements on the periodic unit square and assembly of the
// Galerkin Riccati problem in kernel coordinates.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dresplit/linalg.hpp"

namespace dresplit::fem {

struct Point {
  double x = 0;
  double y = 0;
};

struct Triangle {
  std::array<int, 3> nodes;
  /// Unwrapped vertex coordinates in [0, 1]², counter-clockwise.
  std::array<Point, 3> corners;

  double Area() const;
};

/// Uniform triangulation of [0,1)² into nx² squares, each cut
/// along its (0,0)–(1,1) diagonal, with periodic node identification.
class PeriodicMesh {
 public:
  int nx() const { return nx_; }
  double h() const { return 1.0 / nx_; }
  int num_nodes() const { return nx_ * nx_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  int NodeIndex(int i, int j) const;
  Point NodeCoordinates(int node) const;

 private:
  friend PeriodicMesh BuildMesh(int nx);
  int nx_ = 0;
  std::vector<Triangle> triangles_;
};

/// nx ≥ 2 and even; throws std::invalid_argument otherwise.
PeriodicMesh BuildMesh(int nx);

/// A scalar field on the periodic unit square with its analytic Laplacian.
struct ScalarField {
  std::string name;
  double amplitude = 1.0;
  std::function<double(double, double)> value;
  std::function<double(double, double)> laplacian;
};

/// Built-in catalog: "default-xi", "default-zeta", "gaussian-bump", "constant".
/// Throws std::invalid_argument for unknown names.
ScalarField MakeField(const std::string& name, double amplitude = 1.0);
std::vector<std::string> FieldNames();

/// M_ij = ∫ φ_i φ_j
SymmetricKernel AssembleMass(const PeriodicMesh& mesh);

/// 𝐀_ij = −∫ ∇φ_i·∇φ_j
SymmetricKernel AssembleStiffness(const PeriodicMesh& mesh);

/// ℓ_j = ∫ f φ_j with the 6-point degree-4 triangle rule.
Vector AssembleLoad(const PeriodicMesh& mesh, const std::function<double(double, double)>& f);

/// ℓ_j = ∫_{(1/2,1)×(0,1)} φ_j, exact.
Vector AssembleHalfDomain(const PeriodicMesh& mesh);

/// The Galerkin DRE in kernel coordinates. A kernel P represents the
/// operator with coefficient action c ↦ P·M·c; the kernel ODE is
///   Ṗ = ÂP + PÂᵀ + qqᵀ − P·ℓℓᵀ·P,  Â = M⁻¹𝐀,  P(0) = zzᵀ.
/// `shift` is the stabilizing λ used by the transformed stepper and the
/// regularized initial value; it does not alter the physical equation.
struct GalerkinDRE {
  int nx = 0;  ///< 0 for problems not built on a mesh
  SymmetricKernel mass;
  SymmetricKernel stiffness;
  Vector ell_xi;
  Vector q_vec;
  Vector z_vec;
  double shift = 0;
  double horizon = 1;
  /// M⁻¹𝐀, dense.
  DenseMatrix generator;

  Index dim() const { return mass.dim(); }
  /// M⁻¹𝐀 − shift·I
  DenseMatrix ShiftedGenerator() const;
  SymmetricKernel InitialKernel() const { return SymmetricKernel::Outer(z_vec); }
  SymmetricKernel OutputKernel() const { return SymmetricKernel::Outer(q_vec); }
  SymmetricKernel ControlKernel() const { return SymmetricKernel::Outer(ell_xi); }
};

/// Validates and assembles a problem from raw matrices (used for scalar and
/// synthetic problems). Computes the generator M⁻¹𝐀.
GalerkinDRE MakeProblem(const SymmetricKernel& mass, const SymmetricKernel& stiffness,
                        const Vector& ell_xi, const Vector& q_vec, const Vector& z_vec,
                        double shift, double horizon, int nx = 0);

/// The controlled periodic heat equation: observation of the mean over the
/// right half of the square, control profile ξ, initial factor ζ.
GalerkinDRE BuildProblem(int nx, const ScalarField& xi, const ScalarField& zeta,
                         double lambda_shift, double horizon);

}  // namespace dresplit::fem
