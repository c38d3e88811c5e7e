#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCore>

#include "dresplit/fem.hpp"

namespace dresplit::fem {
namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SymmetricKernel ToKernel(int n, const Triplets& triplets) {
  Eigen::SparseMatrix<double> sparse(n, n);
  sparse.setFromTriplets(triplets.begin(), triplets.end());
  return SymmetricKernel::FromMatrix(DenseMatrix(sparse));
}

// Symmetric 6-point rule, exact for polynomials of degree 4 (Dunavant).
struct QuadPoint {
  std::array<double, 3> bary;
  double weight;
};

constexpr double kA1 = 0.445948490915965, kB1 = 0.108103018168070, kW1 = 0.223381589678011;
constexpr double kA2 = 0.091576213509771, kB2 = 0.816847572980459, kW2 = 0.109951743655322;
constexpr std::array<QuadPoint, 6> kRule = {{
    {{kA1, kA1, kB1}, kW1},
    {{kA1, kB1, kA1}, kW1},
    {{kB1, kA1, kA1}, kW1},
    {{kA2, kA2, kB2}, kW2},
    {{kA2, kB2, kA2}, kW2},
    {{kB2, kA2, kA2}, kW2},
}};

}  // namespace

SymmetricKernel AssembleMass(const PeriodicMesh& mesh) {
  Triplets triplets;
  triplets.reserve(9 * mesh.triangles().size());
  for (const Triangle& tri : mesh.triangles()) {
    const double area = tri.Area();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        triplets.emplace_back(tri.nodes[a], tri.nodes[b], area / 12.0 * (a == b ? 2.0 : 1.0));
      }
    }
  }
  return ToKernel(mesh.num_nodes(), triplets);
}

SymmetricKernel AssembleStiffness(const PeriodicMesh& mesh) {
  Triplets triplets;
  triplets.reserve(9 * mesh.triangles().size());
  for (const Triangle& tri : mesh.triangles()) {
    const double area = tri.Area();
    const auto& p = tri.corners;
    // ∇λ_a = (y_{a+1} − y_{a+2}, x_{a+2} − x_{a+1}) / (2·area)
    std::array<Point, 3> grad;
    for (int a = 0; a < 3; ++a) {
      const Point& p1 = p[(a + 1) % 3];
      const Point& p2 = p[(a + 2) % 3];
      grad[a] = {(p1.y - p2.y) / (2 * area), (p2.x - p1.x) / (2 * area)};
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double dot = grad[a].x * grad[b].x + grad[a].y * grad[b].y;
        triplets.emplace_back(tri.nodes[a], tri.nodes[b], -area * dot);
      }
    }
  }
  return ToKernel(mesh.num_nodes(), triplets);
}

Vector AssembleLoad(const PeriodicMesh& mesh, const std::function<double(double, double)>& f) {
  Vector load = Vector::Zero(mesh.num_nodes());
  for (const Triangle& tri : mesh.triangles()) {
    const double area = tri.Area();
    for (const QuadPoint& qp : kRule) {
      double x = 0, y = 0;
      for (int a = 0; a < 3; ++a) {
        x += qp.bary[a] * tri.corners[a].x;
        y += qp.bary[a] * tri.corners[a].y;
      }
      const double fv = f(x, y);
      if (!std::isfinite(fv)) throw std::domain_error("AssembleLoad: non-finite field value");
      for (int a = 0; a < 3; ++a) load(tri.nodes[a]) += area * qp.weight * fv * qp.bary[a];
    }
  }
  return load;
}

Vector AssembleHalfDomain(const PeriodicMesh& mesh) {
  if (mesh.nx() % 2 != 0) throw std::invalid_argument("AssembleHalfDomain: nx must be even");
  Vector load = Vector::Zero(mesh.num_nodes());
  for (const Triangle& tri : mesh.triangles()) {
    const double cx = (tri.corners[0].x + tri.corners[1].x + tri.corners[2].x) / 3;
    if (cx <= 0.5) continue;
    // ∫_T λ_a = area / 3
    for (int a = 0; a < 3; ++a) load(tri.nodes[a]) += tri.Area() / 3;
  }
  return load;
}

}  // namespace dresplit::fem
