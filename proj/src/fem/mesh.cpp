#include <stdexcept>
#include <string>

#include "dresplit/fem.hpp"

namespace dresplit::fem {

double Triangle::Area() const {
  const auto& [a, b, c] = corners;
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

int PeriodicMesh::NodeIndex(int i, int j) const {
  i = ((i % nx_) + nx_) % nx_;
  j = ((j % nx_) + nx_) % nx_;
  return i + nx_ * j;
}

Point PeriodicMesh::NodeCoordinates(int node) const {
  return {static_cast<double>(node % nx_) / nx_, static_cast<double>(node / nx_) / nx_};
}

PeriodicMesh BuildMesh(int nx) {
  if (nx < 2 || nx % 2 != 0) {
    throw std::invalid_argument("BuildMesh: nx must be even and >= 2, got " + std::to_string(nx));
  }
  PeriodicMesh mesh;
  mesh.nx_ = nx;
  mesh.triangles_.reserve(2 * static_cast<std::size_t>(nx) * nx);
  const double h = 1.0 / nx;
  for (int j = 0; j < nx; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point p00{i * h, j * h}, p10{(i + 1) * h, j * h};
      const Point p11{(i + 1) * h, (j + 1) * h}, p01{i * h, (j + 1) * h};
      const int n00 = mesh.NodeIndex(i, j), n10 = mesh.NodeIndex(i + 1, j);
      const int n11 = mesh.NodeIndex(i + 1, j + 1), n01 = mesh.NodeIndex(i, j + 1);
      mesh.triangles_.push_back({{n00, n10, n11}, {p00, p10, p11}});
      mesh.triangles_.push_back({{n00, n11, n01}, {p00, p11, p01}});
    }
  }
  return mesh;
}

}  // namespace dresplit::fem
