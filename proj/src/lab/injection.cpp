#include <stdexcept>
#include <string>

#include "dresplit/lab.hpp"

namespace dresplit::lab {

InjectionOperator BuildInjection(int coarse_nx, int fine_nx) {
  if (coarse_nx < 1 || fine_nx < coarse_nx || fine_nx % coarse_nx != 0 ||
      ((fine_nx / coarse_nx) & (fine_nx / coarse_nx - 1)) != 0) {
    throw std::invalid_argument("BuildInjection: grids are not nested (coarse nx = " +
                                std::to_string(coarse_nx) + ", fine nx = " +
                                std::to_string(fine_nx) + ")");
  }
  const fem::PeriodicMesh coarse = fem::BuildMesh(coarse_nx);
  const int ratio = fine_nx / coarse_nx;

  InjectionOperator inj{coarse_nx, fine_nx,
                        DenseMatrix::Zero(static_cast<Index>(fine_nx) * fine_nx,
                                          static_cast<Index>(coarse_nx) * coarse_nx)};
  for (int jf = 0; jf < fine_nx; ++jf) {
    for (int if_ = 0; if_ < fine_nx; ++if_) {
      const int row = if_ + fine_nx * jf;
      const int i0 = if_ / ratio, j0 = jf / ratio;
      const double s = static_cast<double>(if_ % ratio) / ratio;
      const double t = static_cast<double>(jf % ratio) / ratio;
      // Barycentric weights in the coarse square's two triangles, split
      // along the (0,0)–(1,1) diagonal as in the mesh.
      auto add = [&](int di, int dj, double w) {
        if (w != 0) inj.J(row, coarse.NodeIndex(i0 + di, j0 + dj)) += w;
      };
      if (s >= t) {
        add(0, 0, 1 - s);
        add(1, 0, s - t);
        add(1, 1, t);
      } else {
        add(0, 0, 1 - t);
        add(1, 1, s);
        add(0, 1, t - s);
      }
    }
  }
  return inj;
}

SymmetricKernel ExtendKernel(const SymmetricKernel& p, const InjectionOperator& inj) {
  if (p.dim() != inj.J.cols()) throw std::invalid_argument("ExtendKernel: dimension mismatch");
  if (inj.coarse_nx == inj.fine_nx) return p;
  const DenseMatrix jp = inj.J * p.matrix();
  DenseMatrix out(inj.J.rows(), inj.J.rows());
  out.noalias() = jp * inj.J.transpose();
  return SymmetricKernel::FromMatrix(out);
}

}  // namespace dresplit::lab
