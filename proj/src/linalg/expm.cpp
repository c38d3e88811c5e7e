#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "dresplit/linalg.hpp"

namespace dresplit {
namespace {

// Largest 1-norms for which the degree-m Padé approximant reaches unit
// roundoff without scaling (Higham, SIAM J. Matrix Anal. Appl. 26, 2005).
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

// Numerator/denominator split p(A) = V + U, q(A) = V − U of the [m/m] Padé
// approximant, U odd and V even in A.
void PadeTerms(const DenseMatrix& a, int m, DenseMatrix& u, DenseMatrix& v) {
  const Index n = a.rows();
  const DenseMatrix eye = DenseMatrix::Identity(n, n);
  const DenseMatrix a2 = a * a;
  switch (m) {
    case 3: {
      constexpr double b[] = {120., 60., 12., 1.};
      u.noalias() = a * (b[3] * a2 + b[1] * eye);
      v = b[2] * a2 + b[0] * eye;
      return;
    }
    case 5: {
      constexpr double b[] = {30240., 15120., 3360., 420., 30., 1.};
      const DenseMatrix a4 = a2 * a2;
      u.noalias() = a * (b[5] * a4 + b[3] * a2 + b[1] * eye);
      v = b[4] * a4 + b[2] * a2 + b[0] * eye;
      return;
    }
    case 7: {
      constexpr double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
      const DenseMatrix a4 = a2 * a2;
      const DenseMatrix a6 = a4 * a2;
      u.noalias() = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye);
      v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
      return;
    }
    case 9: {
      constexpr double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                              2162160.,     110880.,     3960.,       90.,        1.};
      const DenseMatrix a4 = a2 * a2;
      const DenseMatrix a6 = a4 * a2;
      const DenseMatrix a8 = a6 * a2;
      u.noalias() = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye);
      v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
      return;
    }
    default: {
      constexpr double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                              1187353796428800.,  129060195264000.,   10559470521600.,
                              670442572800.,      33522128640.,       1323241920.,
                              40840800.,          960960.,            16380.,
                              182.,               1.};
      const DenseMatrix a4 = a2 * a2;
      const DenseMatrix a6 = a4 * a2;
      DenseMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
      u.noalias() = a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye);
      inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
      v.noalias() = a6 * inner;
      v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
      return;
    }
  }
}

}  // namespace

DenseMatrix Expm(const Eigen::Ref<const DenseMatrix>& a, double t) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw std::invalid_argument("Expm: matrix must be square and non-empty");
  }
  if (!std::isfinite(t) || !a.allFinite()) throw std::domain_error("Expm: non-finite input");

  DenseMatrix ta = t * a;
  const double norm1 = ta.cwiseAbs().colwise().sum().maxCoeff();
  constexpr int kDegrees[] = {3, 5, 7, 9};

  DenseMatrix u, v;
  int squarings = 0;
  int degree = 13;
  for (int i = 0; i < 4; ++i) {
    if (norm1 <= kTheta[i]) {
      degree = kDegrees[i];
      break;
    }
  }
  if (degree == 13 && norm1 > kTheta[4]) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4])));
    ta *= std::ldexp(1.0, -squarings);
  }
  PadeTerms(ta, degree, u, v);

  DenseMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  if (!result.allFinite()) throw std::domain_error("Expm: overflow");
  return result;
}

}  // namespace dresplit
