#include <stdexcept>

#include "dresplit/linalg.hpp"

namespace dresplit {

SymmetricKernel::SymmetricKernel(Index dim) : m_(DenseMatrix::Zero(dim, dim)) {
  if (dim < 1) throw std::invalid_argument("SymmetricKernel: dimension must be >= 1");
}

SymmetricKernel SymmetricKernel::FromMatrix(const Eigen::Ref<const DenseMatrix>& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw std::invalid_argument("SymmetricKernel: matrix must be square and non-empty");
  }
  SymmetricKernel k;
  k.m_ = 0.5 * (a + a.transpose());
  return k;
}

SymmetricKernel SymmetricKernel::Outer(const Eigen::Ref<const Vector>& v) {
  if (v.size() < 1) throw std::invalid_argument("SymmetricKernel: empty vector");
  SymmetricKernel k;
  k.m_ = v * v.transpose();
  return k;
}

SymmetricKernel SymmetricKernel::Identity(Index dim) {
  SymmetricKernel k(dim);
  k.m_.setIdentity();
  return k;
}

SymmetricKernel SymmetricKernel::operator+(const SymmetricKernel& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("SymmetricKernel: dimension mismatch");
  SymmetricKernel k;
  k.m_ = m_ + other.m_;
  return k;
}

SymmetricKernel SymmetricKernel::operator-(const SymmetricKernel& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("SymmetricKernel: dimension mismatch");
  SymmetricKernel k;
  k.m_ = m_ - other.m_;
  return k;
}

SymmetricKernel SymmetricKernel::operator*(double c) const {
  SymmetricKernel k;
  k.m_ = c * m_;
  return k;
}

double SymmetricKernel::SymmetryDefect() const {
  return (m_ - m_.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace dresplit
