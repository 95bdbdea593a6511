#include "relaxda/core/linear_op.hpp"

namespace relaxda {

Mat LinearOp::dense() const {
  const int d = dim();
  Mat m = Mat::Zero(d, d);
  Vec e = Vec::Zero(d);
  Vec col = Vec::Zero(d);
  for (int j = 0; j < d; ++j) {
    e[j] = 1.0;
    col.setZero();
    add_apply(1.0, e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

ElementaryDiagonalOp::ElementaryDiagonalOp(int dim, int index, double scale)
    : dim_(dim), index_(index), scale_(scale) {
  require(dim >= 1, "ElementaryDiagonalOp: dim must be >= 1");
  require(index >= 0 && index < dim,
          "ElementaryDiagonalOp: index out of range");
}

void ElementaryDiagonalOp::add_apply(double coeff, const Vec& u,
                                     Vec& out) const {
  out[index_] += coeff * scale_ * u[index_];
}

Mat ElementaryDiagonalOp::dense() const {
  Mat m = Mat::Zero(dim_, dim_);
  m(index_, index_) = scale_;
  return m;
}

DiagonalOp::DiagonalOp(Vec diag) : diag_(std::move(diag)) {
  require(diag_.size() >= 1, "DiagonalOp: empty diagonal");
}

void DiagonalOp::add_apply(double coeff, const Vec& u, Vec& out) const {
  out.noalias() += coeff * diag_.cwiseProduct(u);
}

DenseOp::DenseOp(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "DenseOp: matrix must be square");
}

void DenseOp::add_apply(double coeff, const Vec& u, Vec& out) const {
  out.noalias() += coeff * (m_ * u);
}

}  // namespace relaxda
