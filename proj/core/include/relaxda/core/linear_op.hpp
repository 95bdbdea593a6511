#pragma once

#include <memory>
#include <vector>

#include "relaxda/core/types.hpp"

namespace relaxda {

/// A linear map R^d -> R^d exposed through a fused scale-and-accumulate so
/// that sparse operators never materialize full vectors in the rhs loop.
class LinearOp {
 public:
  virtual ~LinearOp() = default;

  virtual int dim() const = 0;

  /// out += coeff * (L u)
  virtual void add_apply(double coeff, const Vec& u, Vec& out) const = 0;

  Vec apply(const Vec& u) const {
    Vec out = Vec::Zero(u.size());
    add_apply(1.0, u, out);
    return out;
  }

  /// Dense matrix built by probing unit vectors; overridden when cheaper.
  virtual Mat dense() const;
};

/// Single nonzero entry `scale` at (index, index). The L96 damping slots use
/// scale = -1 so the estimated coefficient equals the positive damping value.
class ElementaryDiagonalOp final : public LinearOp {
 public:
  ElementaryDiagonalOp(int dim, int index, double scale);
  int dim() const override { return dim_; }
  int index() const { return index_; }
  void add_apply(double coeff, const Vec& u, Vec& out) const override;
  Mat dense() const override;

 private:
  int dim_;
  int index_;
  double scale_;
};

class DiagonalOp final : public LinearOp {
 public:
  explicit DiagonalOp(Vec diag);
  int dim() const override { return static_cast<int>(diag_.size()); }
  void add_apply(double coeff, const Vec& u, Vec& out) const override;
  Mat dense() const override { return diag_.asDiagonal(); }

 private:
  Vec diag_;
};

class DenseOp final : public LinearOp {
 public:
  explicit DenseOp(Mat m);
  int dim() const override { return static_cast<int>(m_.rows()); }
  void add_apply(double coeff, const Vec& u, Vec& out) const override;
  Mat dense() const override { return m_; }

 private:
  Mat m_;
};

using LinearOpPtr = std::shared_ptr<const LinearOp>;

}  // namespace relaxda
