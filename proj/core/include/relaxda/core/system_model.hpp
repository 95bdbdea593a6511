#pragma once

#include <functional>
#include <vector>

#include "relaxda/core/linear_op.hpp"
#include "relaxda/core/types.hpp"

namespace relaxda {

/// Parameter-linear decomposition du/dt = sum_k lambda_k L_k u + F(u).
/// Constant forcing is folded into the nonlinearity, which must be a pure
/// deterministic function of u.
struct SystemModel {
  int dim = 0;
  std::vector<LinearOpPtr> linear_ops;
  std::function<void(const Vec& u, Vec& out)> nonlinearity;

  int param_count() const { return static_cast<int>(linear_ops.size()); }
};

}  // namespace relaxda
