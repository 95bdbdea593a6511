#include "relaxda/estimators/rls.hpp"

#include <cmath>
#include <limits>

namespace relaxda {

RLSNormalSystem rls_assemble(const SystemModel& model,
                             const ObservationOperator& obs,
                             const Vec& u_tilde, const Vec& dobs_dt) {
  require(u_tilde.size() == model.dim, "rls_assemble: state dim mismatch");
  require(dobs_dt.size() == model.dim,
          "rls_assemble: derivative dim mismatch");
  const int p = model.param_count();

  RLSNormalSystem sys;
  sys.Lmat.resize(model.dim, p);
  Vec col(model.dim);
  for (int k = 0; k < p; ++k) {
    col.setZero();
    model.linear_ops[static_cast<std::size_t>(k)]->add_apply(1.0, u_tilde,
                                                             col);
    obs.project_in_place(col);
    sys.Lmat.col(k) = col;
  }

  Vec f_val(model.dim);
  model.nonlinearity(u_tilde, f_val);
  obs.project_in_place(f_val);
  sys.f = dobs_dt - f_val;

  sys.K = sys.Lmat.transpose() * sys.Lmat;

  Eigen::SelfAdjointEigenSolver<Mat> eig(sys.K);
  const Vec& ev = eig.eigenvalues();  // ascending
  const double lo = ev[0];
  const double hi = ev[p - 1];
  if (lo <= 0.0 || hi <= 0.0) {
    sys.cond_estimate = std::numeric_limits<double>::infinity();
  } else {
    sys.cond_estimate = std::sqrt(hi / lo);
  }
  return sys;
}

std::optional<Vec> rls_solve(const RLSNormalSystem& sys,
                             double cond_threshold) {
  require(cond_threshold >= 1.0, "rls_solve: cond_threshold must be >= 1");
  if (!(sys.cond_estimate <= cond_threshold)) return std::nullopt;
  Eigen::ColPivHouseholderQR<Mat> qr(sys.Lmat);
  Vec lambda = qr.solve(sys.f);
  return lambda;
}

}  // namespace relaxda
