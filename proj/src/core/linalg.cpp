#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace lsilab {

double xlogx(double x) noexcept { return x <= 0.0 ? 0.0 : x * std::log(x); }

double safe_log(double x) noexcept { return std::log(std::max(x, kEpsFloor)); }

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

SymmetricEigen eigen_symmetric(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m));
  require(solver.info() == Eigen::Success, ErrorCode::SingularCovariance,
          "eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

template <typename Fn>
Matrix spectral_apply(const Matrix& m, Fn fn) {
  const auto eig = eigen_symmetric(m);
  Vector mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    mapped(i) = fn(std::max(eig.values(i), kEpsDet));
  return symmetrize(eig.vectors * mapped.asDiagonal() * eig.vectors.transpose());
}

}  // namespace

Matrix sqrt_spd(const Matrix& m) {
  return spectral_apply(m, [](double v) { return std::sqrt(v); });
}

Matrix inv_sqrt_spd(const Matrix& m) {
  return spectral_apply(m, [](double v) { return 1.0 / std::sqrt(v); });
}

double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(symmetrize(m));
  if (llt.info() == Eigen::Success) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }
  const auto eig = eigen_symmetric(m);
  require(eig.values.minCoeff() > 0.0, ErrorCode::SingularCovariance,
          "matrix is not positive definite");
  return eig.values.array().log().sum();
}

double psd_defect(const Matrix& m) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double min_eig = eigen_symmetric(m).values.minCoeff();
  return std::max(asym, -min_eig);
}

}  // namespace lsilab
