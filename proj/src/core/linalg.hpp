#pragma once

#include <Eigen/Dense>

namespace lsilab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kE = 2.71828182845904523536;
inline constexpr double kTwoPiE = 2.0 * kPi * kE;

// Eigenvalue floor for covariance matrices.
inline constexpr double kEpsDet = 1e-10;
// Values below this are clamped inside logarithms only.
inline constexpr double kEpsFloor = 1e-300;

// x log x with the 0 log 0 = 0 convention.
double xlogx(double x) noexcept;
// log(max(x, kEpsFloor)).
double safe_log(double x) noexcept;

bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);
Matrix symmetrize(const Matrix& m);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns
};

SymmetricEigen eigen_symmetric(const Matrix& m);

// Matrix functions of a symmetric positive-definite matrix through its
// spectrum. Eigenvalues are floored at kEpsDet.
Matrix sqrt_spd(const Matrix& m);
Matrix inv_sqrt_spd(const Matrix& m);

double log_det_spd(const Matrix& m);

// Largest deviation from symmetric PSD: max(asymmetry, -min eigenvalue).
double psd_defect(const Matrix& m);

}  // namespace lsilab
