#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "scenecloud/errors.hpp"
#include "scenecloud/term_matrix.hpp"

namespace scenecloud {

// Relative frequencies f_ij = k(i,j)/k with row masses f_i and column
// masses f_j.  All masses are strictly positive.
struct FrequencyTable {
  Eigen::MatrixXd f;         // n x m
  Eigen::VectorXd row_mass;  // f_i
  Eigen::VectorXd col_mass;  // f_j
  double grand_total = 0.0;  // k
  std::vector<int> row_labels;
  std::vector<std::string> col_labels;

  Eigen::Index rows() const { return f.rows(); }
  Eigen::Index cols() const { return f.cols(); }
};

inline FrequencyTable to_frequencies(const TermMatrix& m) {
  FrequencyTable ft;
  ft.row_labels = m.row_labels;
  ft.col_labels = m.col_labels;
  const auto n = static_cast<Eigen::Index>(m.rows());
  const auto p = static_cast<Eigen::Index>(m.cols());
  ft.grand_total = static_cast<double>(m.total());
  ft.f.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      ft.f(i, j) = static_cast<double>(m.at(i, j)) / ft.grand_total;
  ft.row_mass = ft.f.rowwise().sum();
  ft.col_mass = ft.f.colwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(ft.row_mass(i) > 0.0)) throw ZeroMarginal("row " + std::to_string(i + 1) + " has zero mass");
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!(ft.col_mass(j) > 0.0))
      throw ZeroMarginal("column \"" + ft.col_labels[j] + "\" has zero mass");
  }
  return ft;
}

// chi-squared distance between row profiles i and i2, weights 1/f_j,
// center at the column marginal.
inline double chi2_distance(const FrequencyTable& ft, Eigen::Index i, Eigen::Index i2) {
  double d2 = 0.0;
  for (Eigen::Index j = 0; j < ft.cols(); ++j) {
    double diff = ft.f(i, j) / ft.row_mass(i) - ft.f(i2, j) / ft.row_mass(i2);
    d2 += diff * diff / ft.col_mass(j);
  }
  return std::sqrt(d2);
}

// Total inertia: sum of (f_ij - f_i f_j)^2 / (f_i f_j), the chi-squared
// statistic of the table divided by the grand total.
inline double total_inertia(const FrequencyTable& ft) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ft.rows(); ++i) {
    for (Eigen::Index j = 0; j < ft.cols(); ++j) {
      double e = ft.row_mass(i) * ft.col_mass(j);
      double r = ft.f(i, j) - e;
      s += r * r / e;
    }
  }
  return s;
}

// Correspondence Analysis result: eigenvalues in decreasing order and the
// dual factor coordinates.  Row i and column j live in the same Euclidean
// space; squared distances between row points reproduce the chi-squared
// row distances.
struct CaModel {
  Eigen::VectorXd eigenvalues;     // lambda_alpha, descending
  Eigen::MatrixXd row_coords;      // n x N, F_alpha(i)
  Eigen::MatrixXd col_coords;      // m x N, G_alpha(j)
  Eigen::VectorXd row_mass;
  Eigen::VectorXd col_mass;
  double total_inertia = 0.0;
  Eigen::VectorXd percent_inertia;  // per-factor share of retained inertia
  std::vector<int> row_labels;
  std::vector<std::string> col_labels;

  Eigen::Index factor_count() const { return eigenvalues.size(); }
};

namespace detail {

// Eigenvalues at or below this are numerical zeros regardless of scale;
// they arise when the table is (near) rank one and the whole spectrum is
// rounding noise.
inline constexpr double kAbsEigenvalueFloor = 1e-25;
inline constexpr double kRelEigenvalueEps = 1e-12;

}  // namespace detail

// Fits the CA decomposition.  The standardized residual matrix
// s_ij = (f_ij - f_i f_j) / sqrt(f_i f_j) is eigen-decomposed on the
// smaller of the two sets; the other side's coordinates follow from the
// transition formulas.  Factors below 1e-12 of the leading eigenvalue are
// truncated, and at most min(n-1, m-1) factors are retained.  Each
// factor's sign is fixed so that its largest-magnitude row coordinate is
// positive.
inline CaModel fit_ca(const FrequencyTable& ft) {
  const Eigen::Index n = ft.rows();
  const Eigen::Index m = ft.cols();
  if (n < 2 || m < 2) {
    throw DegenerateMatrix("CA requires a table of at least 2x2, got " + std::to_string(n) +
                           "x" + std::to_string(m));
  }

  Eigen::VectorXd sqrt_r = ft.row_mass.cwiseSqrt();
  Eigen::VectorXd sqrt_c = ft.col_mass.cwiseSqrt();
  Eigen::MatrixXd s(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      s(i, j) = (ft.f(i, j) - ft.row_mass(i) * ft.col_mass(j)) / (sqrt_r(i) * sqrt_c(j));

  CaModel model;
  model.row_mass = ft.row_mass;
  model.col_mass = ft.col_mass;
  model.row_labels = ft.row_labels;
  model.col_labels = ft.col_labels;
  model.total_inertia = s.squaredNorm();

  const bool rows_smaller = n <= m;
  Eigen::MatrixXd gram = rows_smaller ? Eigen::MatrixXd(s * s.transpose())
                                      : Eigen::MatrixXd(s.transpose() * s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw DecompositionFailure("eigendecomposition did not converge on the " +
                               std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) +
                               " inertia matrix");
  }

  // Eigen returns ascending order; walk from the back.
  const Eigen::Index avail = gram.rows();
  const Eigen::Index cap = std::min(n - 1, m - 1);
  const double lambda1 = solver.eigenvalues()(avail - 1);
  Eigen::Index kept = 0;
  for (Eigen::Index a = 0; a < std::min(avail, cap); ++a) {
    double lambda = solver.eigenvalues()(avail - 1 - a);
    if (lambda <= detail::kAbsEigenvalueFloor) break;
    if (lambda < detail::kRelEigenvalueEps * lambda1) break;
    ++kept;
  }

  model.eigenvalues.resize(kept);
  Eigen::MatrixXd vectors(avail, kept);
  for (Eigen::Index a = 0; a < kept; ++a) {
    model.eigenvalues(a) = solver.eigenvalues()(avail - 1 - a);
    vectors.col(a) = solver.eigenvectors().col(avail - 1 - a);
  }
  Eigen::VectorXd sqrt_lambda = model.eigenvalues.cwiseSqrt();

  if (rows_smaller) {
    // F_alpha(i) = u_i_alpha * sqrt(lambda_alpha) / sqrt(f_i)
    model.row_coords = sqrt_r.cwiseInverse().asDiagonal() * vectors * sqrt_lambda.asDiagonal();
    // G from the transition formula: G = diag(1/f_j) f^T F diag(lambda^-1/2)
    model.col_coords = ft.col_mass.cwiseInverse().asDiagonal() * ft.f.transpose() *
                       model.row_coords * sqrt_lambda.cwiseInverse().asDiagonal();
  } else {
    model.col_coords = sqrt_c.cwiseInverse().asDiagonal() * vectors * sqrt_lambda.asDiagonal();
    model.row_coords = ft.row_mass.cwiseInverse().asDiagonal() * ft.f * model.col_coords *
                       sqrt_lambda.cwiseInverse().asDiagonal();
  }

  // Deterministic sign: largest-magnitude row coordinate positive per factor.
  for (Eigen::Index a = 0; a < kept; ++a) {
    Eigen::Index imax = 0;
    model.row_coords.col(a).cwiseAbs().maxCoeff(&imax);
    if (model.row_coords(imax, a) < 0.0) {
      model.row_coords.col(a) = -model.row_coords.col(a);
      model.col_coords.col(a) = -model.col_coords.col(a);
    }
  }

  model.percent_inertia.resize(kept);
  if (kept > 0) {
    double sum = model.eigenvalues.sum();
    model.percent_inertia = model.eigenvalues * (100.0 / sum);
  }
  return model;
}

// Euclidean distance between two row points across all retained factors;
// identical to the chi-squared distance between the same rows.
inline double factor_distance(const CaModel& model, Eigen::Index i, Eigen::Index i2) {
  return (model.row_coords.row(i) - model.row_coords.row(i2)).norm();
}

// Full-dimensional Euclidean distance between row point i and column
// point j in the shared factor space.
inline double row_word_distance(const CaModel& model, Eigen::Index i, Eigen::Index j) {
  return (model.row_coords.row(i) - model.col_coords.row(j)).norm();
}

// Largest absolute residual of the transition formulas in both
// directions: F from the column coordinates and G from the row
// coordinates.
inline double transition_check(const CaModel& model, const FrequencyTable& ft) {
  if (model.factor_count() == 0) return 0.0;
  Eigen::VectorXd inv_sqrt_lambda = model.eigenvalues.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd row_profiles = ft.row_mass.cwiseInverse().asDiagonal() * ft.f;
  Eigen::MatrixXd col_profiles = ft.col_mass.cwiseInverse().asDiagonal() * ft.f.transpose();
  Eigen::MatrixXd f_hat = row_profiles * model.col_coords * inv_sqrt_lambda.asDiagonal();
  Eigen::MatrixXd g_hat = col_profiles * model.row_coords * inv_sqrt_lambda.asDiagonal();
  double rf = (model.row_coords - f_hat).cwiseAbs().maxCoeff();
  double rg = (model.col_coords - g_hat).cwiseAbs().maxCoeff();
  return std::max(rf, rg);
}

}  // namespace scenecloud
