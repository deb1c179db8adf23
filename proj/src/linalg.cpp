#include "spraymet/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "spraymet/errors.hpp"

namespace spraymet {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<double>& m, int rows, int cols) {
  if (static_cast<int>(m.size()) != rows * cols) throw Error("matrix size mismatch");
  Eigen::MatrixXd e(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) e(r, c) = m[static_cast<std::size_t>(r * cols + c)];
  }
  return e;
}

}  // namespace

RankInfo svd_rank(const std::vector<double>& m, int rows, int cols, double rtol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m, rows, cols));
  RankInfo info;
  const auto& sv = svd.singularValues();
  info.singular_values.assign(sv.data(), sv.data() + sv.size());
  info.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  if (info.sigma_max > 0.0) {
    double cutoff = rtol * info.sigma_max;
    for (double s : info.singular_values) {
      if (s > cutoff) ++info.rank;
    }
  }
  return info;
}

double determinant(const std::vector<double>& m, int nn) {
  return to_eigen(m, nn, nn).determinant();
}

}  // namespace spraymet
