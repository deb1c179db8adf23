#ifndef SPRAYMET_LINALG_HPP
#define SPRAYMET_LINALG_HPP

#include <vector>

namespace spraymet {

struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  std::vector<double> singular_values;
};

// Rank of a row-major rows x cols matrix: singular values above
// rtol * sigma_max count.
RankInfo svd_rank(const std::vector<double>& m, int rows, int cols, double rtol);

// Determinant of a row-major nn x nn matrix.
double determinant(const std::vector<double>& m, int nn);

}  // namespace spraymet

#endif  // SPRAYMET_LINALG_HPP
