#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tpgabor/decay.hpp"

namespace tpgabor {

/// Finite truncation of a bi-infinite matrix whose entries are g(row_point - col_point).
///
/// entries(i, j) is the matrix element at index (row_offset + i, col_offset + j);
/// row_points / col_points record the sample positions that generated it.
struct MatrixSection {
  Eigen::MatrixXd entries;
  long row_offset = 0;
  long col_offset = 0;
  std::vector<double> row_points;
  std::vector<double> col_points;
  std::string row_index_map;  // e.g. "j -> x + alpha*j" or "k -> k + delta_k"
  DecayProfile decay_cert;

  long rows() const { return static_cast<long>(entries.rows()); }
  long cols() const { return static_cast<long>(entries.cols()); }
  long first_row() const { return row_offset; }
  long last_row() const { return row_offset + rows() - 1; }
  long first_col() const { return col_offset; }
  long last_col() const { return col_offset + cols() - 1; }

  /// Element by its bi-infinite index.
  double at(long row, long col) const { return entries(row - row_offset, col - col_offset); }
};

}  // namespace tpgabor
