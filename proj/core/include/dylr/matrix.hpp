#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dylr {

// Minimal dense row-major matrix.  Keeps the public API free of any linear
// algebra dependency; heavy lifting happens behind the implementation files.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace dylr
