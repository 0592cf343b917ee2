/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLORE_DIFFMATH_VALUE_H_
#define CLORE_DIFFMATH_VALUE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace clore::diff {

// Row-major shape. A vector of length n is n x 1, a scalar is 1 x 1.
struct Shape {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t size() const { return rows * cols; }
  bool is_scalar() const { return rows == 1 && cols == 1; }
  bool is_vector() const { return cols == 1; }
  bool operator==(const Shape&) const = default;
  std::string ToString() const;
};

// Dense block of 64-bit floats.
class Value {
 public:
  Value() = default;
  explicit Value(Shape shape, double fill = 0.0)
      : shape_(shape), data_(shape.size(), fill) {}
  Value(Shape shape, std::vector<double> data);

  static Value Scalar(double x) { return Value(Shape{1, 1}, {x}); }
  static Value Vector(std::vector<double> data);
  static Value Matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> data);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * shape_.cols + c];
  }
  double& at(std::size_t r, std::size_t c) { return data_[r * shape_.cols + c]; }

  double scalar() const { return data_.at(0); }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * shape_.cols,
                                                  shape_.cols);
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * shape_.cols, shape_.cols);
  }
  const std::vector<double>& vec() const { return data_; }

  void Fill(double x);
  bool AllFinite() const;

 private:
  Shape shape_{0, 0};
  std::vector<double> data_;
};

}  // namespace clore::diff

#endif  // CLORE_DIFFMATH_VALUE_H_
