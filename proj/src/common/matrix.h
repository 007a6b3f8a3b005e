// Copyright (c) 2026 The lecgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LECGEN_COMMON_MATRIX_H_
#define LECGEN_COMMON_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lecgen {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(size_t rows, size_t cols, std::vector<double> data);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double> &data() const { return data_; }
  std::vector<double> &data() { return data_; }

  bool SameShape(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Matrix &other) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Binary exchange format: little-endian u32 rows, u32 cols, then rows*cols
// float32 values in row-major order.
std::string EncodeMatrixBinary(const Matrix &m);
Matrix DecodeMatrixBinary(std::span<const uint8_t> bytes);
void WriteMatrixBinary(const Matrix &m, const std::string &path);
Matrix ReadMatrixBinary(const std::string &path);

// MatrixMarket dense "array" text format (column-major value list).
std::string EncodeMatrixText(const Matrix &m);
Matrix DecodeMatrixText(const std::string &text);
void WriteMatrixText(const Matrix &m, const std::string &path);
Matrix ReadMatrixText(const std::string &path);

// Little-endian helpers shared by the binary file formats.
void AppendU32(std::string *out, uint32_t v);
void AppendF32(std::string *out, float v);
uint32_t LoadU32(const uint8_t *p);
float LoadF32(const uint8_t *p);

std::string ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, const std::string &bytes);

}  // namespace lecgen

#endif  // LECGEN_COMMON_MATRIX_H_
