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

#include "common/matrix.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "common/error.h"

namespace lecgen {

Matrix::Matrix(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("matrix data size does not match " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

void AppendU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
}

void AppendF32(std::string *out, float v) {
  AppendU32(out, std::bit_cast<uint32_t>(v));
}

uint32_t LoadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

float LoadF32(const uint8_t *p) { return std::bit_cast<float>(LoadU32(p)); }

std::string ReadFileBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::string &path, const std::string &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("short write: " + path);
}

std::string EncodeMatrixBinary(const Matrix &m) {
  if (m.rows() > std::numeric_limits<uint32_t>::max() ||
      m.cols() > std::numeric_limits<uint32_t>::max()) {
    throw ValidationError("matrix too large for u32 header");
  }
  std::string out;
  out.reserve(8 + 4 * m.size());
  AppendU32(&out, static_cast<uint32_t>(m.rows()));
  AppendU32(&out, static_cast<uint32_t>(m.cols()));
  for (double v : m.data()) AppendF32(&out, static_cast<float>(v));
  return out;
}

Matrix DecodeMatrixBinary(std::span<const uint8_t> bytes) {
  if (bytes.size() < 8) throw ValidationError("matrix file truncated header");
  const uint32_t rows = LoadU32(bytes.data());
  const uint32_t cols = LoadU32(bytes.data() + 4);
  const uint64_t count = static_cast<uint64_t>(rows) * cols;
  if (bytes.size() != 8 + 4 * count) {
    throw ValidationError("matrix file size " + std::to_string(bytes.size()) +
                          " does not match header " + std::to_string(rows) +
                          "x" + std::to_string(cols));
  }
  std::vector<double> data(count);
  for (uint64_t i = 0; i < count; ++i) {
    data[i] = LoadF32(bytes.data() + 8 + 4 * i);
  }
  return Matrix(rows, cols, std::move(data));
}

void WriteMatrixBinary(const Matrix &m, const std::string &path) {
  WriteFileBytes(path, EncodeMatrixBinary(m));
}

Matrix ReadMatrixBinary(const std::string &path) {
  const std::string bytes = ReadFileBytes(path);
  return DecodeMatrixBinary(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t *>(bytes.data()), bytes.size()));
}

std::string EncodeMatrixText(const Matrix &m) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix array real general\n";
  os << m.rows() << " " << m.cols() << "\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (size_t c = 0; c < m.cols(); ++c) {
    for (size_t r = 0; r < m.rows(); ++r) os << m(r, c) << "\n";
  }
  return os.str();
}

Matrix DecodeMatrixText(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0) {
    throw ValidationError("missing MatrixMarket banner");
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  size_t rows = 0, cols = 0;
  if (!(dims >> rows >> cols)) throw ValidationError("bad MatrixMarket size");
  Matrix m(rows, cols);
  for (size_t c = 0; c < cols; ++c) {
    for (size_t r = 0; r < rows; ++r) {
      if (!(is >> m(r, c))) {
        throw ValidationError("MatrixMarket body truncated");
      }
    }
  }
  return m;
}

void WriteMatrixText(const Matrix &m, const std::string &path) {
  WriteFileBytes(path, EncodeMatrixText(m));
}

Matrix ReadMatrixText(const std::string &path) {
  return DecodeMatrixText(ReadFileBytes(path));
}

}  // namespace lecgen
