// Copyright 2026 The splitrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "splitrt/matrix.hpp"

namespace splitrt {

Matrix vstack(std::span<const Matrix* const> parts) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const Matrix* m : parts) {
    if (m->rows() == 0) continue;
    if (cols == 0) cols = m->cols();
    if (m->cols() != cols) throw std::invalid_argument("vstack: width mismatch");
    rows += m->rows();
  }
  std::vector<double> data;
  data.reserve(rows * cols);
  for (const Matrix* m : parts) {
    data.insert(data.end(), m->data().begin(), m->data().end());
  }
  return Matrix(rows, cols, std::move(data));
}

}  // namespace splitrt
