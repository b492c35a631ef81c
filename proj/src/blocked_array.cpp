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

#include "splitrt/blocked_array.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "splitrt/rng.hpp"

namespace splitrt {

namespace {

double standard_normal(Rng64& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::vector<WorkerId> place_blocks(const PlacementPolicy& policy, std::size_t num_blocks,
                                   std::size_t num_workers) {
  std::vector<WorkerId> owners;
  owners.reserve(num_blocks);
  std::visit(Overloaded{
                 [&](const RoundRobin&) {
                   for (std::size_t b = 0; b < num_blocks; ++b) owners.push_back({b % num_workers});
                 },
                 [&](const SeededRandom& p) {
                   Rng64 rng(p.seed);
                   for (std::size_t b = 0; b < num_blocks; ++b) {
                     owners.push_back({static_cast<std::size_t>(rng.below(num_workers))});
                   }
                 },
                 [&](const Explicit& p) {
                   if (p.owners.size() != num_blocks) {
                     throw std::invalid_argument("Explicit placement: expected " +
                                                 std::to_string(num_blocks) + " owners, got " +
                                                 std::to_string(p.owners.size()));
                   }
                   for (auto w : p.owners) {
                     if (w.value >= num_workers) {
                       throw std::out_of_range("Explicit placement: unknown worker " +
                                               std::to_string(w.value));
                     }
                   }
                   owners = p.owners;
                 },
             },
             policy);
  return owners;
}

double labeled_blobs_label(std::size_t row) noexcept { return row % 2 == 0 ? -1.0 : 1.0; }

void generate_row(const Generator& gen, std::size_t row, std::span<double> out) {
  std::visit(Overloaded{
                 [&](const UniformCube& g) {
                   Rng64 rng(g.seed ^ (row + 1));
                   for (double& v : out) v = rng.uniform();
                 },
                 [&](const GaussianBlobs& g) {
                   Rng64 rng(g.seed ^ (row + 1));
                   const std::size_t blob = row % g.k;
                   for (std::size_t d = 0; d < out.size(); ++d) {
                     const bool on_axis = blob > 0 && (blob - 1) % out.size() == d;
                     out[d] = (on_axis ? g.scale : 0.0) + g.spread * standard_normal(rng);
                   }
                 },
                 [&](const LabeledBlobs& g) {
                   Rng64 rng(g.seed ^ (row + 1));
                   const double offset =
                       row % 2 == 0 ? 0.0 : g.separation / std::sqrt(static_cast<double>(out.size()));
                   for (double& v : out) v = offset + g.spread * standard_normal(rng);
                 },
             },
             gen);
}

BlockedArray create_array(Runtime& rt, std::size_t n_rows, std::size_t dims,
                          std::size_t block_rows, const PlacementPolicy& policy,
                          const Generator& gen) {
  if (n_rows < 1 || dims < 1 || block_rows < 1 || block_rows > n_rows) {
    throw std::invalid_argument("create_array: need n_rows >= 1, dims >= 1, 1 <= block_rows <= n_rows");
  }
  if (const auto* blobs = std::get_if<GaussianBlobs>(&gen); blobs && blobs->k < 1) {
    throw std::invalid_argument("create_array: GaussianBlobs needs k >= 1");
  }
  BlockedArray arr{n_rows, dims, block_rows, {}};
  const std::size_t num_blocks = (n_rows + block_rows - 1) / block_rows;
  const auto owners = place_blocks(policy, num_blocks, rt.num_workers());
  arr.blocks.reserve(num_blocks);
  for (std::size_t b = 0; b < num_blocks; ++b) {
    const auto range = arr.block_range(b);
    Matrix block(range.size(), dims);
    for (std::size_t r = 0; r < range.size(); ++r) generate_row(gen, range.begin + r, block.row(r));
    arr.blocks.push_back(rt.put_value(std::move(block), owners[b]));
  }
  return arr;
}

BlockedArray create_label_array(Runtime& rt, const BlockedArray& points) {
  BlockedArray labels{points.n_rows, 1, points.block_rows, {}};
  const auto owners = block_locations(rt, points);
  for (std::size_t b = 0; b < points.num_blocks(); ++b) {
    const auto range = points.block_range(b);
    Matrix block(range.size(), 1);
    for (std::size_t r = 0; r < range.size(); ++r) block(r, 0) = labeled_blobs_label(range.begin + r);
    labels.blocks.push_back(rt.put_value(std::move(block), owners[b]));
  }
  return labels;
}

std::vector<WorkerId> block_locations(const Runtime& rt, const BlockedArray& arr) {
  return rt.who_has(arr.blocks);
}

std::uint64_t fnv1a_u64(std::uint64_t hash, std::uint64_t word) noexcept {
  for (int i = 0; i < 8; ++i) {
    hash ^= (word >> (8 * i)) & 0xFFu;
    hash *= kFnvPrime;
  }
  return hash;
}

std::uint64_t fnv1a_double(std::uint64_t hash, double value) noexcept {
  return fnv1a_u64(hash, std::bit_cast<std::uint64_t>(value));
}

std::uint64_t checksum(const Runtime& rt, const BlockedArray& arr) {
  std::uint64_t hash = kFnvOffset;
  for (const auto& ref : arr.blocks) {
    const auto payload = rt.peek(ref);
    for (double v : payload.as<Matrix>().data()) hash = fnv1a_double(hash, v);
  }
  return hash;
}

Matrix to_matrix(const Runtime& rt, const BlockedArray& arr) {
  std::vector<Payload> held;
  std::vector<const Matrix*> parts;
  held.reserve(arr.num_blocks());
  for (const auto& ref : arr.blocks) {
    held.push_back(rt.peek(ref));
    parts.push_back(&held.back().as<Matrix>());
  }
  return vstack(parts);
}

void write_csv(const Runtime& rt, const BlockedArray& arr, std::ostream& os) {
  const auto m = to_matrix(rt, arr);
  const auto old_precision = os.precision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << m(r, c);
    }
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace splitrt
