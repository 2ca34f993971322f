#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bfgp/graph.hpp"

namespace bfgp {

// Butterfly BF(r): vertices [row, level] with row in {0,1}^r and level in
// 0..r. Row bits are numbered 1..r from the left, so bit 1 is the most
// significant bit of `row`. The edge between levels w-1 and w either keeps the
// row (straight) or flips bit w (cross).
//
// Vertex ids are level-major: id = level * 2^r + row.

inline constexpr int kMaxButterflyDimension = 20;

struct ButterflyLabel {
  int level = 0;
  std::uint32_t row = 0;

  friend bool operator==(const ButterflyLabel&, const ButterflyLabel&) = default;
};

/// Mask selecting row bit `index` (1-based, leftmost = 1) in a width-r row.
constexpr std::uint32_t row_bit(int r, int index) {
  return std::uint32_t{1} << (r - index);
}

constexpr bool test_row_bit(std::uint32_t row, int r, int index) {
  return (row & row_bit(r, index)) != 0;
}

/// "0110" style rendering, bit 1 first.
std::string row_string(std::uint32_t row, int r);
/// Inverse of row_string; throws invalid_parameter on bad length/characters.
std::uint32_t parse_row(std::string_view text, int r);

/// "[row,level]" as used in diagrams and test names.
std::string format_label(const ButterflyLabel& label, int r);

Graph build_butterfly(int r);

/// Dimension of a butterfly graph; throws unsupported_family otherwise.
int butterfly_dimension(const Graph& g);

ButterflyLabel label_of(const Graph& g, VertexId v);
VertexId id_of(const Graph& g, const ButterflyLabel& label);

/// Encoding without a graph at hand. No validation beyond the arithmetic.
constexpr VertexId butterfly_id(int r, int level, std::uint32_t row) {
  return static_cast<VertexId>((static_cast<std::uint32_t>(level) << r) | row);
}

/// Degree classes of BF(r), all lists sorted by id.
///
/// X holds the degree-2 vertices (levels 0 and r), Y the degree-4 ones.
/// The boundary split of X0 and Xr between the four BF(r-2) sub-butterflies
/// is realized with a fixed bit test: X0' has row bit 1 = 0, X0'' bit 1 = 1,
/// Xr' has row bit r = 1, Xr'' bit r = 0. Any consistent split plays the same
/// role.
struct VertexClassification {
  std::vector<VertexId> x;
  std::vector<VertexId> y;
  std::vector<VertexId> x0;
  std::vector<VertexId> xr;
  std::vector<VertexId> x0_prime;
  std::vector<VertexId> x0_double_prime;
  std::vector<VertexId> xr_prime;
  std::vector<VertexId> xr_double_prime;
};

VertexClassification classify_vertices(const Graph& g);

}  // namespace bfgp
