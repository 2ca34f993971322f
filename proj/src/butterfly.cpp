#include "bfgp/butterfly.hpp"

#include "bfgp/error.hpp"

namespace bfgp {

std::string row_string(std::uint32_t row, int r) {
  std::string out(r, '0');
  for (int i = 1; i <= r; ++i) {
    if (test_row_bit(row, r, i)) out[i - 1] = '1';
  }
  return out;
}

std::uint32_t parse_row(std::string_view text, int r) {
  if (static_cast<int>(text.size()) != r) {
    throw Error(ErrorCode::invalid_parameter,
                "row '" + std::string(text) + "' must have length " +
                    std::to_string(r));
  }
  std::uint32_t row = 0;
  for (int i = 1; i <= r; ++i) {
    char c = text[i - 1];
    if (c == '1') {
      row |= row_bit(r, i);
    } else if (c != '0') {
      throw Error(ErrorCode::invalid_parameter,
                  "row '" + std::string(text) + "' is not a bitstring");
    }
  }
  return row;
}

std::string format_label(const ButterflyLabel& label, int r) {
  return "[" + row_string(label.row, r) + "," + std::to_string(label.level) +
         "]";
}

Graph build_butterfly(int r) {
  if (r < 1 || r > kMaxButterflyDimension) {
    throw Error(ErrorCode::invalid_parameter,
                "butterfly dimension must be in 1.." +
                    std::to_string(kMaxButterflyDimension) + ", got " +
                    std::to_string(r));
  }
  const std::uint32_t rows = std::uint32_t{1} << r;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(r) * rows * 2);
  for (int level = 1; level <= r; ++level) {
    const std::uint32_t flip = row_bit(r, level);
    for (std::uint32_t row = 0; row < rows; ++row) {
      VertexId lower = butterfly_id(r, level - 1, row);
      edges.push_back({lower, butterfly_id(r, level, row)});
      edges.push_back({lower, butterfly_id(r, level, row ^ flip)});
    }
  }
  return Graph::from_edges(static_cast<int>((r + 1) * rows), std::move(edges),
                           {Family::butterfly, r});
}

int butterfly_dimension(const Graph& g) {
  if (g.family().family != Family::butterfly) {
    throw Error(ErrorCode::unsupported_family,
                "expected a butterfly graph, got " + g.ref());
  }
  return g.family().param;
}

ButterflyLabel label_of(const Graph& g, VertexId v) {
  const int r = butterfly_dimension(g);
  if (!g.contains(v)) {
    throw Error(ErrorCode::invalid_parameter,
                "vertex out of range: " + std::to_string(v));
  }
  const auto u = static_cast<std::uint32_t>(v);
  return {static_cast<int>(u >> r), u & ((std::uint32_t{1} << r) - 1)};
}

VertexId id_of(const Graph& g, const ButterflyLabel& label) {
  const int r = butterfly_dimension(g);
  if (label.level < 0 || label.level > r || label.row >= (1u << r)) {
    throw Error(ErrorCode::invalid_parameter,
                "label out of range for BF(" + std::to_string(r) + ")");
  }
  return butterfly_id(r, label.level, label.row);
}

VertexClassification classify_vertices(const Graph& g) {
  const int r = butterfly_dimension(g);
  if (r < 2) {
    throw Error(ErrorCode::invalid_parameter,
                "classification needs r >= 2, got " + std::to_string(r));
  }
  VertexClassification c;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const ButterflyLabel lbl = label_of(g, v);
    if (lbl.level == 0) {
      c.x.push_back(v);
      c.x0.push_back(v);
      (test_row_bit(lbl.row, r, 1) ? c.x0_double_prime : c.x0_prime)
          .push_back(v);
    } else if (lbl.level == r) {
      c.x.push_back(v);
      c.xr.push_back(v);
      (test_row_bit(lbl.row, r, r) ? c.xr_prime : c.xr_double_prime)
          .push_back(v);
    } else {
      c.y.push_back(v);
    }
  }
  return c;
}

}  // namespace bfgp
