#pragma once

#include <string>
#include <vector>

#include "strat/core/poset.hpp"
#include "strat/util/error.hpp"

namespace strat {

/// Cell complex of a rows x cols grid: one 2-cell per tile, 1-cells for tile
/// boundaries, 0-cells for pixel corners. Cell ids encode type and grid
/// coordinates, e.g. "f:2,1", "he:0,3", "ve:1,0", "v:3,3".
///
/// Counts: rows*cols faces, rows*(cols+1) + cols*(rows+1) edges,
/// (rows+1)*(cols+1) vertices.
struct GridComplex {
  int rows = 0;
  int cols = 0;

  GridComplex(int r, int c) : rows(r), cols(c) {
    if (r < 1 || c < 1) throw DomainError("bad-grid", "rows and cols must be >= 1");
  }

  // faces indexed by (row, col), both 0-based
  static std::string face_id(int r, int c) { return "f:" + std::to_string(r) + "," + std::to_string(c); }
  // horizontal edge above row r (r in 0..rows), col c (0..cols-1)
  static std::string hedge_id(int r, int c) { return "he:" + std::to_string(r) + "," + std::to_string(c); }
  // vertical edge left of col c (c in 0..cols), row r (0..rows-1)
  static std::string vedge_id(int r, int c) { return "ve:" + std::to_string(r) + "," + std::to_string(c); }
  static std::string vertex_id(int r, int c) { return "v:" + std::to_string(r) + "," + std::to_string(c); }

  std::vector<std::string> faces() const {
    std::vector<std::string> out;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out.push_back(face_id(r, c));
    return out;
  }

  std::size_t face_count() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t edge_count() const {
    return static_cast<std::size_t>(rows) * (cols + 1) + static_cast<std::size_t>(cols) * (rows + 1);
  }
  std::size_t vertex_count() const { return static_cast<std::size_t>(rows + 1) * (cols + 1); }

  /// Bounding faces of each cell, dimension by dimension: vertices are below
  /// their adjacent edges, edges below their adjacent faces.
  Poset face_poset() const {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> covers;

    for (int r = 0; r <= rows; ++r)
      for (int c = 0; c <= cols; ++c) elements.push_back(vertex_id(r, c));
    for (int r = 0; r <= rows; ++r)
      for (int c = 0; c < cols; ++c) {
        elements.push_back(hedge_id(r, c));
        covers.emplace_back(vertex_id(r, c), hedge_id(r, c));
        covers.emplace_back(vertex_id(r, c + 1), hedge_id(r, c));
      }
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c <= cols; ++c) {
        elements.push_back(vedge_id(r, c));
        covers.emplace_back(vertex_id(r, c), vedge_id(r, c));
        covers.emplace_back(vertex_id(r + 1, c), vedge_id(r, c));
      }
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        elements.push_back(face_id(r, c));
        covers.emplace_back(hedge_id(r, c), face_id(r, c));
        covers.emplace_back(hedge_id(r + 1, c), face_id(r, c));
        covers.emplace_back(vedge_id(r, c), face_id(r, c));
        covers.emplace_back(vedge_id(r, c + 1), face_id(r, c));
      }
    return Poset(std::move(elements), std::move(covers));
  }

  /// Faces adjacent to a lower-dimensional cell (the cells above it in the
  /// face poset). For a face id, returns the face itself.
  std::vector<std::string> faces_above(const std::string& cell) const {
    auto parse2 = [&](std::size_t off) {
      const std::size_t comma = cell.find(',', off);
      return std::pair<int, int>{std::stoi(cell.substr(off, comma - off)),
                                 std::stoi(cell.substr(comma + 1))};
    };
    std::vector<std::string> out;
    if (cell.rfind("f:", 0) == 0) {
      out.push_back(cell);
    } else if (cell.rfind("he:", 0) == 0) {
      auto [r, c] = parse2(3);
      if (r > 0) out.push_back(face_id(r - 1, c));
      if (r < rows) out.push_back(face_id(r, c));
    } else if (cell.rfind("ve:", 0) == 0) {
      auto [r, c] = parse2(3);
      if (c > 0) out.push_back(face_id(r, c - 1));
      if (c < cols) out.push_back(face_id(r, c));
    } else if (cell.rfind("v:", 0) == 0) {
      auto [r, c] = parse2(2);
      for (int dr = -1; dr <= 0; ++dr)
        for (int dc = -1; dc <= 0; ++dc) {
          const int fr = r + dr, fc = c + dc;
          if (fr >= 0 && fr < rows && fc >= 0 && fc < cols) out.push_back(face_id(fr, fc));
        }
    } else {
      throw DomainError("unknown-element", "'" + cell + "' is not a grid cell id");
    }
    return out;
  }
};

} // namespace strat
